"""Command-line front end.

Exit codes: 0 success (or a positive verdict), 1 a failed internal check,
2 malformed arguments, 3 an ``unknown`` verdict from ``decide``.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .bundles import char_number
from .cohomology import parse_space
from .expr import ParseError, bundle_from_text
from .obstruction import YES, InconsistentFacts, ManifoldFacts, decide
from .partitions import enumerate_partitions, parse_partition, triangular_order
from .symfunc import basis_poly, s_poly
from .witness import SignSearchError, assemble_matrix, verify_independence

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3


class UsageError(Exception):
    pass


def _emit(obj, out):
    out.write(json.dumps(obj) + "\n")


def _parse_class(text: str):
    basis, sep, rest = text.partition(":")
    if not sep or basis not in ("s", "c"):
        raise UsageError(f"--class must look like s:2,1 or c:1,1, got {text!r}")
    try:
        I = parse_partition(rest)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if I.weight < 1:
        raise UsageError("--class needs a partition of positive weight")
    return basis_poly(basis, I)


def cmd_partitions(args, out):
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    parts = triangular_order(args.n) if args.order == "triangular" else enumerate_partitions(args.n)
    _emit([p.to_json() for p in parts], out)
    return EXIT_OK


def cmd_spoly(args, out):
    try:
        I = parse_partition(args.I)
        P = s_poly(I)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(P.to_json(), out)
    return EXIT_OK


def cmd_eval(args, out):
    try:
        space = parse_space(args.space)
        bundle = bundle_from_text(args.bundle, space)
    except (ParseError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    P = _parse_class(args.cls)
    out.write(f"{char_number(P, bundle)}\n")
    return EXIT_OK


def cmd_matrix(args, out):
    try:
        M = assemble_matrix(args.n, args.basis)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "csv":
        out.write(M.to_csv())
    else:
        _emit(M.to_json(), out)
    return EXIT_OK


def cmd_verify(args, out):
    try:
        report = verify_independence(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(report.to_json(), out)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _facts_from_args(args) -> ManifoldFacts:
    if args.facts:
        try:
            with open(args.facts) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read facts file: {exc}") from None
        return ManifoldFacts.from_json(data)
    if args.dim is None:
        raise UsageError("decide needs --dim or --facts")
    return ManifoldFacts(
        real_dim=args.dim,
        is_open=args.open,
        has_almost_complex=args.almost_complex,
        cohomology_vanishing_above=args.vanishing_above,
        is_orientable=args.orientable,
        w2_has_integral_lift=args.w2_lift,
        w6_has_integral_lift=args.w6_lift,
        stable_tangent_complex=args.stable_complex,
        query_mode=args.mode,
    )


def cmd_decide(args, out):
    try:
        facts = _facts_from_args(args)
    except (InconsistentFacts, TypeError) as exc:
        raise UsageError(f"inconsistent facts: {exc}") from None
    verdict = decide(facts)
    _emit(verdict.to_json(), out)
    return EXIT_OK if verdict.guaranteed == YES else EXIT_UNKNOWN


def _tristate(text: str) -> bool:
    v = text.strip().lower()
    if v in ("yes", "true", "1"):
        return True
    if v in ("no", "false", "0"):
        return False
    raise argparse.ArgumentTypeError(f"expected yes/no, got {text!r}")


def _tristate_flag(parser, name, dest, help_text):
    # bare --flag means yes; --flag=no records a known negative; absent stays unknown
    parser.add_argument(name, dest=dest, nargs="?", const=True, default=None, type=_tristate, help=help_text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chernnum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("partitions", help="list the partitions of n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--order", choices=("canonical", "triangular"), default="canonical")
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("spoly", help="print s_I in Chern classes as JSON")
    p.add_argument("--I", required=True, help="partition, e.g. 2,1")
    p.set_defaults(func=cmd_spoly)

    p = sub.add_parser("eval", help="evaluate a characteristic number")
    p.add_argument("--space", required=True, help="e.g. CP:2, CP:1xCP:1, -CP:2")
    p.add_argument("--bundle", required=True, help='e.g. "T(2)+C^1-O(-1)"')
    p.add_argument("--class", dest="cls", required=True, help="s:I or c:I, e.g. s:2 or c:1,1")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("matrix", help="characteristic-number matrix of the witness products")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--basis", choices=("s", "c"), default="s")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("verify", help="check triangularity, unit diagonal and determinant 1")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decide", help="decide whether an integrable complex structure is guaranteed")
    p.add_argument("--facts", help="JSON file with ManifoldFacts fields")
    p.add_argument("--dim", type=int, help="real dimension (of M; n = dim M in stabilized mode)")
    p.add_argument("--open", action="store_true")
    p.add_argument("--almost-complex", action="store_true")
    p.add_argument("--vanishing-above", type=int, help="H^i(M;Z) = 0 for i above this")
    p.add_argument("--orientable", action="store_true")
    _tristate_flag(p, "--w2-lift", "w2_lift", "w_2 has an integral lift")
    _tristate_flag(p, "--w6-lift", "w6_lift", "w_6 has an integral lift")
    _tristate_flag(p, "--stable-complex", "stable_complex", "stable tangent bundle is complex")
    p.add_argument("--mode", choices=("self", "stabilized"), default="self")
    p.set_defaults(func=cmd_decide)
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SignSearchError as exc:
        err.write(f"check failed: {exc}\n")
        return EXIT_CHECK_FAILED


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
