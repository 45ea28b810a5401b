"""Existence criteria for integrable complex structures on open manifolds.

Topological facts are declared by the caller; nothing here computes
cohomology or Stiefel-Whitney classes. The verdict is either ``yes`` with
the criterion that applies, or ``unknown``; a negative answer is never
produced because no non-existence statement is available.

Criteria, checked in this order:

``1.2``  M itself, open, almost complex, real dimension <= 10.
``7.1``  M itself (real dimension 2n), open, almost complex,
         H^i(M; Z) = 0 for i > n + 2.
``7.2``  M x R^{n-4} for an n-manifold M with n > 4 whose stable tangent
         bundle is complex.
``7.3``  M x R^{n-4} for an orientable n-manifold M, 5 <= n <= 7, with
         integral lifts of w_2 and w_6.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field
from typing import Callable, Mapping

YES = "yes"
UNKNOWN = "unknown"


class InconsistentFacts(ValueError):
    pass


class QueryMode(str, enum.Enum):
    SELF = "self"
    STABILIZED = "stabilized"


def connectivity_bound(n: int) -> int:
    """Homotopy groups of the fibre of B Gamma_n -> BGL(n, C) vanish through this degree."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return n + 1


@dataclass(frozen=True)
class ManifoldFacts:
    """Declared facts about M. ``None`` means unknown, which is not the same as False.

    In ``self`` mode ``real_dim`` is 2n and the question is about M. In
    ``stabilized`` mode ``real_dim`` is n = dim M and the question is about
    M x R^{n-4}.
    """

    real_dim: int
    is_open: bool = False
    has_almost_complex: bool = False
    cohomology_vanishing_above: int | None = None
    is_orientable: bool = False
    w2_has_integral_lift: bool | None = None
    w6_has_integral_lift: bool | None = None
    stable_tangent_complex: bool | None = None
    query_mode: QueryMode = QueryMode.SELF

    def __post_init__(self):
        object.__setattr__(self, "query_mode", QueryMode(self.query_mode))
        if not isinstance(self.real_dim, int) or self.real_dim < 1:
            raise InconsistentFacts(f"real dimension must be a positive integer, got {self.real_dim!r}")
        if self.query_mode is QueryMode.SELF and (self.real_dim % 2 or self.real_dim < 2):
            raise InconsistentFacts(f"querying M itself needs an even real dimension >= 2, got {self.real_dim}")
        if self.has_almost_complex and self.real_dim % 2:
            raise InconsistentFacts(f"an almost complex manifold has even dimension, got {self.real_dim}")
        if self.cohomology_vanishing_above is not None and self.cohomology_vanishing_above < 0:
            raise InconsistentFacts("cohomology_vanishing_above must be >= 0")

    @property
    def n(self) -> int:
        """Half the real dimension in ``self`` mode, the dimension of M when stabilized."""
        return self.real_dim // 2 if self.query_mode is QueryMode.SELF else self.real_dim

    def to_json(self) -> dict:
        d = asdict(self)
        d["query_mode"] = self.query_mode.value
        return d

    @classmethod
    def from_json(cls, data: Mapping) -> "ManifoldFacts":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise InconsistentFacts(f"unknown fact fields {sorted(unknown)}")
        return cls(**data)


@dataclass(frozen=True)
class Verdict:
    guaranteed: str
    theorem: str | None
    explanation: str
    applicable: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.guaranteed not in (YES, UNKNOWN):
            raise ValueError(f"verdict must be {YES!r} or {UNKNOWN!r}")
        if (self.guaranteed == YES) != (self.theorem is not None):
            raise ValueError("a positive verdict cites a criterion, an unknown one cites none")

    def to_json(self) -> dict:
        return {"guaranteed": self.guaranteed, "theorem": self.theorem, "explanation": self.explanation}


# A hypothesis is (description, check); checks see only the facts they name.
Hypothesis = tuple[str, Callable[[ManifoldFacts], bool]]

_CRITERIA: list[tuple[str, list[Hypothesis]]] = [
    ("1.2", [
        ("M itself is queried", lambda f: f.query_mode is QueryMode.SELF),
        ("M is open", lambda f: f.is_open),
        ("M is almost complex", lambda f: f.has_almost_complex),
        ("real dimension <= 10", lambda f: f.real_dim <= 10),
    ]),
    ("7.1", [
        ("M itself is queried", lambda f: f.query_mode is QueryMode.SELF),
        ("M is open", lambda f: f.is_open),
        ("M is almost complex", lambda f: f.has_almost_complex),
        ("H^i(M;Z) = 0 for i > n + 2",
         lambda f: f.cohomology_vanishing_above is not None and f.cohomology_vanishing_above <= f.n + 2),
    ]),
    ("7.2", [
        ("M x R^(n-4) is queried", lambda f: f.query_mode is QueryMode.STABILIZED),
        ("stable tangent bundle is complex", lambda f: f.stable_tangent_complex is True),
        ("n > 4", lambda f: f.n > 4),
    ]),
    ("7.3", [
        ("M x R^(n-4) is queried", lambda f: f.query_mode is QueryMode.STABILIZED),
        ("M is orientable", lambda f: f.is_orientable),
        ("5 <= n <= 7", lambda f: 5 <= f.n <= 7),
        ("w_2 has an integral lift", lambda f: f.w2_has_integral_lift is True),
        ("w_6 has an integral lift", lambda f: f.w6_has_integral_lift is True),
    ]),
]


def decide(facts: ManifoldFacts) -> Verdict:
    """First applicable criterion wins; the explanation traces every criterion."""
    trace = []
    applicable = []
    nearest: tuple[int, str, str] | None = None
    for name, hyps in _CRITERIA:
        failed = [desc for desc, check in hyps if not check(facts)]
        if not failed:
            applicable.append(name)
            trace.append(f"{name}: all hypotheses hold ({'; '.join(d for d, _ in hyps)})")
        else:
            trace.append(f"{name}: fails on {'; '.join(failed)}")
            if nearest is None or len(failed) < nearest[0]:
                nearest = (len(failed), name, failed[0])
    if applicable:
        head = f"complex structure guaranteed by {applicable[0]}"
        if len(applicable) > 1:
            head += f" (also applicable: {', '.join(applicable[1:])})"
        return Verdict(YES, applicable[0], head + ". " + " | ".join(trace), tuple(applicable))
    _, name, first = nearest
    head = f"no criterion applies; nearest is {name}, which needs: {first}"
    if facts.query_mode is QueryMode.SELF and facts.real_dim >= 12:
        head += "; in real dimension 12 and above the general question is open"
    return Verdict(UNKNOWN, None, head + ". " + " | ".join(trace))
