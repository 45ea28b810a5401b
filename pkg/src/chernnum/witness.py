"""Witness manifolds with s_k = 1 and the characteristic-number matrix.

``build_F(k)`` is the disjoint union of CP^k carrying the normal bundle
(T + C) - O(-1) of the foliation induced by O(-1), and a second copy of CP^k
carrying its tangent bundle. The orientation of each copy, and whether the
second copy uses the conjugate tangent bundle, are found by a small search
so that s_k = 1 exactly.

Products of witnesses index the columns of the matrix whose determinant
is checked by ``verify_independence``.
"""

from __future__ import annotations

import csv
import io
import itertools
import os
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Mapping, Sequence

from .bundles import VirtualBundle, chern_numbers, conjugate, external, line, tangent_cp, trivial
from .cohomology import ProductSpace
from .linalg import determinant
from .partitions import Partition, refines, triangular_order
from .symfunc import BASES, basis_poly, s_poly

MATRIX_MAX_N = 12


class SignSearchError(RuntimeError):
    """No orientation/conjugation choice gives s_k = 1."""


def max_matrix_n() -> int:
    """The n cap for matrix assembly; ``CHERN_MAX_N`` may lower it, never raise it."""
    raw = os.environ.get("CHERN_MAX_N")
    if raw is None or not raw.strip():
        return MATRIX_MAX_N
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"CHERN_MAX_N must be an integer, got {raw!r}") from None
    return max(0, min(value, MATRIX_MAX_N))


@dataclass(frozen=True)
class SignConvention:
    nf_orientation: int
    tangent_orientation: int
    conjugate_tangent: bool

    def describe(self) -> str:
        sign = {1: "+", -1: "-"}
        tangent = "conj(T)" if self.conjugate_tangent else "T"
        return f"{sign[self.nf_orientation]}NF, {sign[self.tangent_orientation]}{tangent}"

    def to_json(self) -> dict:
        return {
            "nf_orientation": self.nf_orientation,
            "tangent_orientation": self.tangent_orientation,
            "conjugate_tangent": self.conjugate_tangent,
        }


@dataclass(frozen=True)
class StructuredManifold:
    """Closed oriented manifold (possibly disconnected) with a virtual normal bundle per component.

    ``tags`` label components up to isomorphism: components with equal tags
    have equal characteristic numbers.
    """

    components: tuple[tuple[ProductSpace, VirtualBundle], ...]
    label: str = ""
    tags: tuple[Hashable, ...] | None = None
    convention: SignConvention | None = field(default=None, compare=False)

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("a structured manifold needs at least one component")
        dims = {space.real_dim for space, _ in comps}
        if len(dims) != 1:
            raise ValueError(f"components have different dimensions {sorted(dims)}")
        for space, bundle in comps:
            if bundle.base != space:
                raise ValueError(f"bundle over {bundle.base} paired with component {space}")
        if self.tags is not None and len(self.tags) != len(comps):
            raise ValueError("need one tag per component")

    @property
    def real_dim(self) -> int:
        return self.components[0][0].real_dim

    @property
    def complex_dim(self) -> int:
        return self.real_dim // 2

    def component_chern_numbers(self) -> list[dict[Partition, int]]:
        return [chern_numbers(bundle) for _, bundle in self.components]

    def chern_numbers(self) -> dict[Partition, int]:
        """c_J numbers summed over components."""
        total: Counter = Counter()
        for numbers in self.component_chern_numbers():
            total.update(numbers)
        return dict(total)

    def char_number(self, P) -> int:
        if P.degree != self.complex_dim:
            return 0
        numbers = self.chern_numbers()
        return sum(c * numbers[m.to_partition()] for m, c in P.terms.items())

    def s_number(self, I: Partition) -> int:
        return self.char_number(s_poly(I))


def normal_bundle_witness(space: ProductSpace) -> VirtualBundle:
    """(T CP^k + trivial line) - O(-1) over a single CP^k."""
    if len(space.factors) != 1:
        raise ValueError("the foliation witness lives on a single CP^k")
    return tangent_cp(space) + trivial(space, 1) - line(space, -1)


def _top_s_number(bundle: VirtualBundle) -> int:
    k = bundle.base.complex_dim
    numbers = chern_numbers(bundle)
    return sum(c * numbers[m.to_partition()] for m, c in s_poly(Partition((k,))).terms.items())


@lru_cache(maxsize=None)
def build_F(k: int) -> StructuredManifold:
    """Witness of complex dimension ``k`` with s_k = 1."""
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
    achieved = []
    for conj, o1, o2 in itertools.product((False, True), (1, -1), (1, -1)):
        X1 = ProductSpace.cp(k, o1)
        X2 = ProductSpace.cp(k, o2)
        nf = normal_bundle_witness(X1)
        tangent = tangent_cp(X2)
        if conj:
            tangent = conjugate(tangent)
        values = (_top_s_number(nf), _top_s_number(tangent))
        convention = SignConvention(o1, o2, conj)
        achieved.append((convention.describe(), values))
        if sum(values) == 1:
            label = f"F^{k} = {X1}[NF] + {X2}[{'conj(T)' if conj else 'T'}]"
            return StructuredManifold(((X1, nf), (X2, tangent)), label, ((k, 0), (k, 1)), convention)
    raise SignSearchError(f"no sign convention gives s_{k} = 1; achieved {achieved}")


def _product_component(J: Sequence[int], choices: Sequence[int]) -> tuple[ProductSpace, VirtualBundle]:
    bundle = None
    for j, choice in zip(J, choices):
        _, b = build_F(j).components[choice]
        bundle = b if bundle is None else external(bundle, b)
    return bundle.base, bundle


def _tag(J: Sequence[int], choices: Sequence[int]) -> tuple:
    # permuting factors of a product is orientation preserving (even real dims)
    return tuple(sorted(zip(J, choices)))


def witness_product(J: Partition) -> StructuredManifold:
    """F^{j_1} x ... x F^{j_s}: one component per choice of component in each factor."""
    if J.weight < 1:
        raise ValueError("witness_product needs a partition of positive weight")
    comps, tags = [], []
    for choices in itertools.product((0, 1), repeat=J.length):
        comps.append(_product_component(J.parts, choices))
        tags.append(_tag(J.parts, choices))
    label = " x ".join(f"F^{j}" for j in J)
    return StructuredManifold(tuple(comps), label, tuple(tags))


def _grouped_components(J: Partition) -> list[tuple[tuple[int, ...], int]]:
    """Representative choice tuples of ``witness_product(J)`` with multiplicities."""
    groups: dict[tuple, list] = {}
    for choices in itertools.product((0, 1), repeat=J.length):
        tag = _tag(J.parts, choices)
        if tag in groups:
            groups[tag][1] += 1
        else:
            groups[tag] = [choices, 1]
    return [(rep, mult) for rep, mult in groups.values()]


def _column_chern_numbers(J: Partition, cache: dict) -> dict[Partition, int]:
    total: Counter = Counter()
    for choices, mult in _grouped_components(J):
        tag = _tag(J.parts, choices)
        if tag not in cache:
            _, bundle = _product_component(J.parts, choices)
            cache[tag] = chern_numbers(bundle)
        for I, v in cache[tag].items():
            total[I] += mult * v
    return dict(total)


@dataclass
class CharMatrix:
    """entries[i][j] = basis class of order[i] evaluated on the witness product order[j]."""

    n: int
    basis: str
    order: list[Partition]
    entries: list[list[int]]

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        size = len(self.order)
        if len(self.entries) != size or any(len(row) != size for row in self.entries):
            raise ValueError("entries must be a square matrix matching the index")

    def entry(self, I: Partition, J: Partition) -> int:
        return self.entries[self.order.index(I)][self.order.index(J)]

    def determinant(self) -> int:
        return determinant(self.entries)

    def is_triangular(self) -> bool:
        """Nonzero entries only where the row partition refines the column partition."""
        order = self.order
        return all(
            self.entries[i][j] == 0 or refines(order[i], order[j])
            for i in range(len(order))
            for j in range(len(order))
        )

    def has_unit_diagonal(self) -> bool:
        return all(self.entries[i][i] == 1 for i in range(len(self.order)))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "basis": self.basis,
            "order": [I.to_json() for I in self.order],
            "entries": [list(row) for row in self.entries],
            "determinant": self.determinant(),
            "triangular": self.is_triangular(),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CharMatrix":
        return cls(
            int(data["n"]),
            data["basis"],
            [Partition.from_json(p) for p in data["order"]],
            [[int(x) for x in row] for row in data["entries"]],
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        labels = [str(I) for I in self.order]
        writer.writerow([f"{self.basis}\\F"] + labels)
        for label, row in zip(labels, self.entries):
            writer.writerow([label] + row)
        return buf.getvalue()


def assemble_matrix(n: int, basis: str = "s") -> CharMatrix:
    """p(n) x p(n) matrix of characteristic numbers, rows and columns in triangular order."""
    cap = max_matrix_n()
    if not isinstance(n, int) or not 1 <= n <= cap:
        raise ValueError(f"n must be an integer with 1 <= n <= {cap}, got {n!r}")
    if basis not in BASES:
        raise ValueError(f"unknown basis {basis!r}; expected one of {BASES}")
    order = triangular_order(n)
    polys = [basis_poly(basis, I) for I in order]
    cache: dict = {}
    columns = []
    for J in order:
        numbers = _column_chern_numbers(J, cache)
        columns.append([sum(c * numbers[m.to_partition()] for m, c in P.terms.items()) for P in polys])
    entries = [[columns[j][i] for j in range(len(order))] for i in range(len(order))]
    return CharMatrix(n, basis, order, entries)


@dataclass(frozen=True)
class VerificationReport:
    triangular: bool
    diagonal_units: bool
    determinant: int

    @property
    def passed(self) -> bool:
        return self.triangular and self.diagonal_units and self.determinant == 1

    def to_json(self) -> dict:
        return {"triangular": self.triangular, "diagonal_units": self.diagonal_units, "determinant": self.determinant}


def verify_matrix(M: CharMatrix) -> VerificationReport:
    return VerificationReport(M.is_triangular(), M.has_unit_diagonal(), M.determinant())


def verify_independence(n: int) -> VerificationReport:
    """Triangularity under refinement, unit diagonal and determinant of the s-basis matrix."""
    return verify_matrix(assemble_matrix(n, "s"))


__all__ = [
    "CharMatrix",
    "SignConvention",
    "SignSearchError",
    "StructuredManifold",
    "VerificationReport",
    "assemble_matrix",
    "build_F",
    "determinant",
    "max_matrix_n",
    "normal_bundle_witness",
    "verify_matrix",
    "verify_independence",
    "witness_product",
]
