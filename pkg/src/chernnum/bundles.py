"""Virtual complex vector bundles over products of projective spaces.

A bundle is recorded by its total Chern class, a unit in the truncated
cohomology ring, plus a virtual rank. Only K-theory data is kept: a quotient
E/L is the formal difference E - L.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Mapping

from .cohomology import CohomologyElement, ProductSpace, external_product
from .partitions import Partition, enumerate_partitions
from .symfunc import ChernPolynomial


@dataclass(frozen=True, eq=False)
class VirtualBundle:
    base: ProductSpace
    total_chern: CohomologyElement
    rank: int

    def __post_init__(self):
        if self.total_chern.space != self.base:
            raise ValueError(f"total Chern class lives on {self.total_chern.space}, not on {self.base}")
        if self.total_chern.constant_term != 1:
            raise ValueError("total Chern class must have constant term 1")

    def __eq__(self, other):
        if not isinstance(other, VirtualBundle):
            return NotImplemented
        return self.base == other.base and self.rank == other.rank and self.total_chern == other.total_chern

    def __hash__(self):
        return hash((self.base, self.rank, self.total_chern))

    def chern_class(self, i: int) -> CohomologyElement:
        """c_i, the degree-i part of the total Chern class (c_0 = 1)."""
        return self.total_chern.homogeneous_part(i)

    def __add__(self, other: "VirtualBundle") -> "VirtualBundle":
        return direct_sum(self, other)

    def __sub__(self, other: "VirtualBundle") -> "VirtualBundle":
        return difference(self, other)

    def __str__(self):
        return f"bundle of rank {self.rank} over {self.base} with c = {self.total_chern}"

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "rank": self.rank, "total_chern": self.total_chern.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> "VirtualBundle":
        base = ProductSpace.from_json(data["base"])
        c = CohomologyElement.from_json(data["total_chern"])
        if c.space.factors != base.factors:
            raise ValueError("total Chern class and base disagree on factors")
        return cls(base, CohomologyElement(base, c.terms), int(data["rank"]))


def _check_factor(base: ProductSpace, j: int):
    if not 0 <= j < len(base.factors):
        raise ValueError(f"factor index {j} out of range for {base}")


def trivial(base: ProductSpace, rank: int = 1) -> VirtualBundle:
    return VirtualBundle(base, base.one(), rank)


def tangent_cp(base: ProductSpace, j: int = 0, k: int | None = None) -> VirtualBundle:
    """Pullback of T CP^k from factor ``j``; c = (1 + x_j)^{k+1} by the Euler sequence."""
    _check_factor(base, j)
    dim = base.factors[j]
    if k is not None and k != dim:
        raise ValueError(f"factor {j} of {base} is CP^{dim}, not CP^{k}")
    exps = [0] * len(base.factors)
    terms = {}
    for e in range(dim + 1):
        exps[j] = e
        terms[tuple(exps)] = comb(dim + 1, e)
    return VirtualBundle(base, base.element(terms), dim)


def line(base: ProductSpace, a: int, j: int = 0) -> VirtualBundle:
    """Pullback of O(a) from factor ``j``; c = 1 + a x_j."""
    _check_factor(base, j)
    return VirtualBundle(base, base.one() + base.x(j) * a, 1)


def _same_base(E: VirtualBundle, F: VirtualBundle):
    if E.base != F.base:
        raise ValueError(f"bundles live over different bases: {E.base} vs {F.base}")


def direct_sum(E: VirtualBundle, F: VirtualBundle) -> VirtualBundle:
    """Whitney sum: total Chern classes multiply, ranks add."""
    _same_base(E, F)
    return VirtualBundle(E.base, E.total_chern * F.total_chern, E.rank + F.rank)


def difference(E: VirtualBundle, F: VirtualBundle) -> VirtualBundle:
    """Virtual difference E - F: c(E) c(F)^{-1}, ranks subtract."""
    _same_base(E, F)
    return VirtualBundle(E.base, E.total_chern * F.total_chern.inverse(), E.rank - F.rank)


def conjugate(E: VirtualBundle) -> VirtualBundle:
    """Complex conjugate bundle: c_i -> (-1)^i c_i."""
    return VirtualBundle(E.base, E.total_chern.graded_sign(), E.rank)


def reorient(E: VirtualBundle, orientation: int) -> VirtualBundle:
    """The same bundle over the base with a different orientation sign."""
    base = E.base.with_orientation(orientation)
    return VirtualBundle(base, CohomologyElement(base, E.total_chern.terms), E.rank)


def external(E: VirtualBundle, F: VirtualBundle) -> VirtualBundle:
    """E x F over the product of the bases."""
    space, inj_E, inj_F = external_product(E.base, F.base)
    return VirtualBundle(space, inj_E(E.total_chern) * inj_F(F.total_chern), E.rank + F.rank)


def chern_numbers(E: VirtualBundle) -> dict[Partition, int]:
    """c_J[M] for every partition J of the base's complex dimension.

    Products of Chern classes are shared across partitions through a prefix
    cache; only the last factor of each product is paired directly.
    """
    n = E.base.complex_dim
    classes = {i: E.chern_class(i) for i in range(1, n + 1)}
    products: dict[tuple[int, ...], CohomologyElement] = {(): E.base.one()}

    def product(parts: tuple[int, ...]) -> CohomologyElement:
        if parts not in products:
            products[parts] = product(parts[1:]) * classes[parts[0]]
        return products[parts]

    out = {}
    for J in enumerate_partitions(n):
        out[J] = classes[J[0]].pair_product(product(J.parts[1:]))
    return out


def char_number(P: ChernPolynomial, E: VirtualBundle) -> int:
    """Substitute the Chern classes of ``E`` into ``P`` and pair with [base].

    Polynomials of the wrong degree pair to zero.
    """
    if P.degree != E.base.complex_dim:
        return 0
    numbers = chern_numbers(E)
    return sum(c * numbers[m.to_partition()] for m, c in P.terms.items())


def char_number_direct(P: ChernPolynomial, E: VirtualBundle) -> int:
    """Same value as ``char_number`` via full substitution in the ring (slower; cross-check)."""
    value = P.substitute(E.chern_class, E.base.one())
    return value.pair()


def evaluate_partition_class(P: ChernPolynomial, numbers: Mapping[Partition, int]) -> int:
    """Combine precomputed c-numbers linearly according to ``P``."""
    return sum(c * numbers.get(m.to_partition(), 0) for m, c in P.terms.items())

