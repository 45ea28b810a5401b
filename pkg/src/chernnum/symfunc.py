"""Chern-class polynomials, the s_I and c_I bases, and a Chern-root oracle.

A ``ChernPolynomial`` is an integer polynomial in abstract classes c_1, c_2, ...
where c_i has degree i. ``s_poly(I)`` is the polynomial whose value under
c_i -> e_i(t_1, ..., t_N) is the monomial symmetric function m_I(t).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterator, Mapping

from .linalg import identity, integer_inverse
from .partitions import Partition, enumerate_partitions

MAX_DEGREE = 16

BASES = ("s", "c")


def _check_degree(n: int):
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"degree must be a non-negative integer, got {n!r}")
    if n > MAX_DEGREE:
        raise ValueError(f"degree {n} exceeds the supported cap of {MAX_DEGREE}")


@dataclass(frozen=True, order=True)
class ChernMonomial:
    """Product of Chern classes, stored as sorted ``(index, exponent)`` pairs."""

    exponents: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        merged: dict[int, int] = {}
        for i, e in self.exponents:
            if i < 1:
                raise ValueError(f"Chern class index must be >= 1, got {i}")
            if e < 0:
                raise ValueError(f"negative exponent {e} on c_{i}")
            merged[i] = merged.get(i, 0) + e
        object.__setattr__(self, "exponents", tuple(sorted((i, e) for i, e in merged.items() if e)))

    @classmethod
    def from_partition(cls, I: Partition) -> "ChernMonomial":
        counts: dict[int, int] = {}
        for p in I:
            counts[p] = counts.get(p, 0) + 1
        return cls(tuple(counts.items()))

    def to_partition(self) -> Partition:
        return Partition.of(i for i, e in self.exponents for _ in range(e))

    @property
    def degree(self) -> int:
        return sum(i * e for i, e in self.exponents)

    def __mul__(self, other: "ChernMonomial") -> "ChernMonomial":
        return ChernMonomial(self.exponents + other.exponents)

    def __str__(self):
        if not self.exponents:
            return "1"
        return "*".join(f"c{i}" if e == 1 else f"c{i}^{e}" for i, e in self.exponents)

    def to_json(self) -> dict[str, int]:
        return {str(i): e for i, e in self.exponents}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "ChernMonomial":
        return cls(tuple((int(k), int(v)) for k, v in data.items()))


class ChernPolynomial:
    """Homogeneous integer polynomial in c_1, c_2, ...

    Zero coefficients are never stored. The zero polynomial keeps the degree
    it was created with.
    """

    __slots__ = ("terms", "degree")

    def __init__(self, terms: Mapping[ChernMonomial, int] | None = None, degree: int | None = None):
        clean = {m: int(c) for m, c in (terms or {}).items() if c}
        degrees = {m.degree for m in clean}
        if len(degrees) > 1:
            raise ValueError(f"inhomogeneous Chern polynomial (degrees {sorted(degrees)})")
        if degrees:
            d = degrees.pop()
            if degree is not None and degree != d:
                raise ValueError(f"declared degree {degree} but terms have degree {d}")
            degree = d
        self.terms: dict[ChernMonomial, int] = clean
        self.degree: int = 0 if degree is None else degree

    @classmethod
    def monomial(cls, m: ChernMonomial, coeff: int = 1) -> "ChernPolynomial":
        return cls({m: coeff}, m.degree)

    def __eq__(self, other):
        if not isinstance(other, ChernPolynomial):
            return NotImplemented
        return self.terms == other.terms and (self.degree == other.degree or not self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "ChernPolynomial") -> "ChernPolynomial":
        if self.terms and other.terms and self.degree != other.degree:
            raise ValueError(f"cannot add degree {self.degree} and degree {other.degree}")
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ChernPolynomial(out, self.degree if self.terms else other.degree)

    def __neg__(self):
        return ChernPolynomial({m: -c for m, c in self.terms.items()}, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ChernPolynomial({m: other * c for m, c in self.terms.items()}, self.degree)
        out: dict[ChernMonomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = out.get(m, 0) + c1 * c2
        return ChernPolynomial(out, self.degree + other.degree)

    __rmul__ = __mul__

    def coefficient(self, m: ChernMonomial) -> int:
        return self.terms.get(m, 0)

    def sorted_terms(self) -> list[tuple[ChernMonomial, int]]:
        return sorted(self.terms.items(), key=lambda mc: mc[0].exponents)

    def substitute(self, classes: Callable[[int], object] | Mapping[int, object], one):
        """Evaluate with c_i replaced by ``classes[i]`` in any ring supporting + and *.

        ``one`` is the unit of the target ring; integer scalars multiply on the left.
        """
        get = classes if callable(classes) else classes.__getitem__
        cache: dict[int, object] = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = get(i) if e == 1 else power(i, e - 1) * get(i)
            return cache[key]

        total = one * 0
        for m, c in self.sorted_terms():
            term = one
            for i, e in m.exponents:
                term = term * power(i, e)
            total = total + term * c
        return total

    def __repr__(self):
        return f"ChernPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            mono = str(m)
            if c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{c}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [{"monomial": m.to_json(), "coeff": c} for m, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ChernPolynomial":
        terms: dict[ChernMonomial, int] = {}
        for t in data["terms"]:
            m = ChernMonomial.from_json(t["monomial"])
            terms[m] = terms.get(m, 0) + int(t["coeff"])
        return cls(terms, int(data["degree"]))


@dataclass(frozen=True)
class RootExpansion:
    """Integer polynomial in root variables t_1..t_N, keyed by exponent vectors."""

    nvars: int
    terms: dict[tuple[int, ...], int] = field(default_factory=dict, hash=False, compare=False)

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError("need at least one root variable")
        for exps in self.terms:
            if len(exps) != self.nvars:
                raise ValueError(f"exponent vector {exps} does not have {self.nvars} entries")
        object.__setattr__(self, "terms", {k: v for k, v in self.terms.items() if v})

    @classmethod
    def constant(cls, nvars: int, value: int = 1) -> "RootExpansion":
        return cls(nvars, {(0,) * nvars: value})

    def __eq__(self, other):
        if not isinstance(other, RootExpansion):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __add__(self, other: "RootExpansion") -> "RootExpansion":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return RootExpansion(self.nvars, out)

    def __neg__(self):
        return RootExpansion(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return RootExpansion(self.nvars, {k: other * v for k, v in self.terms.items()})
        if other.nvars != self.nvars:
            raise ValueError("variable counts differ")
        out: dict[tuple[int, ...], int] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + v1 * v2
        return RootExpansion(self.nvars, out)

    __rmul__ = __mul__

    def swap(self, i: int, j: int) -> "RootExpansion":
        """Apply the transposition t_i <-> t_j (0-based)."""
        out = {}
        for k, v in self.terms.items():
            lst = list(k)
            lst[i], lst[j] = lst[j], lst[i]
            out[tuple(lst)] = v
        return RootExpansion(self.nvars, out)

    def is_symmetric(self) -> bool:
        return all(self.swap(i, j) == self for i, j in combinations(range(self.nvars), 2))


def _distinct_permutations(items: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    if not items:
        yield ()
        return
    seen = set()
    for i, x in enumerate(items):
        if x in seen:
            continue
        seen.add(x)
        for rest in _distinct_permutations(items[:i] + items[i + 1:]):
            yield (x,) + rest


def monomial_symmetric(I: Partition, nvars: int) -> RootExpansion:
    """Sum of the distinct monomials in the orbit of t_1^{i_1}...t_r^{i_r}."""
    if nvars < I.length:
        raise ValueError(f"{nvars} variables cannot carry a monomial with {I.length} nonzero exponents")
    if nvars < 1:
        raise ValueError("need at least one root variable")
    base = tuple(I.parts) + (0,) * (nvars - I.length)
    return RootExpansion(nvars, {p: 1 for p in _distinct_permutations(base)})


def elementary_symmetric(k: int, nvars: int) -> RootExpansion:
    if k > nvars:
        return RootExpansion(nvars, {})
    terms = {}
    for idx in combinations(range(nvars), k):
        exps = [0] * nvars
        for i in idx:
            exps[i] = 1
        terms[tuple(exps)] = 1
    return RootExpansion(nvars, terms)


def substitute_roots(P: ChernPolynomial, nvars: int) -> RootExpansion:
    """Evaluate ``P`` at c_i = e_i(t_1..t_nvars)."""
    return P.substitute(lambda i: elementary_symmetric(i, nvars), RootExpansion.constant(nvars))


# --- s_I in terms of c_J -------------------------------------------------
#
# m_I = sum_J a[I][J] e_J. Comparing coefficients of the sorted monomials
# t^lam (lam a partition of n, n variables) gives the square system
#     delta(lam, I) = sum_J A[lam][J] a[I][J],   A[lam][J] = [t^lam] e_J.
# [t^lam] e_J counts 0-1 matrices with row sums J and column sums lam.


@lru_cache(maxsize=None)
def _zero_one_count(rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
    # rows sorted descending; consume one column at a time
    if not cols:
        return int(all(r == 0 for r in rows))
    c, rest = cols[0], cols[1:]
    live = [i for i, r in enumerate(rows) if r > 0]
    if len(live) < c:
        return 0
    residuals: Counter = Counter()
    for chosen in combinations(live, c):
        new = list(rows)
        for i in chosen:
            new[i] -= 1
        residuals[tuple(sorted(new, reverse=True))] += 1
    return sum(mult * _zero_one_count(key, rest) for key, mult in residuals.items())


def elementary_monomial_coefficient(J: Partition, lam: Partition) -> int:
    """Coefficient of t^lam in e_{j_1} ... e_{j_r}."""
    if J.weight != lam.weight:
        return 0
    return _zero_one_count(tuple(J.parts), tuple(lam.parts))


@lru_cache(maxsize=None)
def _s_to_c(n: int) -> tuple[tuple[int, ...], ...]:
    parts = enumerate_partitions(n)
    A = [[elementary_monomial_coefficient(J, lam) for J in parts] for lam in parts]
    # a[I][J] = (A^{-1})[J][I]
    Ainv = integer_inverse(A)
    return tuple(tuple(Ainv[j][i] for j in range(len(parts))) for i in range(len(parts)))


@lru_cache(maxsize=None)
def _c_to_s(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(row) for row in integer_inverse(_s_to_c(n)))


def s_poly(I: Partition) -> ChernPolynomial:
    """The class s_I written in the Chern classes c_1..c_n, n = weight(I)."""
    n = I.weight
    if n < 1:
        raise ValueError("s_poly needs a partition of positive weight")
    _check_degree(n)
    parts = enumerate_partitions(n)
    row = _s_to_c(n)[parts.index(I)]
    return ChernPolynomial({ChernMonomial.from_partition(J): a for J, a in zip(parts, row)}, n)


def c_poly(I: Partition) -> ChernPolynomial:
    """The monomial c_{i_1} ... c_{i_r}."""
    if I.weight < 1:
        raise ValueError("c_poly needs a partition of positive weight")
    return ChernPolynomial.monomial(ChernMonomial.from_partition(I))


def basis_poly(basis: str, I: Partition) -> ChernPolynomial:
    if basis == "s":
        return s_poly(I)
    if basis == "c":
        return c_poly(I)
    raise ValueError(f"unknown basis {basis!r}; expected one of {BASES}")


def transition_matrix(n: int, source: str, target: str) -> list[list[int]]:
    """Integer matrix M with P_source(I) = sum_J M[I][J] P_target(J), indexed by enumerate_partitions(n)."""
    if n < 1:
        raise ValueError("transition_matrix needs n >= 1")
    _check_degree(n)
    for b in (source, target):
        if b not in BASES:
            raise ValueError(f"unknown basis {b!r}; expected one of {BASES}")
    if source == target:
        return identity(len(enumerate_partitions(n)))
    table = _s_to_c(n) if source == "s" else _c_to_s(n)
    return [list(row) for row in table]


def newton_power_sum(n: int) -> ChernPolynomial:
    """p_n in the c_i via Newton's identities (independent of ``s_poly``)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    c = [None] + [ChernPolynomial.monomial(ChernMonomial(((i, 1),))) for i in range(1, n + 1)]
    p: list[ChernPolynomial] = [ChernPolynomial({}, 0)]
    for k in range(1, n + 1):
        acc = c[k] * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + c[i] * p[k - i] * ((-1) ** (i - 1))
        p.append(acc)
    return p[n]
