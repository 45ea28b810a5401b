"""Integral cohomology of products of complex projective spaces.

H*(CP^{k_1} x ... x CP^{k_m}) = Z[x_1, ..., x_m] / (x_j^{k_j + 1}), with x_j of
real degree 2. Degrees below are complex degrees (half the real degree).

Monomials are packed into one integer, one bit field per factor. A field is
wide enough to hold the sum of two in-range exponents plus a guard bit, so a
product of monomials is an integer addition and truncation is a mask test.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, partial
from typing import Callable, Iterable, Mapping


class _Layout:
    __slots__ = ("dims", "width", "shifts", "offset", "high", "field_mask", "top", "_degrees")

    def __init__(self, dims: tuple[int, ...]):
        self.dims = dims
        self.width = (2 * max(dims) + 1).bit_length() + 1
        self.shifts = tuple(self.width * j for j in range(len(dims)))
        self.field_mask = (1 << self.width) - 1
        guard = 1 << (self.width - 1)
        # adding offset to an exponent e sets the guard bit iff e > k
        self.offset = sum((guard - 1 - k) << s for k, s in zip(dims, self.shifts))
        self.high = sum(guard << s for s in self.shifts)
        self.top = self.encode(dims)
        self._degrees: dict[int, int] = {}

    def encode(self, exps: Iterable[int]) -> int:
        return sum(e << s for e, s in zip(exps, self.shifts))

    def decode(self, key: int) -> tuple[int, ...]:
        m = self.field_mask
        return tuple((key >> s) & m for s in self.shifts)

    def fits(self, key: int) -> bool:
        return not ((key + self.offset) & self.high)

    def degree(self, key: int) -> int:
        d = self._degrees.get(key)
        if d is None:
            d = self._degrees[key] = sum(self.decode(key))
        return d


@lru_cache(maxsize=None)
def _layout(dims: tuple[int, ...]) -> _Layout:
    return _Layout(dims)


@dataclass(frozen=True)
class ProductSpace:
    """CP^{k_1} x ... x CP^{k_m} with a global orientation sign."""

    factors: tuple[int, ...]
    orientation: int = 1

    def __post_init__(self):
        factors = tuple(self.factors)
        object.__setattr__(self, "factors", factors)
        if not factors:
            raise ValueError("a product space needs at least one factor")
        if any((not isinstance(k, int)) or k < 1 for k in factors):
            raise ValueError(f"factor dimensions must be positive integers, got {factors}")
        if self.orientation not in (1, -1):
            raise ValueError(f"orientation must be +1 or -1, got {self.orientation!r}")

    @classmethod
    def cp(cls, k: int, orientation: int = 1) -> "ProductSpace":
        return cls((k,), orientation)

    @property
    def complex_dim(self) -> int:
        return sum(self.factors)

    @property
    def real_dim(self) -> int:
        return 2 * self.complex_dim

    @property
    def layout(self) -> _Layout:
        return _layout(self.factors)

    def reversed(self) -> "ProductSpace":
        return ProductSpace(self.factors, -self.orientation)

    def with_orientation(self, orientation: int) -> "ProductSpace":
        return ProductSpace(self.factors, orientation)

    def zero(self) -> "CohomologyElement":
        return CohomologyElement(self, {})

    def one(self) -> "CohomologyElement":
        return CohomologyElement(self, {0: 1})

    def x(self, j: int = 0) -> "CohomologyElement":
        """Hyperplane class of factor ``j`` (0-based)."""
        if not 0 <= j < len(self.factors):
            raise IndexError(f"factor index {j} out of range for {len(self.factors)} factors")
        exps = [0] * len(self.factors)
        exps[j] = 1
        return self.element({tuple(exps): 1})

    def element(self, terms: Mapping[tuple[int, ...], int]) -> "CohomologyElement":
        """Element from an exponent-vector map; monomials beyond the caps are dropped."""
        lay = self.layout
        packed: dict[int, int] = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != len(self.factors) or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for factors {self.factors}")
            if any(e > k for e, k in zip(exps, self.factors)):
                continue
            key = lay.encode(exps)
            packed[key] = packed.get(key, 0) + c
        return CohomologyElement(self, packed)

    def top_class(self) -> "CohomologyElement":
        return CohomologyElement(self, {self.layout.top: 1})

    def __str__(self):
        body = " x ".join(f"CP^{k}" for k in self.factors)
        return body if self.orientation == 1 else f"-({body})"

    def to_json(self) -> dict:
        return {"factors": list(self.factors), "orientation": self.orientation}

    @classmethod
    def from_json(cls, data: Mapping) -> "ProductSpace":
        return cls(tuple(int(k) for k in data["factors"]), int(data.get("orientation", 1)))


class CohomologyElement:
    """Truncated polynomial in x_1..x_m over a fixed ``ProductSpace``."""

    __slots__ = ("space", "terms")

    def __init__(self, space: ProductSpace, terms: Mapping[int, int]):
        self.space = space
        self.terms: dict[int, int] = {k: c for k, c in terms.items() if c}

    def _check(self, other: "CohomologyElement"):
        if other.space != self.space:
            raise ValueError(f"elements live on different spaces: {self.space} vs {other.space}")

    def __eq__(self, other):
        if not isinstance(other, CohomologyElement):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self):
        return hash((self.space, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if isinstance(other, int):
            other = self.space.one() * other
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return CohomologyElement(self.space, out)

    __radd__ = __add__

    def __neg__(self):
        return CohomologyElement(self.space, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CohomologyElement(self.space, {k: other * c for k, c in self.terms.items()})
        self._check(other)
        lay = self.space.layout
        offset, high = lay.offset, lay.high
        out: dict[int, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                if (k + offset) & high:
                    continue
                out[k] = out.get(k, 0) + c1 * c2
        return CohomologyElement(self.space, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.space.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def exponent_terms(self) -> dict[tuple[int, ...], int]:
        lay = self.space.layout
        return {lay.decode(k): c for k, c in self.terms.items()}

    def coefficient(self, exps: Iterable[int]) -> int:
        return self.terms.get(self.space.layout.encode(tuple(exps)), 0)

    @property
    def constant_term(self) -> int:
        return self.terms.get(0, 0)

    def homogeneous_part(self, d: int) -> "CohomologyElement":
        """Part of complex degree ``d`` (real degree 2d)."""
        deg = self.space.layout.degree
        return CohomologyElement(self.space, {k: c for k, c in self.terms.items() if deg(k) == d})

    def degrees(self) -> set[int]:
        deg = self.space.layout.degree
        return {deg(k) for k in self.terms}

    def graded_sign(self) -> "CohomologyElement":
        """Multiply each degree-d part by (-1)^d."""
        deg = self.space.layout.degree
        return CohomologyElement(self.space, {k: (-c if deg(k) % 2 else c) for k, c in self.terms.items()})

    def inverse(self) -> "CohomologyElement":
        """Inverse of a unit (constant term +-1) as a truncated geometric series."""
        c0 = self.constant_term
        if c0 not in (1, -1):
            raise ValueError(f"element with constant term {c0} is not a unit")
        nil = self * c0 - self.space.one()  # self = c0 * (1 + nil)
        result = self.space.one()
        power = self.space.one()
        for _ in range(self.space.complex_dim):
            power = power * (-nil)
            if not power:
                break
            result = result + power
        return result * c0

    def pair(self) -> int:
        """Evaluate on the oriented fundamental class: sign times the top coefficient."""
        return self.space.orientation * self.terms.get(self.space.layout.top, 0)

    def pair_product(self, other: "CohomologyElement") -> int:
        """``(self * other).pair()`` without forming the full product."""
        self._check(other)
        top = self.space.layout.top
        small, big = (self.terms, other.terms) if len(self.terms) <= len(other.terms) else (other.terms, self.terms)
        total = 0
        for k, c in small.items():
            c2 = big.get(top - k)
            if c2:
                total += c * c2
        return self.space.orientation * total

    def __repr__(self):
        return f"CohomologyElement({self.space}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps, c in sorted(self.exponent_terms().items(), key=lambda t: (sum(t[0]), t[0])):
            mono = "*".join(
                (f"x{j + 1}" if e == 1 else f"x{j + 1}^{e}") for j, e in enumerate(exps) if e
            )
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{c}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "space": self.space.to_json(),
            "terms": [
                {"exponents": list(exps), "coeff": c}
                for exps, c in sorted(self.exponent_terms().items(), key=lambda t: (sum(t[0]), t[0]))
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CohomologyElement":
        space = ProductSpace.from_json(data["space"])
        return space.element({tuple(t["exponents"]): int(t["coeff"]) for t in data["terms"]})


def multiply(a: CohomologyElement, b: CohomologyElement) -> CohomologyElement:
    return a * b


def pair_fundamental(a: CohomologyElement) -> int:
    return a.pair()


def inject(a: CohomologyElement, target: ProductSpace, offset: int) -> CohomologyElement:
    """Pull ``a`` back along the projection of ``target`` onto factors offset..offset+m-1."""
    m = len(a.space.factors)
    if tuple(target.factors[offset:offset + m]) != a.space.factors:
        raise ValueError(f"{a.space} is not the factor block at {offset} of {target}")
    src, dst = a.space.layout, target.layout
    shift = dst.shifts[offset] if offset < len(dst.shifts) else 0
    if src.width == dst.width:
        return CohomologyElement(target, {k << shift: c for k, c in a.terms.items()})
    out = {}
    for k, c in a.terms.items():
        exps = (0,) * offset + src.decode(k) + (0,) * (len(target.factors) - offset - m)
        out[dst.encode(exps)] = c
    return CohomologyElement(target, out)


def external_product(
    S: ProductSpace, T: ProductSpace
) -> tuple[ProductSpace, Callable[[CohomologyElement], CohomologyElement], Callable[[CohomologyElement], CohomologyElement]]:
    """S x T together with the pullbacks from each factor."""
    ST = ProductSpace(S.factors + T.factors, S.orientation * T.orientation)
    return ST, partial(inject, target=ST, offset=0), partial(inject, target=ST, offset=len(S.factors))


@dataclass(frozen=True)
class StructuredSpace:
    """Disjoint union of product spaces of one common dimension."""

    components: tuple[ProductSpace, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("a structured space needs at least one component")
        dims = {c.real_dim for c in comps}
        if len(dims) != 1:
            raise ValueError(f"components have different real dimensions {sorted(dims)}")

    @property
    def real_dim(self) -> int:
        return self.components[0].real_dim

    def pair(self, elements: Iterable[CohomologyElement]) -> int:
        """Sum of fundamental-class pairings, one element per component."""
        elements = list(elements)
        if len(elements) != len(self.components):
            raise ValueError("need exactly one element per component")
        total = 0
        for space, a in zip(self.components, elements):
            if a.space != space:
                raise ValueError(f"element lives on {a.space}, expected {space}")
            total += a.pair()
        return total


def parse_space(text: str) -> ProductSpace:
    """Parse ``CP:2``, ``CP:1xCP:1`` or ``-CP:2`` (leading minus reverses orientation)."""
    s = text.replace(" ", "")
    orientation = 1
    if s.startswith("-"):
        orientation, s = -1, s[1:]
    elif s.startswith("+"):
        s = s[1:]
    factors = []
    for piece in s.split("x"):
        if not piece.upper().startswith("CP:"):
            raise ValueError(f"malformed space factor {piece!r} in {text!r}; expected CP:k")
        try:
            k = int(piece[3:])
        except ValueError:
            raise ValueError(f"malformed dimension in {piece!r}") from None
        factors.append(k)
    return ProductSpace(tuple(factors), orientation)
