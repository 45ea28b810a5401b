"""Integer partitions and the refinement order."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator


@dataclass(frozen=True, order=False)
class Partition:
    """A weakly decreasing tuple of positive integers.

    The empty partition (weight 0) is allowed.
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        for p in parts:
            if not isinstance(p, int) or isinstance(p, bool) or p < 1:
                raise ValueError(f"partition parts must be positive integers, got {parts!r}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing, got {parts!r}")

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Partition":
        """Build a partition from parts in any order."""
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __repr__(self):
        return f"Partition({list(self.parts)})"

    def __str__(self):
        return "[" + ",".join(map(str, self.parts)) + "]"

    def to_json(self) -> list[int]:
        return list(self.parts)

    @classmethod
    def from_json(cls, data) -> "Partition":
        if not isinstance(data, list):
            raise ValueError(f"expected a JSON array of integers, got {data!r}")
        return cls(tuple(data))


def _check_n(n):
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")


def _descending(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _descending(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _descending(n, n))


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order ([n] first, [1,...,1] last)."""
    _check_n(n)
    return list(_enumerate(n))


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal-number recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > n:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(n - g1)
        g2 = k * (3 * k + 1) // 2
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


@lru_cache(maxsize=None)
def _can_group(parts: tuple[int, ...], bins: tuple[int, ...]) -> bool:
    # parts descending; bins sorted ascending, holding remaining capacities
    if not parts:
        return all(b == 0 for b in bins)
    head, rest = parts[0], parts[1:]
    tried = set()
    for i, cap in enumerate(bins):
        if cap < head or cap in tried:
            continue
        tried.add(cap)
        new_bins = tuple(sorted(bins[:i] + (cap - head,) + bins[i + 1:]))
        if _can_group(rest, new_bins):
            return True
    return False


def refines(I: Partition, J: Partition) -> bool:
    """True iff the parts of ``I`` split into groups summing to the parts of ``J``."""
    if I.weight != J.weight:
        raise ValueError(f"refines needs equal weights, got {I} (weight {I.weight}) and {J} (weight {J.weight})")
    if I.length < J.length:
        return False
    return _can_group(I.parts, tuple(sorted(J.parts)))


def juxtapose(*partitions: Partition) -> Partition:
    """Multiset union of parts."""
    return Partition.of(p for part in partitions for p in part.parts)


def triangular_order(n: int) -> list[Partition]:
    """Partitions of ``n`` sorted by number of parts, canonical order within ties.

    If I strictly refines J then J comes first.
    """
    return sorted(enumerate_partitions(n), key=len)


def parse_partition(text: str) -> Partition:
    """Parse ``"2,1,1"`` (any order, whitespace allowed)."""
    text = text.strip().strip("[]")
    if not text:
        return Partition(())
    try:
        parts = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError(f"malformed partition {text!r}: expected comma-separated integers") from None
    return Partition.of(parts)
