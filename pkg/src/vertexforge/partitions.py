"""Integer partitions and the scalar statistics attached to them."""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Any iterable of positive integers is accepted and sorted into normal form,
    so ``Partition([1, 2]) == Partition([2, 1]) == (2, 1)``.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "Partition":
        parts = tuple(parts)
        for p in parts:
            if isinstance(p, bool) or not isinstance(p, int) or p <= 0:
                raise ValueError(f"partition parts must be positive integers, got {p!r}")
        return super().__new__(cls, sorted(parts, reverse=True))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the comma-separated text form; ``[]``, ``""`` and ``0`` mean the empty partition."""
        text = text.strip()
        if text.startswith("(") and text.endswith(")"):
            text = text[1:-1].strip()
        if text in ("", "[]", "0", "∅"):
            return EMPTY
        try:
            return cls(int(tok) for tok in text.split(","))
        except ValueError as exc:
            raise ValueError(f"bad partition {text!r}: {exc}") from None

    def __repr__(self) -> str:
        return f"Partition({list(self)!r})"

    def __str__(self) -> str:
        return ",".join(map(str, self)) if self else "[]"

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self))

    def transpose(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def kappa(self) -> int:
        return kappa(self)

    def z(self) -> int:
        return stats(self)[0]

    def union(self, other: Iterable[int]) -> "Partition":
        return Partition(tuple(self) + tuple(other))

    def double(self) -> "Partition":
        return Partition(2 * p for p in self)


EMPTY = Partition()


def transpose(mu: Partition) -> Partition:
    return Partition(mu).transpose()


def kappa(mu: Iterable[int]) -> int:
    """Sum of mu_i (mu_i - 2i + 1) with 1-based i; antisymmetric under transpose."""
    return sum(m * (m - 2 * i + 1) for i, m in enumerate(mu, start=1))


@lru_cache(maxsize=None)
def stats(mu: Partition) -> tuple[int, int, int]:
    """Return ``(z, aut, a)``: centralizer order, |Aut(mu)| and the product of parts."""
    aut = prod(factorial(m) for m in Counter(mu).values())
    a = prod(mu)
    return a * aut, aut, a


def z(mu: Partition) -> int:
    return stats(mu)[0]


def union(mu: Iterable[int], nu: Iterable[int]) -> Partition:
    return Partition(tuple(mu) + tuple(nu))


def double(mu: Iterable[int]) -> Partition:
    return Partition(2 * p for p in mu)


def _partitions_bounded(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_bounded(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in lexicographically decreasing order."""
    if n < 0:
        raise ValueError("cannot enumerate partitions of a negative integer")
    return tuple(Partition(p) for p in _partitions_bounded(n, n))


def partitions_up_to(n: int) -> Iterator[Partition]:
    for k in range(n + 1):
        yield from partitions(k)


class PartitionTriple(tuple):
    """Three partitions ``(mu1, mu2, mu3)``."""

    __slots__ = ()

    def __new__(cls, mu1: Iterable[int] = (), mu2: Iterable[int] = (), mu3: Iterable[int] = ()):
        return super().__new__(cls, (Partition(mu1), Partition(mu2), Partition(mu3)))

    def __getnewargs__(self):
        return tuple(self)

    @classmethod
    def parse(cls, text: str) -> "PartitionTriple":
        pieces = text.split("/")
        if len(pieces) != 3:
            raise ValueError(f"expected three partitions separated by '/', got {text!r}")
        return cls(*(Partition.parse(p) for p in pieces))

    def __repr__(self) -> str:
        return f"PartitionTriple({list(self[0])}, {list(self[1])}, {list(self[2])})"

    def __str__(self) -> str:
        return "/".join(str(p) for p in self)

    @property
    def length(self) -> int:
        return sum(len(p) for p in self)

    @property
    def aut(self) -> int:
        return prod(stats(p)[1] for p in self)

    def rotate(self, k: int = 1) -> "PartitionTriple":
        k %= 3
        return PartitionTriple(*(self[k:] + self[:k]))


def triples_up_to(max_size: int, *, include_empty: bool = False) -> Iterator[PartitionTriple]:
    """Every triple with each |mu^i| <= max_size, in a fixed order."""
    pool = list(partitions_up_to(max_size))
    for a in pool:
        for b in pool:
            for c in pool:
                if include_empty or a or b or c:
                    yield PartitionTriple(a, b, c)
