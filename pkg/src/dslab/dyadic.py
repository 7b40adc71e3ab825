"""Truncated Walsh group: points, dyadic intervals and binary index expansions.

A point at resolution ``N`` is a bit vector ``(x_0, ..., x_{N-1})``.  Cells are
numbered with ``x_0`` as the most significant bit, so the dyadic interval
``I_n(x)`` is always a contiguous block of ``2**(N - n)`` cell indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exceptions import DomainError, ResolutionError

__all__ = [
    "DyadicPoint",
    "DyadicInterval",
    "IndexExpansion",
    "bit_length",
    "decompose",
    "interval_cells",
]


def bit_length(n: int) -> int:
    """Return ``|n|``, the position of the leading binary digit of ``n``.

    ``2**|n| <= n < 2**(|n|+1)``.  ``|0|`` is undefined and raises.
    """
    if n < 1:
        raise DomainError(f"|n| is undefined for n={n}")
    return int(n).bit_length() - 1


@dataclass(frozen=True)
class DyadicPoint:
    resolution: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if self.resolution < 1:
            raise DomainError("resolution must be positive")
        if len(self.bits) != self.resolution:
            raise DomainError(
                f"expected {self.resolution} bits, got {len(self.bits)}"
            )
        if any(b not in (0, 1) for b in self.bits):
            raise DomainError("bits must be 0 or 1")

    @classmethod
    def from_index(cls, index: int, resolution: int) -> "DyadicPoint":
        if not 0 <= index < 1 << resolution:
            raise ResolutionError(
                f"cell {index} does not exist at resolution {resolution}"
            )
        bits = tuple((index >> (resolution - 1 - k)) & 1 for k in range(resolution))
        return cls(resolution, bits)

    @classmethod
    def zero(cls, resolution: int) -> "DyadicPoint":
        return cls(resolution, (0,) * resolution)

    @classmethod
    def unit(cls, k: int, resolution: int) -> "DyadicPoint":
        """The point ``e_k``: bit ``k`` set, all others zero."""
        if not 0 <= k < resolution:
            raise ResolutionError(f"e_{k} needs resolution > {k}")
        return cls(resolution, tuple(int(i == k) for i in range(resolution)))

    @property
    def index(self) -> int:
        idx = 0
        for b in self.bits:
            idx = (idx << 1) | b
        return idx

    def __add__(self, other: "DyadicPoint") -> "DyadicPoint":
        # group operation: coordinatewise addition mod 2
        if other.resolution != self.resolution:
            raise ResolutionError("points live at different resolutions")
        return DyadicPoint(
            self.resolution, tuple(a ^ b for a, b in zip(self.bits, other.bits))
        )


@dataclass(frozen=True)
class DyadicInterval:
    """``I_rank(anchor)``: points whose first ``rank`` bits equal ``anchor``."""

    rank: int
    anchor: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise DomainError("rank must be nonnegative")
        if len(self.anchor) != self.rank:
            raise DomainError("anchor length must equal the rank")
        if any(b not in (0, 1) for b in self.anchor):
            raise DomainError("anchor bits must be 0 or 1")

    @classmethod
    def at(cls, x: DyadicPoint, rank: int) -> "DyadicInterval":
        if rank > x.resolution:
            raise ResolutionError(
                f"rank {rank} exceeds the point resolution {x.resolution}"
            )
        return cls(rank, x.bits[:rank])

    @classmethod
    def centered(cls, rank: int) -> "DyadicInterval":
        """``I_rank = I_rank(0)``."""
        return cls(rank, (0,) * rank)

    @property
    def measure(self) -> Fraction:
        return Fraction(1, 1 << self.rank)

    def contains(self, x: DyadicPoint) -> bool:
        return x.resolution >= self.rank and x.bits[: self.rank] == self.anchor

    def children(self) -> tuple["DyadicInterval", "DyadicInterval"]:
        return (
            DyadicInterval(self.rank + 1, self.anchor + (0,)),
            DyadicInterval(self.rank + 1, self.anchor + (1,)),
        )


def interval_cells(interval: DyadicInterval, resolution: int) -> range:
    """Cell indices of ``interval`` at the given resolution."""
    if interval.rank > resolution:
        raise ResolutionError(
            f"interval of rank {interval.rank} is finer than resolution {resolution}"
        )
    prefix = 0
    for b in interval.anchor:
        prefix = (prefix << 1) | b
    width = 1 << (resolution - interval.rank)
    return range(prefix * width, (prefix + 1) * width)


@dataclass(frozen=True)
class IndexExpansion:
    """Binary expansion of ``n`` and the tails used in kernel estimates.

    ``exponents`` lists ``n_1 > n_2 > ... > n_r`` with ``n = sum 2**n_k``;
    ``tails[k]`` is ``n^(k)``, the value left after dropping the ``k``
    largest powers, so ``tails[0] == n`` and ``tails[r] == 0``.
    """

    n: int
    digits: tuple[int, ...]
    exponents: tuple[int, ...]
    tails: tuple[int, ...]

    @property
    def top(self) -> int:
        return self.exponents[0]

    def tail(self, k: int) -> int:
        return self.tails[k]


def decompose(n: int) -> IndexExpansion:
    if n < 1:
        raise DomainError(f"cannot decompose n={n}")
    digits = tuple((n >> i) & 1 for i in range(n.bit_length()))
    exponents = tuple(i for i in reversed(range(len(digits))) if digits[i])
    tails = [n]
    for e in exponents:
        tails.append(tails[-1] - (1 << e))
    return IndexExpansion(n, digits, exponents, tuple(tails))
