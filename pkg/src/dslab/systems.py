"""Rademacher, Walsh-Paley and Walsh-Kaczmarz functions."""

from __future__ import annotations

import enum
from functools import lru_cache

import numpy as np

from .dyadic import DyadicPoint, bit_length
from .exceptions import DomainError, ResolutionError

__all__ = [
    "SystemId",
    "rademacher_eval",
    "walsh_eval",
    "kaczmarz_eval",
    "system_eval",
    "lower_bit_reverse",
    "kaczmarz_permutation",
    "system_values",
]


class SystemId(str, enum.Enum):
    WALSH_PALEY = "walsh_paley"
    WALSH_KACZMARZ = "walsh_kaczmarz"

    @classmethod
    def parse(cls, value) -> "SystemId":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {
            "w": cls.WALSH_PALEY,
            "walsh": cls.WALSH_PALEY,
            "paley": cls.WALSH_PALEY,
            "walsh_paley": cls.WALSH_PALEY,
            "k": cls.WALSH_KACZMARZ,
            "kappa": cls.WALSH_KACZMARZ,
            "kaczmarz": cls.WALSH_KACZMARZ,
            "walsh_kaczmarz": cls.WALSH_KACZMARZ,
        }
        try:
            return aliases[key]
        except KeyError:
            raise DomainError(f"unknown system {value!r}") from None


def _check_index(n: int, x: DyadicPoint) -> None:
    if n < 0:
        raise DomainError(f"negative index {n}")
    if n and bit_length(n) >= x.resolution:
        raise ResolutionError(
            f"index {n} needs resolution > {bit_length(n)}, point has {x.resolution}"
        )


def rademacher_eval(k: int, x: DyadicPoint) -> int:
    if k < 0:
        raise DomainError(f"negative Rademacher index {k}")
    if k >= x.resolution:
        raise ResolutionError(f"bit {k} unavailable at resolution {x.resolution}")
    return -1 if x.bits[k] else 1


def walsh_eval(n: int, x: DyadicPoint) -> int:
    _check_index(n, x)
    value = 1
    k = 0
    while n:
        if n & 1:
            value *= rademacher_eval(k, x)
        n >>= 1
        k += 1
    return value


def kaczmarz_eval(n: int, x: DyadicPoint) -> int:
    """``kappa_n(x) = r_|n|(x) * (-1)**sum_{k<|n|} n_k x_{|n|-1-k}``; ``kappa_0 = 1``."""
    _check_index(n, x)
    if n == 0:
        return 1
    top = bit_length(n)
    exponent = sum(((n >> k) & 1) * x.bits[top - 1 - k] for k in range(top))
    return rademacher_eval(top, x) * (-1) ** exponent


def system_eval(n: int, x: DyadicPoint, system) -> int:
    if SystemId.parse(system) is SystemId.WALSH_PALEY:
        return walsh_eval(n, x)
    return kaczmarz_eval(n, x)


def lower_bit_reverse(n: int) -> int:
    """Reverse the ``|n|`` low bits of ``n``, keeping the leading one.

    ``kappa_n`` and ``w_{lower_bit_reverse(n)}`` are the same function.
    """
    top = bit_length(n)
    low = n - (1 << top)
    rev = int(format(low, f"0{top}b")[::-1], 2) if top else 0
    return (1 << top) | rev


@lru_cache(maxsize=None)
def kaczmarz_permutation(resolution: int) -> np.ndarray:
    """``perm[n] = lower_bit_reverse(n)`` for ``n < 2**resolution`` (``perm[0] = 0``)."""
    size = 1 << resolution
    perm = np.zeros(size, dtype=np.int64)
    for top in range(resolution):
        block = np.arange(1 << top, dtype=np.int64)
        rev = np.zeros_like(block)
        for b in range(top):
            rev |= ((block >> b) & 1) << (top - 1 - b)
        perm[(1 << top) + block] = (1 << top) | rev
    perm.setflags(write=False)
    return perm


@lru_cache(maxsize=None)
def _reversed_cells(resolution: int) -> np.ndarray:
    cells = np.arange(1 << resolution, dtype=np.int64)
    rev = np.zeros_like(cells)
    for b in range(resolution):
        rev |= ((cells >> b) & 1) << (resolution - 1 - b)
    rev.setflags(write=False)
    return rev


def system_values(n: int, resolution: int, system) -> np.ndarray:
    """Values of ``psi_n`` on every cell, as an int64 array of +-1."""
    if n < 0:
        raise DomainError(f"negative index {n}")
    if n >= 1 << resolution:
        raise ResolutionError(f"index {n} needs resolution > {resolution}")
    if SystemId.parse(system) is SystemId.WALSH_KACZMARZ and n:
        n = int(kaczmarz_permutation(resolution)[n])
    # bit k of n pairs with x_k, which is bit (N-1-k) of the cell index
    masked = _reversed_cells(resolution) & n
    parity = np.zeros_like(masked)
    while masked.any():
        parity ^= masked & 1
        masked = masked >> 1
    return 1 - 2 * parity
