"""Dirichlet, Fejer, Cesaro and Norlund kernels as sampled functions.

Every kernel is a finite combination ``sum_i m_i psi_i`` of system functions,
so it is built from its multiplier sequence ``m`` by one inverse transform:

* Dirichlet ``D_n``: ``m_i = 1`` for ``i < n``
* Fejer ``K_n``: ``m_i = (n - i)/n``
* Norlund ``F_n``: ``m_i = Q_{n-i}/Q_n``

Construction is cached on ``(kind, n, system, N, exact, weights)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exceptions import DegenerateWeightsError, DomainError, ModeError, ResolutionError
from .systems import SystemId
from .transforms import CoefficientVector, SampledFunction, inverse_transform
from .weights import WeightSequence, cesaro_coefficient, parse_rational, preset

__all__ = [
    "Kernel",
    "cesaro_coefficient",
    "dirichlet_multipliers",
    "fejer_multipliers",
    "norlund_multipliers",
    "kernel_from_multipliers",
    "dirichlet_kernel",
    "fejer_kernel",
    "cesaro_kernel",
    "norlund_kernel",
]


@dataclass(frozen=True, eq=False)
class Kernel:
    construction: tuple
    system: SystemId
    data: SampledFunction

    @property
    def values(self) -> np.ndarray:
        return self.data.values

    @property
    def resolution(self) -> int:
        return self.data.resolution

    def __repr__(self):
        return f"Kernel({self.construction}, {self.system.value}, N={self.resolution})"


def _check_n(n: int, resolution: int, minimum: int = 0) -> None:
    if n < minimum:
        raise DomainError(f"kernel index must be >= {minimum}, got {n}")
    if n > 1 << resolution:
        raise ResolutionError(f"index {n} exceeds 2**{resolution}")


def dirichlet_multipliers(n: int, exact: bool = True) -> list:
    one = Fraction(1) if exact else 1.0
    return [one] * n


def fejer_multipliers(n: int, exact: bool = True) -> list:
    if exact:
        return [Fraction(n - i, n) for i in range(n)]
    return [(n - i) / n for i in range(n)]


def norlund_multipliers(q: WeightSequence, n: int, exact: bool = True) -> list:
    """``Q_{n-i}/Q_n`` for ``i < n``: the coefficient of ``psi_i`` in ``F_n``."""
    if exact:
        if not q.rational:
            raise ModeError(f"{q.name} is not rational; use float mode")
        Q = q.partial_sums(n)
    else:
        Q = q.Q_float(n)
    if not Q[n]:
        raise DegenerateWeightsError(f"Q_{n} = 0 for {q.name}")
    return [Q[n - i] / Q[n] for i in range(n)]


def kernel_from_multipliers(multipliers, system, resolution: int, exact: bool = True) -> SampledFunction:
    size = 1 << resolution
    if len(multipliers) > size:
        raise ResolutionError(f"{len(multipliers)} terms exceed 2**{resolution}")
    if exact:
        coeffs = np.full(size, Fraction(0), dtype=object)
    else:
        coeffs = np.zeros(size)
    coeffs[: len(multipliers)] = multipliers
    return inverse_transform(CoefficientVector(SystemId.parse(system), coeffs, exact))


@lru_cache(maxsize=4096)
def _cached(kind: str, n: int, system: SystemId, resolution: int, exact: bool) -> Kernel:
    if kind == "dirichlet":
        mult = dirichlet_multipliers(n, exact)
        construction = ("dirichlet", n)
    elif kind == "fejer":
        mult = fejer_multipliers(n, exact)
        construction = ("fejer", n)
    else:  # pragma: no cover - internal
        raise AssertionError(kind)
    return Kernel(construction, system, kernel_from_multipliers(mult, system, resolution, exact))


def dirichlet_kernel(n: int, system, resolution: int, exact: bool = True) -> Kernel:
    """``D_n = psi_0 + ... + psi_{n-1}``; ``D_0 = 0``."""
    _check_n(n, resolution)
    return _cached("dirichlet", n, SystemId.parse(system), resolution, exact)


def fejer_kernel(n: int, system, resolution: int, exact: bool = True) -> Kernel:
    """``K_n = (D_1 + ... + D_n)/n``."""
    _check_n(n, resolution, 1)
    return _cached("fejer", n, SystemId.parse(system), resolution, exact)


class _WeightsKey:
    # lru_cache key wrapper: equal when the weight sequences have the same key
    __slots__ = ("q",)

    def __init__(self, q):
        self.q = q

    def __hash__(self):
        return hash(self.q.key)

    def __eq__(self, other):
        return isinstance(other, _WeightsKey) and other.q.key == self.q.key


def norlund_kernel(n: int, q: WeightSequence, system, resolution: int, exact: bool | None = None) -> Kernel:
    """``F_n = (1/Q_n) sum_{k=1}^n q_{n-k} D_k``.

    Exact by default for rational weights, float otherwise.
    """
    _check_n(n, resolution, 1)
    if exact is None:
        exact = q.rational
    return _cached_norlund(n, SystemId.parse(system), resolution, exact, _WeightsKey(q))


@lru_cache(maxsize=4096)
def _cached_norlund(n, system, resolution, exact, wkey):
    mult = norlund_multipliers(wkey.q, n, exact)
    return Kernel(
        ("norlund", n, wkey.q.key),
        system,
        kernel_from_multipliers(mult, system, resolution, exact),
    )


def cesaro_kernel(n: int, alpha, system, resolution: int, exact: bool = True) -> Kernel:
    """(C, alpha) kernel: the Norlund kernel with weights ``q_k = A_k^(alpha-1)``.

    Normalised by ``Q_n = A_{n-1}^alpha`` so that it integrates to one.
    """
    alpha = parse_rational(alpha)
    kernel = norlund_kernel(n, preset("cesaro", alpha), system, resolution, exact)
    return Kernel(("cesaro", n, alpha), kernel.system, kernel.data)
