"""Sampled functions on the truncated Walsh group and their Walsh transforms.

Exact mode keeps every value as a :class:`fractions.Fraction`; the butterfly
itself runs on integers after clearing denominators, so exact transforms
cost little more than integer ones.  Float mode uses ``float64`` and is meant
for large-resolution convergence runs (relative tolerance ``1e-9``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable

import numpy as np

from .dyadic import DyadicInterval, DyadicPoint, interval_cells
from .exceptions import DomainError, ResolutionError
from .systems import SystemId, _reversed_cells, kaczmarz_permutation, system_values

__all__ = [
    "FLOAT_RTOL",
    "SampledFunction",
    "CoefficientVector",
    "walsh_hadamard",
    "forward_transform",
    "inverse_transform",
    "partial_sum",
    "apply_multipliers",
    "dyadic_convolve",
]

FLOAT_RTOL = 1e-9
_INT64_SAFE = 1 << 62


def _to_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, np.integer, Rational)):
        return Fraction(int(v)) if isinstance(v, (int, np.integer)) else Fraction(v)
    if isinstance(v, (float, np.floating)):
        return Fraction(float(v))
    raise DomainError(f"cannot represent {v!r} exactly")


def _fraction_array(values) -> np.ndarray:
    out = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        out[i] = _to_fraction(v)
    return out


def _log2_size(size: int) -> int:
    if size < 2 or size & (size - 1):
        raise DomainError(f"length {size} is not a power of two >= 2")
    return size.bit_length() - 1


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """A function constant on the rank-``N`` dyadic intervals.

    ``values[i]`` is the value on cell ``i``; ``exact`` selects rational or
    float arithmetic.
    """

    values: np.ndarray
    exact: bool = True

    def __post_init__(self):
        values = self.values
        if self.exact:
            if not (isinstance(values, np.ndarray) and values.dtype == object):
                values = _fraction_array(list(values))
            elif not all(isinstance(v, Fraction) for v in values):
                values = _fraction_array(list(values))
        else:
            values = np.asarray(values, dtype=np.float64)
        if values.ndim != 1:
            raise DomainError("values must be one-dimensional")
        _log2_size(len(values))
        if values.flags.writeable:
            values = values.copy()
            values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def resolution(self) -> int:
        return len(self.values).bit_length() - 1

    @property
    def size(self) -> int:
        return len(self.values)

    # construction helpers

    @classmethod
    def constant(cls, c, resolution: int, exact: bool = True) -> "SampledFunction":
        c = _to_fraction(c) if exact else float(c)
        return cls(np.full(1 << resolution, c, dtype=object if exact else float), exact)

    @classmethod
    def indicator(
        cls, interval: DyadicInterval, resolution: int, exact: bool = True
    ) -> "SampledFunction":
        cells = interval_cells(interval, resolution)
        vals = np.zeros(1 << resolution, dtype=np.int64)
        vals[cells.start : cells.stop] = 1
        return cls(vals, exact)

    @classmethod
    def from_callable(
        cls, func: Callable[[DyadicPoint], object], resolution: int, exact: bool = True
    ) -> "SampledFunction":
        vals = [func(DyadicPoint.from_index(i, resolution)) for i in range(1 << resolution)]
        return cls(np.array(vals, dtype=object) if exact else np.array(vals, float), exact)

    # conversions

    def to_float(self) -> "SampledFunction":
        if not self.exact:
            return self
        return SampledFunction(np.array([float(v) for v in self.values]), exact=False)

    def to_exact(self) -> "SampledFunction":
        if self.exact:
            return self
        return SampledFunction(self.values, exact=True)

    def embed(self, resolution: int) -> "SampledFunction":
        """Same function sampled on a finer grid."""
        if resolution < self.resolution:
            raise ResolutionError("cannot embed into a coarser resolution")
        return SampledFunction(
            np.repeat(self.values, 1 << (resolution - self.resolution)), self.exact
        )

    def block_average(self, rank: int) -> "SampledFunction":
        """Conditional expectation on the rank-``rank`` dyadic intervals."""
        if not 0 <= rank <= self.resolution:
            raise ResolutionError(f"rank {rank} outside 0..{self.resolution}")
        width = 1 << (self.resolution - rank)
        blocks = self.values.reshape(1 << rank, width)
        if self.exact:
            means = np.array([sum(row, Fraction(0)) / width for row in blocks], dtype=object)
        else:
            means = blocks.mean(axis=1)
        return SampledFunction(np.repeat(means, width), self.exact)

    def mean(self):
        if self.exact:
            return sum(self.values, Fraction(0)) / self.size
        return float(self.values.mean())

    def __abs__(self) -> "SampledFunction":
        return SampledFunction(np.abs(self.values), self.exact)

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, SampledFunction):
            if other.resolution != self.resolution:
                raise ResolutionError("functions live at different resolutions")
            return other.values, self.exact and other.exact
        if self.exact:
            return _to_fraction(other), True
        return float(other), False

    def _wrap(self, values, exact) -> "SampledFunction":
        if not exact and values.dtype == object:
            values = values.astype(float)
        return SampledFunction(values, exact)

    def __add__(self, other):
        vals, exact = self._coerce(other)
        return self._wrap(self._raw(exact) + vals, exact)

    __radd__ = __add__

    def __sub__(self, other):
        vals, exact = self._coerce(other)
        return self._wrap(self._raw(exact) - vals, exact)

    def __rsub__(self, other):
        vals, exact = self._coerce(other)
        return self._wrap(vals - self._raw(exact), exact)

    def __mul__(self, other):
        vals, exact = self._coerce(other)
        return self._wrap(self._raw(exact) * vals, exact)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SampledFunction):
            raise TypeError("pointwise division is not supported")
        vals, exact = self._coerce(other)
        return self._wrap(self._raw(exact) / vals, exact)

    def __neg__(self):
        return SampledFunction(-self.values, self.exact)

    def _raw(self, exact: bool) -> np.ndarray:
        if exact or not self.exact:
            return self.values
        return self.values.astype(float)

    def __eq__(self, other):
        if not isinstance(other, SampledFunction):
            return NotImplemented
        return self.size == other.size and bool(np.all(self.values == other.values))

    __hash__ = None

    def allclose(self, other: "SampledFunction", rtol: float = FLOAT_RTOL, atol: float = 1e-12) -> bool:
        a = self.to_float().values
        b = other.to_float().values
        return a.shape == b.shape and bool(np.allclose(a, b, rtol=rtol, atol=atol))

    def __repr__(self):
        mode = "exact" if self.exact else "float"
        return f"SampledFunction(N={self.resolution}, {mode})"


@dataclass(frozen=True, eq=False)
class CoefficientVector:
    system: SystemId
    coeffs: np.ndarray
    exact: bool = True

    def __post_init__(self):
        object.__setattr__(self, "system", SystemId.parse(self.system))
        coeffs = self.coeffs
        if self.exact:
            coeffs = _fraction_array(list(coeffs))
        else:
            coeffs = np.array(coeffs, dtype=np.float64)
        _log2_size(len(coeffs))
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def resolution(self) -> int:
        return len(self.coeffs).bit_length() - 1

    def __eq__(self, other):
        if not isinstance(other, CoefficientVector):
            return NotImplemented
        return (
            self.system is other.system
            and len(self.coeffs) == len(other.coeffs)
            and bool(np.all(self.coeffs == other.coeffs))
        )

    __hash__ = None


def walsh_hadamard(a: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform in natural (Hadamard) order.

    ``out[m] = sum_i a[i] * (-1)**popcount(m & i)``.  Works for int64, float64
    and object arrays.
    """
    n = len(a)
    _log2_size(n)
    out = np.array(a, copy=True)
    h = 1
    while h < n:
        out = out.reshape(-1, 2, h)
        x = out[:, 0, :]
        y = out[:, 1, :]
        out = np.stack((x + y, x - y), axis=1).reshape(n)
        h <<= 1
    return out


def _scaled_integers(values: np.ndarray) -> tuple[np.ndarray, int]:
    """Clear denominators: ``values == ints / scale``."""
    scale = math.lcm(*(v.denominator for v in values))
    ints = [v.numerator * (scale // v.denominator) for v in values]
    bound = max((abs(v) for v in ints), default=0) * len(values)
    if bound < _INT64_SAFE:
        return np.array(ints, dtype=np.int64), scale
    return np.array(ints, dtype=object), scale


def _exact_hadamard(values: np.ndarray, divisor: int) -> np.ndarray:
    ints, scale = _scaled_integers(values)
    raw = walsh_hadamard(ints)
    denom = scale * divisor
    out = np.empty(len(raw), dtype=object)
    for i, v in enumerate(raw):
        out[i] = Fraction(int(v), denom)
    return out


def forward_transform(f: SampledFunction, system=SystemId.WALSH_PALEY) -> CoefficientVector:
    """Fourier coefficients ``2**-N sum_x f(x) psi_i(x)`` for ``i < 2**N``."""
    system = SystemId.parse(system)
    N = f.resolution
    rev = _reversed_cells(N)
    if f.exact:
        natural = _exact_hadamard(f.values, 1 << N)
    else:
        natural = walsh_hadamard(f.values) / (1 << N)
    paley = natural[rev]
    if system is SystemId.WALSH_KACZMARZ:
        paley = paley[kaczmarz_permutation(N)]
    return CoefficientVector(system, paley, f.exact)


def inverse_transform(c: CoefficientVector) -> SampledFunction:
    N = c.resolution
    coeffs = c.coeffs
    if c.system is SystemId.WALSH_KACZMARZ:
        paley = np.empty_like(coeffs)
        paley[kaczmarz_permutation(N)] = coeffs
        coeffs = paley
    natural = np.empty_like(coeffs)
    natural[_reversed_cells(N)] = coeffs
    if c.exact:
        return SampledFunction(_exact_hadamard(natural, 1), exact=True)
    return SampledFunction(walsh_hadamard(natural), exact=False)


def apply_multipliers(f: SampledFunction, multipliers, system=SystemId.WALSH_PALEY) -> SampledFunction:
    """``sum_i m_i * fhat(i) * psi_i`` for the given multiplier sequence.

    Indices beyond ``len(multipliers)`` get multiplier zero.
    """
    system = SystemId.parse(system)
    size = f.size
    if len(multipliers) > size:
        raise ResolutionError(
            f"{len(multipliers)} multipliers need resolution > {f.resolution}"
        )
    coeffs = forward_transform(f, system).coeffs
    k = len(multipliers)
    if f.exact:
        scaled = np.full(size, Fraction(0), dtype=object)
        for i in range(k):
            m = multipliers[i]
            if m and coeffs[i]:
                scaled[i] = coeffs[i] * m
    else:
        scaled = np.zeros(size)
        scaled[:k] = coeffs[:k] * np.asarray(multipliers, dtype=float)
    return inverse_transform(CoefficientVector(system, scaled, f.exact))


def partial_sum(f: SampledFunction, M: int, system=SystemId.WALSH_PALEY) -> SampledFunction:
    """``S_M f = sum_{i<M} fhat(i) psi_i``."""
    if M < 0:
        raise DomainError(f"negative partial-sum index {M}")
    if M > f.size:
        raise ResolutionError(
            f"S_{M} needs coefficients beyond 2**{f.resolution}; raise the resolution"
        )
    one = Fraction(1) if f.exact else 1.0
    return apply_multipliers(f, [one] * M, system)


def dyadic_convolve(f: SampledFunction, g: SampledFunction) -> SampledFunction:
    """``(f * g)(x) = integral f(x + t) g(t) dt`` with ``+`` the group operation."""
    if f.resolution != g.resolution:
        raise ResolutionError("functions live at different resolutions")
    exact = f.exact and g.exact
    if not exact:
        f, g = f.to_float(), g.to_float()
    fc = forward_transform(f).coeffs
    gc = forward_transform(g).coeffs
    return inverse_transform(CoefficientVector(SystemId.WALSH_PALEY, fc * gc, exact))
