"""Summability means of Walsh / Walsh-Kaczmarz series and maximal operators.

Every mean here is a finite linear combination ``sum_k c_k S_k f`` of partial
sums, hence a Fourier multiplier ``sum_i m_i fhat(i) psi_i`` with
``m_i = sum_{k > i} c_k``.  :func:`apply_mean` uses the multiplier form;
:func:`apply_mean_partial_sums` evaluates the defining double sum literally
and :func:`apply_mean_convolution` convolves with the kernel.  All three
agree exactly in rational arithmetic.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exceptions import DegenerateWeightsError, DomainError, ModeError, ResolutionError
from .kernels import Kernel, fejer_multipliers, kernel_from_multipliers, norlund_multipliers
from .systems import SystemId
from .transforms import SampledFunction, apply_multipliers, dyadic_convolve, partial_sum
from .weights import WeightSequence, parse_preset, parse_rational, preset

__all__ = [
    "MEAN_KINDS",
    "MeanId",
    "parse_mean",
    "harmonic_number",
    "mean_multipliers",
    "partial_sum_weights",
    "mean_kernel",
    "apply_mean",
    "apply_mean_partial_sums",
    "apply_mean_convolution",
    "maximal_operator",
    "martingale_maximal",
]

EULER_GAMMA = 0.5772156649015329

MEAN_KINDS = ("norlund", "fejer", "fejer_printed", "cesaro", "riesz", "norlund_log")


@dataclass(frozen=True)
class MeanId:
    """Which mean, in which system.

    ``fejer`` is the Norlund form ``(1/n) sum_{k=1}^n S_k``; ``fejer_printed``
    is ``(1/n) sum_{k=0}^{n-1} S_k``.  ``riesz`` sums ``S_k/k`` from ``k = 1``.
    """

    kind: str
    system: SystemId = SystemId.WALSH_KACZMARZ
    weights: WeightSequence | None = None
    alpha: Fraction | None = None

    def __post_init__(self):
        if self.kind not in MEAN_KINDS:
            raise DomainError(f"unknown mean {self.kind!r}")
        object.__setattr__(self, "system", SystemId.parse(self.system))
        if self.kind == "norlund" and self.weights is None:
            raise DomainError("norlund mean needs weights")
        if self.kind == "cesaro":
            if self.alpha is None:
                raise DomainError("cesaro mean needs alpha")
            alpha = parse_rational(self.alpha)
            object.__setattr__(self, "alpha", alpha)
            object.__setattr__(self, "weights", preset("cesaro", alpha))

    @classmethod
    def norlund(cls, q: WeightSequence, system=SystemId.WALSH_KACZMARZ) -> "MeanId":
        return cls("norlund", system, weights=q)

    @classmethod
    def fejer(cls, system=SystemId.WALSH_KACZMARZ) -> "MeanId":
        return cls("fejer", system)

    @classmethod
    def cesaro(cls, alpha, system=SystemId.WALSH_KACZMARZ) -> "MeanId":
        return cls("cesaro", system, alpha=parse_rational(alpha))

    @property
    def min_index(self) -> int:
        return 2 if self.kind in ("riesz", "norlund_log") else 1

    @property
    def exact_capable(self) -> bool:
        return self.weights is None or self.weights.rational

    @property
    def label(self) -> str:
        if self.kind == "norlund":
            return f"norlund[{self.weights.key}]"
        if self.kind == "cesaro":
            return f"cesaro[{self.alpha}]"
        return self.kind

    def _key(self):
        return (self.kind, self.system, self.weights.key if self.weights else None, self.alpha)

    def __hash__(self):
        return hash(self._key())

    def __eq__(self, other):
        if not isinstance(other, MeanId):
            return NotImplemented
        return self._key() == other._key()


def parse_mean(spec: str, system=SystemId.WALSH_KACZMARZ) -> MeanId:
    """``fejer``, ``fejer_printed``, ``riesz``, ``norlund_log``, ``cesaro:1/2``,
    ``norlund:<weight preset>``."""
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    if kind == "cesaro":
        return MeanId.cesaro(rest, system)
    if kind == "norlund":
        return MeanId.norlund(parse_preset(rest or "constant"), system)
    if rest:
        raise DomainError(f"mean {kind} takes no parameters")
    return MeanId(kind, system)


def harmonic_number(n: int, exact: bool = True):
    """``1 + 1/2 + ... + 1/n`` (zero for ``n = 0``)."""
    if exact:
        return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))
    if n <= 1 << 16:
        return math.fsum(1.0 / k for k in range(1, n + 1))
    # Euler-Maclaurin; the truncation error is below 1e-20 here
    inv = 1.0 / n
    return math.log(n) + EULER_GAMMA + inv / 2 - inv**2 / 12 + inv**4 / 120


def _check(mean: MeanId, n: int, size: int) -> None:
    if n < mean.min_index:
        raise DomainError(f"{mean.kind} needs n >= {mean.min_index}")
    if n > size:
        raise ResolutionError(f"n = {n} exceeds 2**N = {size}")


def mean_multipliers(mean: MeanId, n: int, exact: bool = True) -> list:
    """Coefficient of ``psi_i`` (``i = 0, 1, ...``) in the ``n``-th mean's kernel."""
    if exact and not mean.exact_capable:
        raise ModeError(f"{mean.label} has irrational weights; use float mode")
    kind = mean.kind
    if kind == "fejer":
        return fejer_multipliers(n, exact)
    if kind in ("norlund", "cesaro"):
        return norlund_multipliers(mean.weights, n, exact)
    if kind == "fejer_printed":
        if exact:
            return [Fraction(n - 1 - i, n) for i in range(n - 1)]
        return [(n - 1 - i) / n for i in range(n - 1)]
    H = [harmonic_number(0, exact)]
    for k in range(1, n):
        H.append(H[-1] + (Fraction(1, k) if exact else 1.0 / k))
    l_n = H[n - 1]
    if not l_n:
        raise DegenerateWeightsError(f"l_{n} = 0")
    if kind == "riesz":
        return [(l_n - H[i]) / l_n for i in range(n - 1)]
    # norlund_log
    return [H[n - 1 - i] / l_n for i in range(n - 1)]


def partial_sum_weights(mean: MeanId, n: int, exact: bool = True) -> list[tuple[int, object]]:
    """``(k, c_k)`` with the mean equal to ``sum_k c_k S_k f``, as defined."""
    one = Fraction(1) if exact else 1.0
    kind = mean.kind
    if kind == "fejer":
        return [(k, one / n) for k in range(1, n + 1)]
    if kind == "fejer_printed":
        return [(k, one / n) for k in range(0, n)]
    if kind in ("norlund", "cesaro"):
        q = mean.weights
        vals = q.values(n) if exact else list(q.q_float(n))
        Qn = sum(vals, Fraction(0) if exact else 0.0)
        return [(k, vals[n - k] / Qn) for k in range(1, n + 1)]
    l_n = harmonic_number(n - 1, exact)
    if kind == "riesz":
        return [(k, one / (k * l_n)) for k in range(1, n)]
    return [(k, one / ((n - k) * l_n)) for k in range(1, n)]


def _mode_for(mean: MeanId, f: SampledFunction) -> bool:
    if f.exact and not mean.exact_capable:
        raise ModeError(f"{mean.label} needs float input; call f.to_float()")
    return f.exact


def apply_mean(mean: MeanId, n: int, f: SampledFunction) -> SampledFunction:
    _check(mean, n, f.size)
    exact = _mode_for(mean, f)
    return apply_multipliers(f, mean_multipliers(mean, n, exact), mean.system)


def apply_mean_partial_sums(mean: MeanId, n: int, f: SampledFunction) -> SampledFunction:
    """Literal evaluation of ``sum_k c_k S_k f``; slow, used as an oracle."""
    _check(mean, n, f.size)
    exact = _mode_for(mean, f)
    total = SampledFunction.constant(0, f.resolution, exact)
    for k, c in partial_sum_weights(mean, n, exact):
        if c:
            total = total + partial_sum(f, k, mean.system) * c
    return total


def mean_kernel(mean: MeanId, n: int, resolution: int, exact: bool = True) -> Kernel:
    if n < mean.min_index:
        raise DomainError(f"{mean.kind} needs n >= {mean.min_index}")
    data = kernel_from_multipliers(mean_multipliers(mean, n, exact), mean.system, resolution, exact)
    return Kernel((mean.label, n), mean.system, data)


def apply_mean_convolution(mean: MeanId, n: int, f: SampledFunction) -> SampledFunction:
    """``f * kernel``: the mean written as a dyadic convolution."""
    _check(mean, n, f.size)
    exact = _mode_for(mean, f)
    return dyadic_convolve(f, mean_kernel(mean, n, f.resolution, exact).data)


def maximal_operator(
    mean: MeanId, f: SampledFunction, n_max: int, threads: int = 1
) -> SampledFunction:
    """Truncated maximal operator ``max_{n <= n_max} |mean_n f|`` pointwise."""
    _check(mean, max(n_max, mean.min_index), f.size)
    ns = range(mean.min_index, n_max + 1)
    if n_max < mean.min_index:
        return SampledFunction.constant(0, f.resolution, f.exact)

    def one(n):
        return np.abs(apply_mean(mean, n, f).values)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            layers = list(pool.map(one, ns))
    else:
        layers = [one(n) for n in ns]
    best = layers[0]
    for layer in layers[1:]:
        best = np.maximum(best, layer)
    return SampledFunction(best, f.exact)


def martingale_maximal(f: SampledFunction) -> SampledFunction:
    """``f*(x) = max_{k <= N} |average of f over I_k(x)|``."""
    best = np.abs(f.values)
    for k in range(f.resolution):
        best = np.maximum(best, np.abs(f.block_average(k).values))
    return SampledFunction(best, f.exact)
