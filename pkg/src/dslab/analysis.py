"""L_p, weak-L_p and martingale Hardy norms; p-atoms.

In exact mode norms come back as a Fraction when the value is rational and
as an exact sympy number otherwise (``||D_8||_{1/2} = 1/8`` is rational,
``||D_2||_{2/5} = 2**(-3/2)`` is not).  Float mode returns floats.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy

from .dyadic import DyadicInterval, interval_cells
from .exact import rational_power, to_exact
from .exceptions import DomainError, ModeError
from .means import martingale_maximal
from .transforms import SampledFunction
from .weights import parse_rational

__all__ = [
    "lp_norm",
    "weak_lp_norm",
    "hardy_norm",
    "level_distribution",
    "PAtom",
    "make_atom",
    "validate_atom",
]


def _exponent(p, exact: bool):
    if isinstance(p, float):
        if exact:
            raise ModeError("exact norms need a rational exponent, e.g. '1/2'")
        value = p
    else:
        value = parse_rational(p)
    if value <= 0:
        raise DomainError(f"p must be positive, got {p}")
    return value if exact else float(value)


def level_distribution(f: SampledFunction) -> list[tuple[object, Fraction]]:
    """Distinct nonzero levels of ``|f|``, descending, with ``mu(|f| >= level)``."""
    counts = Counter(abs(v) for v in f.values)
    counts.pop(0, None)
    counts.pop(Fraction(0), None)
    out = []
    tail = 0
    for level in sorted(counts, reverse=True):
        tail += counts[level]
        out.append((level, Fraction(tail, f.size)))
    return out


def lp_norm(f: SampledFunction, p):
    """``(integral |f|^p)^(1/p)``."""
    p = _exponent(p, f.exact)
    if not f.exact:
        return float(np.mean(np.abs(f.values) ** p) ** (1.0 / p))
    counts = Counter(abs(v) for v in f.values)
    counts.pop(Fraction(0), None)
    if not counts:
        return Fraction(0)
    if len(counts) == 1:
        ((level, count),) = counts.items()
        return _times(level, rational_power(Fraction(count, f.size), 1 / p))
    powered = [(rational_power(level, p), Fraction(c, f.size)) for level, c in counts.items()]
    if all(isinstance(v, Fraction) for v, _ in powered):
        return rational_power(sum(v * m for v, m in powered), 1 / p)
    total = sympy.Add(*(_sym(v) * _sym(m) for v, m in powered))
    return to_exact(total ** sympy.Rational(1 / p))


def _sym(v):
    v = to_exact(v)
    if isinstance(v, Fraction):
        return sympy.Rational(v.numerator, v.denominator)
    return v


def _times(a, b):
    a, b = to_exact(a), to_exact(b)
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a * b
    return to_exact(_sym(a) * _sym(b))


def weak_lp_norm(f: SampledFunction, p):
    """``sup_lambda lambda * mu(|f| > lambda)^(1/p)``.

    ``|f|`` takes finitely many values, so the supremum is the maximum over
    levels ``v`` of ``v * mu(|f| >= v)^(1/p)`` (take ``lambda`` just below ``v``).
    """
    p = _exponent(p, f.exact)
    if not f.exact:
        a = np.sort(np.abs(f.values))[::-1]
        tail = np.arange(1, len(a) + 1) / len(a)
        mask = a > 0
        if not mask.any():
            return 0.0
        return float(np.max(a[mask] * tail[mask] ** (1.0 / p)))
    levels = level_distribution(f)
    if not levels:
        return Fraction(0)
    # compare v * m^(R/P) through the P-th power v^P * m^R, with p = P/R
    P, R = p.numerator, p.denominator
    level, measure = max(levels, key=lambda vm: vm[0] ** P * vm[1] ** R)
    return _times(level, rational_power(measure, 1 / p))


def hardy_norm(f: SampledFunction, p):
    """``||f*||_p`` for the finite martingale ``(S_{2^k} f)_k``."""
    return lp_norm(martingale_maximal(f), p)


@dataclass(frozen=True)
class PAtom:
    p: Fraction
    interval: DyadicInterval
    data: SampledFunction


def _amplitude(p: Fraction, interval: DyadicInterval):
    # mu(I)^(-1/p) = 2^(rank/p)
    return rational_power(Fraction(1 << interval.rank), 1 / p)


def validate_atom(p, interval: DyadicInterval, data: SampledFunction) -> PAtom:
    """Check the three atom conditions; raise :class:`DomainError` on failure."""
    p = parse_rational(p)
    if not 0 < p <= 1:
        raise DomainError("atoms need 0 < p <= 1")
    cells = interval_cells(interval, data.resolution)
    values = data.values
    outside = np.concatenate((values[: cells.start], values[cells.stop :]))
    if np.any(outside != 0):
        raise DomainError("atom is not supported in its interval")
    inside = values[cells.start : cells.stop]
    if data.exact:
        if sum(inside, Fraction(0)) != 0:
            raise DomainError("atom does not have mean zero")
        bound = _amplitude(p, interval)
        top = max(abs(v) for v in inside)
        # |a| <= 2^(rank/p)  <=>  |a|^P <= 2^(rank R) with p = P/R
        if top ** p.numerator > Fraction(2) ** (interval.rank * p.denominator):
            raise DomainError(f"sup |a| = {top} exceeds mu(I)^(-1/p) = {bound}")
    else:
        scale = max(1.0, float(np.max(np.abs(inside))))
        if abs(float(np.sum(inside))) > 1e-9 * scale * len(inside):
            raise DomainError("atom does not have mean zero")
        if float(np.max(np.abs(inside))) > float(2.0 ** (interval.rank / float(p))) * (1 + 1e-12):
            raise DomainError("atom exceeds mu(I)^(-1/p)")
    return PAtom(p, interval, data)


def make_atom(p, interval: DyadicInterval, resolution: int, profile: str = "haar", exact: bool = True) -> PAtom:
    """Build a p-atom on ``interval``.

    ``haar``: ``+mu(I)^(-1/p)`` on the left child of ``I``, minus on the right.
    """
    p = parse_rational(p)
    if profile != "haar":
        raise DomainError(f"unknown atom profile {profile!r}")
    if interval.rank >= resolution:
        raise DomainError("a haar atom needs rank < resolution to split the interval")
    amplitude = _amplitude(p, interval)
    if exact and not isinstance(amplitude, Fraction):
        raise ModeError(f"amplitude {amplitude} is irrational; use exact=False")
    amp = amplitude if exact else float(amplitude)
    left, right = interval.children()
    values = np.zeros(1 << resolution, dtype=object if exact else float)
    if exact:
        values[:] = Fraction(0)
    lc, rc = interval_cells(left, resolution), interval_cells(right, resolution)
    values[lc.start : lc.stop] = amp
    values[rc.start : rc.stop] = -amp
    return validate_atom(p, interval, SampledFunction(values, exact))
