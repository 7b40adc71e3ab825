"""Experiments: kernel identities, the Norlund kernel majorant and blow-up ratios.

Each function returns an :class:`~dslab.report.ExperimentReport` whose rows
are recomputable from the experiment parameters alone.  ``threads`` fans the
grid out over a thread pool; rows are assembled in grid order, so output does
not depend on the thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import reduce

import numpy as np

from .analysis import hardy_norm, lp_norm, weak_lp_norm
from .dyadic import DyadicInterval, DyadicPoint
from .exact import exact_equal, exact_less, rational_power, to_exact
from .exceptions import DomainError, ModeError, ResolutionError
from .kernels import dirichlet_kernel, fejer_kernel, norlund_kernel
from .means import MeanId, apply_mean, harmonic_number
from .report import ExperimentReport
from .systems import SystemId, system_values, walsh_eval
from .transforms import FLOAT_RTOL, SampledFunction
from .weights import WeightSequence, check_condition, parse_rational, preset

__all__ = [
    "LEMMA2_VARIANTS",
    "verify_lemma2",
    "verify_lemma3",
    "counterexample",
    "resolve_mode",
    "blowup_theorem2",
    "blowup_theorem3",
    "norlund_log_blowup",
    "convergence_experiment",
    "corollary_presets_suite",
    "standard_test_function",
]

_W = SystemId.WALSH_PALEY
KAPPA = SystemId.WALSH_KACZMARZ


def _map(fn, items, threads: int):
    items = list(items)
    if threads and threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# kernel decomposition

#: (walsh factor on the difference sum, last index of the difference sum)
LEMMA2_VARIANTS = {
    "proof": ("2^m-1", "2^m-2"),
    "printed": ("2^(m-1)", "2^m-1"),
    "printed_factor": ("2^(m-1)", "2^m-2"),
    "printed_bound": ("2^m-1", "2^m-1"),
}


def _variant_params(variant: str, m: int) -> tuple[int, int]:
    factor, bound = LEMMA2_VARIANTS[variant]
    w_index = (1 << m) - 1 if factor == "2^m-1" else 1 << (m - 1)
    last = (1 << m) - 2 if bound == "2^m-2" else (1 << m) - 1
    return w_index, last


def _brute_dirichlet(kmax: int, resolution: int) -> list[np.ndarray]:
    """``D_0 .. D_kmax`` (Paley) summed from pointwise ``walsh_eval``."""
    points = [DyadicPoint.from_index(i, resolution) for i in range(1 << resolution)]
    out = [np.zeros(1 << resolution, dtype=object)]
    for k in range(kmax):
        w = np.array([walsh_eval(k, x) for x in points], dtype=object)
        out.append(out[-1] + w)
    return out


def _integer_scaled(seq: list[Fraction]) -> list[int]:
    scale = reduce(math.lcm, (c.denominator for c in seq), 1)
    return [int(c * scale) for c in seq]


def _int_array(values) -> np.ndarray:
    return np.array([int(v) for v in values], dtype=object)


def _lemma2_blocks(m: int, resolution: int):
    """Kernel-module pieces shared by every weight component: D_k, l K_l, Walsh factors."""
    M = 1 << m
    D = [_int_array(dirichlet_kernel(k, _W, resolution).values) for k in range(M + 1)]
    lK = [np.zeros(1 << resolution, dtype=object)]
    for l in range(1, M):
        lK.append(_int_array(fejer_kernel(l, _W, resolution).values * l))
    w = {j: system_values(j, resolution, _W).astype(object) for j in {M - 1, M >> 1, M}}
    return D, lK, w


def _lemma2_rows(a: list[int], m: int, resolution: int, oracle_D, blocks, variants):
    """Per ``n``: which variants match the oracle, and how many distinct right sides exist."""
    M = 1 << m
    size = 1 << resolution
    D, lK, w = blocks
    out = []
    for n in range(M + 1, 2 * M + 1):
        lhs = _dot([a[n - k] for k in range(1, n + 1)], oracle_D[1 : n + 1], size)
        Qn = sum(a[:n])
        head = Qn * D[M]
        tail = w[M] * _dot([a[n - M - k] for k in range(1, n - M + 1)], D[1 : n - M + 1], size)
        boundary = w[M - 1] * a[n - 1] * lK[M - 1]
        matches = {}
        values = {}
        for variant in variants:
            w_index, last = _variant_params(variant, m)
            diffs = [a[n - M + l] - a[n - M + l + 1] for l in range(1, last + 1)]
            middle = w[w_index] * _dot(diffs, lK[1 : last + 1], size)
            rhs = head - middle - boundary + tail
            values[variant] = rhs
            matches[variant] = bool(np.all(rhs == lhs))
        classes = []
        for variant in variants:
            for cls in classes:
                if np.all(values[cls[0]] == values[variant]):
                    cls.append(variant)
                    break
            else:
                classes.append([variant])
        matching_classes = sum(1 for cls in classes if matches[cls[0]])
        out.append((n, matches, len(classes), matching_classes))
    return out


def _dot(coeffs: list[int], arrays, size: int) -> np.ndarray:
    total = np.zeros(size, dtype=object)
    for c, arr in zip(coeffs, arrays):
        if c:
            total = total + c * arr
    return total


def verify_lemma2(q: WeightSequence, m: int, resolution: int | None = None, threads: int = 1) -> ExperimentReport:
    """Check the block decomposition of ``Q_n F_n^w`` for ``2^m < n <= 2^(m+1)``.

    The left side is summed directly from pointwise Walsh values; the right
    side is assembled from the kernel module in four variants (see
    :data:`LEMMA2_VARIANTS`).  Radical weights are split into rational
    component sequences: the identity is linear in ``q``, so it holds iff it
    holds for every component.  Verdict: pass iff the ``proof`` variant
    matches at every ``n`` and every component.
    """
    if not q.exact:
        raise ModeError(f"{q.name} has float weights; the identity check needs exact weights")
    if m < 1:
        raise DomainError("m must be positive")
    if resolution is None:
        resolution = m + 2
    if m + 1 > resolution:
        raise ResolutionError(f"m = {m} needs resolution >= {m + 1}")
    M = 1 << m
    components = q.components(2 * M + 1)
    variants = list(LEMMA2_VARIANTS)
    oracle_D = _brute_dirichlet(2 * M, resolution)
    blocks = _lemma2_blocks(m, resolution)

    def run(item):
        radicand, seq = item
        return radicand, _lemma2_rows(_integer_scaled(seq), m, resolution, oracle_D, blocks, variants)

    per_component = _map(run, sorted(components.items()), threads)
    rows = []
    matched = {v: True for v in variants}
    unique = True
    for i, n in enumerate(range(M + 1, 2 * M + 1)):
        flags = {v: all(comp[i][1][v] for _, comp in per_component) for v in variants}
        n_classes = max(comp[i][2] for _, comp in per_component)
        n_match = max(comp[i][3] for _, comp in per_component)
        unique = unique and n_match == 1
        for v in variants:
            matched[v] = matched[v] and flags[v]
        rows.append((n, *(flags[v] for v in variants), n_classes, n_match))
    consistent = [v for v in variants if matched[v]]
    verdict = "pass" if matched["proof"] else "fail"
    return ExperimentReport(
        "lemma2",
        {"weights": q.key, "m": m, "resolution": resolution},
        ["n", *variants, "distinct_variants", "matching_distinct"],
        rows,
        verdict,
        {
            "matching_variants": consistent,
            "unique_match": unique,
            "components": len(components),
        },
    )


# kernel majorant


def verify_lemma3(
    q: WeightSequence,
    alpha,
    n_max: int,
    resolution: int,
    threads: int = 1,
    tolerance: float = 0.01,
) -> ExperimentReport:
    """Empirical constant in ``|F_n^w| <= c/n^alpha sum_j 2^(j alpha) K_(2^j)^w``.

    ``ratio_n`` is the largest cellwise ratio of the two sides; cells where
    the majorant vanishes are skipped and counted.  Pass iff the running
    maximum grows by less than ``tolerance`` (relative) over the top half of
    ``1..n_max``.  Failed preconditions make the verdict inconclusive.
    """
    alpha = parse_rational(alpha)
    a = float(alpha)
    if n_max > 1 << resolution:
        raise ResolutionError(f"n_max = {n_max} exceeds 2**{resolution}")
    if n_max < 2:
        raise DomainError("n_max must be at least 2")
    problems = []
    if not 0 < alpha < 1:
        problems.append("alpha outside (0, 1)")
    if not q.non_increasing:
        problems.append("weights not non-increasing")
    check_max = max(8, min(n_max, 1 << 12))
    for cond in ("no1_first", "no1_second"):
        report = check_condition(q, cond, check_max, alpha)
        if not report.holds:
            problems.append(f"{cond}: {report.label}")

    jmax = n_max.bit_length() - 1
    fejer = [np.asarray(fejer_kernel(1 << j, _W, resolution, exact=False).values, dtype=float)
             for j in range(jmax + 1)]
    partial = [np.zeros(1 << resolution)]
    for j in range(jmax + 1):
        partial.append(partial[-1] + 2.0 ** (j * a) * fejer[j])

    def one(n):
        F = np.abs(norlund_kernel(n, q, _W, resolution, exact=False).values)
        majorant = partial[n.bit_length()] / n**a
        ok = majorant > 0
        zero = int(np.count_nonzero(~ok))
        ratio = float(np.max(F[ok] / majorant[ok])) if ok.any() else math.inf
        return ratio, zero

    results = _map(one, range(1, n_max + 1), threads)
    rows = []
    running = 0.0
    zeros = 0
    for n, (ratio, zero) in zip(range(1, n_max + 1), results):
        running = max(running, ratio)
        zeros += zero
        rows.append((n, ratio, running, zero))
    half = rows[n_max // 2 - 1][2] if n_max >= 2 else rows[0][2]
    change = (running - half) / half
    stable = change < tolerance and zeros == 0
    if problems:
        verdict = "inconclusive"
    else:
        verdict = "pass" if stable else "fail"
    return ExperimentReport(
        "lemma3",
        {"weights": q.key, "alpha": alpha, "n_max": n_max, "resolution": resolution},
        ["n", "ratio", "running_max", "zero_cells"],
        rows,
        verdict,
        {
            "c_emp": running,
            "running_max_at_half": half,
            "relative_change_top_half": change,
            "zero_cells": zeros,
            "preconditions": problems or "ok",
        },
        float_columns=frozenset({"ratio", "running_max"}),
    )


# Counterexamples


def counterexample(n: int, resolution: int | None = None, exact: bool = True) -> SampledFunction:
    """``f_n = D_(2^(n+1))^kappa - D_(2^n)^kappa``, by default at resolution ``n + 2``."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    N = n + 2 if resolution is None else resolution
    hi = dirichlet_kernel(1 << (n + 1), KAPPA, N, exact).data
    lo = dirichlet_kernel(1 << n, KAPPA, N, exact).data
    return hi - lo


def _check_p(p, low, high, what):
    p = parse_rational(p)
    if not low < p < high:
        raise DomainError(f"p must lie in ({low}, {high}) for {what}, got {p}")
    return p


def resolve_mode(q: WeightSequence, mode: str = "exact") -> bool:
    """Whether the pipeline runs exactly for ``q`` under ``mode``.

    ``exact`` rejects float-only weights; radical weights fall back to float
    because the means need rational multipliers.
    """
    if mode == "float":
        return False
    if mode != "exact":
        raise DomainError(f"mode must be 'exact' or 'float', got {mode!r}")
    if not q.exact:
        raise ModeError(f"{q.name} is float-only; use float mode")
    return q.rational


def _ratio_row(q: WeightSequence, p: Fraction, n: int, exact: bool):
    """Pipeline and closed-form values for one ``n``."""
    f = counterexample(n, exact=exact)
    index = (1 << n) + 1
    t = apply_mean(MeanId.norlund(q, KAPPA), index, f)
    weak = weak_lp_norm(t, p if exact else float(p))
    hardy = hardy_norm(f, p if exact else float(p))
    levels = {abs(v) for v in t.values}
    if exact:
        closed_weak = q.q(0) / q.Q(index)
        closed_hardy = rational_power(Fraction(2), n * (1 - 1 / p))
        closed_ratio = _quotient(closed_weak, closed_hardy)
        ratio = _quotient(weak, hardy)
        constant = levels == {closed_weak}
        agree = (
            exact_equal(weak, closed_weak)
            and exact_equal(hardy, closed_hardy)
            and exact_equal(ratio, closed_ratio)
        )
    else:
        qf = q.Q_float(index)
        closed_weak = float(q.q_float(1)[0] / qf[index])
        closed_hardy = 2.0 ** (n * (1 - 1 / float(p)))
        closed_ratio = closed_weak / closed_hardy
        ratio = weak / hardy
        constant = bool(max(levels) - min(levels) <= FLOAT_RTOL * closed_weak)
        agree = all(
            math.isclose(x, y, rel_tol=FLOAT_RTOL)
            for x, y in ((weak, closed_weak), (hardy, closed_hardy), (ratio, closed_ratio))
        )
    return (n, weak, hardy, ratio, closed_ratio, constant, agree)


def _sym(v):
    import sympy

    v = to_exact(v)
    if isinstance(v, Fraction):
        return sympy.Rational(v.numerator, v.denominator)
    return v


def _quotient(a, b):
    a, b = to_exact(a), to_exact(b)
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a / b
    return to_exact(_sym(a) / _sym(b))


def _strictly_increasing(values) -> bool:
    for x, y in zip(values[:-1], values[1:]):
        if isinstance(x, float) or isinstance(y, float):
            if not float(x) < float(y):
                return False
        elif not exact_less(x, y):
            return False
    return True


def _unbounded_growth(values) -> bool:
    """Log-increments in the second half stay at least half those of the first."""
    logs = np.log([float(v) for v in values])
    d = np.diff(logs)
    if len(d) < 2 or np.any(d <= 0):
        return False
    h = len(d) // 2
    return float(np.mean(d[h:])) >= 0.5 * float(np.mean(d[:h]))


_BLOWUP_COLUMNS = ["n", "weak_norm", "hardy_norm", "ratio", "closed_ratio", "constant_modulus", "agree"]


def _blowup_rows(q, p, n_list, threads, exact):
    n_list = sorted(set(int(n) for n in n_list))
    if not n_list or n_list[0] < 1:
        raise DomainError("n_list must hold positive integers")
    return _map(lambda n: _ratio_row(q, p, n, exact), n_list, threads)


def blowup_theorem2(q: WeightSequence, p, n_list, threads: int = 1, mode: str = "exact") -> ExperimentReport:
    """Blow-up ratio ``||t_(2^n+1) f_n||_(p,inf) / ||f_n||_(H_p)`` for ``0 < p < 1/2``.

    Computed through the full pipeline (kernel, mean, weak norm, Hardy norm)
    and by the closed form ``q_0 2^(n(1/p-1)) / Q_(2^n+1)``; both must agree
    (exactly for rational weights).  Pass iff the ratio strictly increases.
    """
    p = _check_p(p, 0, Fraction(1, 2), "blowup_theorem2")
    exact = resolve_mode(q, mode)
    rows = _blowup_rows(q, p, n_list, threads, exact)
    ratios = [r[3] for r in rows]
    ok = all(r[5] and r[6] for r in rows) and _strictly_increasing(ratios)
    hypotheses = {
        "non_increasing": q.non_increasing,
        "non_decreasing": q.non_decreasing,
        "cond0": check_condition(q, "cond0", 1 << max(3, max(r[0] for r in rows) + 1)).label,
    }
    return ExperimentReport(
        "blowup2",
        {"weights": q.key, "p": p, "n": [r[0] for r in rows]},
        _BLOWUP_COLUMNS,
        rows,
        "pass" if ok else "fail",
        {"hypotheses": hypotheses, "last_ratio": ratios[-1]},
        float_columns=frozenset() if exact else frozenset(_BLOWUP_COLUMNS[1:5]),
    )


def blowup_theorem3(
    q: WeightSequence, alpha, p, n_list, part: str = "part_b", threads: int = 1, mode: str = "exact"
) -> ExperimentReport:
    """Blow-up ratios for alpha-type weights; ``part_c`` fixes ``p = 1/(1+alpha)``.

    Both parts reduce to ``q_0 2^(n(1/p-1)) / Q_(2^n+1)`` (at the endpoint
    ``1/p - 1 = alpha``).  Pass iff the ratio increases strictly and its
    log-increments do not fade (no sign of saturation).  A failed weight
    condition (``nom3`` / ``nom2``) makes the verdict inconclusive.
    """
    alpha = parse_rational(alpha)
    if not 0 < alpha <= 1:
        raise DomainError("alpha must lie in (0, 1]")
    endpoint = 1 / (1 + alpha)
    if part == "part_b":
        p = _check_p(p, 0, endpoint, "blowup_theorem3 part_b")
        condition = "nom3"
    elif part == "part_c":
        if p is not None and parse_rational(p) != endpoint:
            raise DomainError(f"part_c uses p = 1/(1+alpha) = {endpoint}")
        p = endpoint
        condition = "nom2"
    else:
        raise DomainError(f"unknown part {part!r}")
    exact = resolve_mode(q, mode)
    rows = _blowup_rows(q, p, n_list, threads, exact)
    ratios = [r[3] for r in rows]
    cond = check_condition(q, condition, 1 << max(3, max(r[0] for r in rows) + 1), alpha)
    ok = all(r[5] and r[6] for r in rows) and _strictly_increasing(ratios) and _unbounded_growth(ratios)
    if not ok:
        verdict = "fail"
    elif not cond.holds:
        verdict = "inconclusive"
    else:
        verdict = "pass"
    return ExperimentReport(
        f"blowup3_{part}",
        {"weights": q.key, "alpha": alpha, "p": p, "n": [r[0] for r in rows]},
        _BLOWUP_COLUMNS,
        rows,
        verdict,
        {condition: cond.label, "last_ratio": ratios[-1]},
        float_columns=frozenset() if exact else frozenset(_BLOWUP_COLUMNS[1:5]),
    )


def norlund_log_blowup(p, n_list, pipeline_max: int = 8, threads: int = 1) -> ExperimentReport:
    """Blow-up of the Norlund logarithmic means ``L_n`` at index ``2^n + 2``.

    ``L_(2^n+1) f_n`` vanishes identically (its only partial sum in range is
    ``S_(2^n+1)`` with weight ``1/(n-k) = 1/0``, excluded), so the first
    nonzero mean is at ``2^n + 2`` where ``|L f_n| = 1/l_(2^n+2)``.  The ratio
    ``2^(n(1/p-1)) / l_(2^n+2)`` dips before it grows, so the verdict asks
    for eventual growth: strictly increasing over the second half of the grid
    and a last value above the first.  Rows with ``n <= pipeline_max`` are
    also run through the full pipeline (float mode).
    """
    p = _check_p(p, 0, 1, "norlund_log")
    pf = float(p)
    n_list = sorted(set(int(n) for n in n_list))
    mean = MeanId("norlund_log", KAPPA)

    def one(n):
        index = (1 << n) + 2
        l_n = harmonic_number(index - 1, exact=False)
        closed_weak = 1.0 / l_n
        closed = 2.0 ** (n * (1 / pf - 1)) * closed_weak
        if n > pipeline_max:
            return (n, closed, "", "")
        f = counterexample(n, resolution=n + 2, exact=False)
        t = apply_mean(mean, index, f)
        ratio = weak_lp_norm(t, pf) / hardy_norm(f, pf)
        return (n, closed, ratio, math.isclose(ratio, closed, rel_tol=FLOAT_RTOL))

    rows = _map(one, n_list, threads)
    closed = [r[1] for r in rows]
    tail = closed[len(closed) // 2 :]
    ok = (
        all(r[3] in ("", True) for r in rows)
        and _strictly_increasing(tail)
        and closed[-1] > closed[0]
    )
    return ExperimentReport(
        "norlund_log_blowup",
        {"p": p, "n": n_list},
        ["n", "closed_ratio", "pipeline_ratio", "agree"],
        rows,
        "pass" if ok else "fail",
        {"min_ratio_at": n_list[int(np.argmin(closed))], "last_ratio": closed[-1]},
        float_columns=frozenset({"closed_ratio", "pipeline_ratio"}),
    )


# Convergence


def convergence_experiment(mean: MeanId, f: SampledFunction, n_list, threads: int = 1, factor: float = 10.0) -> ExperimentReport:
    """L1 and sup errors of ``mean_n f - f``; pass iff the L1 error falls by ``factor``."""
    f = f.to_float()
    n_list = sorted(set(int(n) for n in n_list))
    if len(n_list) < 2:
        raise DomainError("need at least two grid points")

    def one(n):
        err = np.abs(apply_mean(mean, n, f).values - f.values)
        return (n, float(np.mean(err)), float(np.max(err)))

    rows = _map(one, n_list, threads)
    first, last = rows[0][1], rows[-1][1]
    drop = math.inf if last == 0 else first / last
    return ExperimentReport(
        "converge",
        {"mean": mean.label, "system": mean.system.value, "resolution": f.resolution, "n": n_list},
        ["n", "l1_error", "max_error"],
        rows,
        "pass" if drop >= factor else "fail",
        {"l1_drop": drop},
        float_columns=frozenset({"l1_error", "max_error"}),
    )


def standard_test_function(resolution: int = 12) -> SampledFunction:
    """Indicator of ``I_2(e_0)``, exact."""
    e0 = DyadicPoint.unit(0, resolution)
    return SampledFunction.indicator(DyadicInterval.at(e0, 2), resolution)


def corollary_presets_suite(threads: int = 1) -> ExperimentReport:
    """Blow-up ratios for the log, power and Norlund logarithmic weights.

    * ``log:1:1`` at ``p = 2/5`` through blowup_theorem2
    * ``power:1/2`` at ``p = 1/2`` through blowup_theorem3 part_b
    * Norlund logarithmic means at ``p = 9/10``
    """
    parts = [
        ("log:1:1", blowup_theorem2(preset("log", 1, 1), "2/5", range(2, 9), threads, "float")),
        ("power:1/2", blowup_theorem3(preset("power", "1/2"), "1/2", "1/2", range(2, 11), "part_b", threads)),
        ("norlund_log", norlund_log_blowup("9/10", range(2, 65), threads=threads)),
    ]
    rows = [(name, r.experiment, r.verdict, r.summary["last_ratio"]) for name, r in parts]
    verdicts = [r.verdict for _, r in parts]
    if "fail" in verdicts:
        verdict = "fail"
    elif "inconclusive" in verdicts:
        verdict = "inconclusive"
    else:
        verdict = "pass"
    return ExperimentReport(
        "corollaries",
        {"presets": [name for name, _ in parts]},
        ["preset", "experiment", "verdict", "last_ratio"],
        rows,
        verdict,
        {name: r.verdict for name, r in parts},
        float_columns=frozenset({"last_ratio"}),
    )
