"""Norlund weight sequences, named presets and empirical condition checks."""

from __future__ import annotations

import hashlib
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

import numpy as np

from .exact import Surd, integer_radical
from .exceptions import DomainError, ModeError

__all__ = [
    "NON_INCREASING",
    "NON_DECREASING",
    "WeightSequence",
    "ConditionReport",
    "CONDITIONS",
    "cesaro_coefficient",
    "cesaro_table",
    "preset",
    "parse_preset",
    "check_condition",
    "abel_decompose",
    "abel_identity",
    "parse_rational",
]

NON_INCREASING = "non_increasing"
NON_DECREASING = "non_decreasing"

_ARITHMETIC = ("rational", "surd", "float")


def parse_rational(text) -> Fraction:
    """Parse ``"num/den"``, an integer or a decimal literal without rounding."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise ModeError("pass rationals as strings such as '2/5', not floats")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"not a rational number: {text!r}") from None


# Cesaro numbers A_n^alpha

_cesaro_cache: dict[Fraction, list[Fraction]] = {}
_cesaro_lock = threading.Lock()


def cesaro_table(alpha, n: int) -> list[Fraction]:
    """``[A_0^alpha, ..., A_n^alpha]`` with ``A_0^alpha = 1``."""
    alpha = parse_rational(alpha)
    if alpha.denominator == 1 and alpha.numerator < 0:
        raise DomainError(f"A_n^alpha is undefined for alpha={alpha}")
    with _cesaro_lock:
        table = _cesaro_cache.setdefault(alpha, [Fraction(1)])
        while len(table) <= n:
            k = len(table)
            table.append(table[-1] * (alpha + k) / k)
        return table[: n + 1]


def cesaro_coefficient(alpha, n: int) -> Fraction:
    """``A_n^alpha = (alpha+1)...(alpha+n)/n!``."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    return cesaro_table(alpha, n)[n]


class WeightSequence:
    """Weights ``q_0, q_1, ...`` with partial sums ``Q_n = q_0 + ... + q_{n-1}``.

    ``arithmetic`` is ``"rational"`` (Fraction values), ``"surd"`` (exact
    radicals, see :class:`dslab.exact.Surd`) or ``"float"``.  Values are
    cached as they are requested; caches only grow.
    """

    def __init__(
        self,
        name: str,
        rule: Callable[[int], object],
        *,
        arithmetic: str = "rational",
        monotonicity: frozenset[str] | set[str] = frozenset(),
        float_rule: Callable[[int], float] | None = None,
        length: int | None = None,
    ):
        if arithmetic not in _ARITHMETIC:
            raise DomainError(f"unknown arithmetic {arithmetic!r}")
        self.name = name
        self.arithmetic = arithmetic
        self.monotonicity = frozenset(monotonicity)
        self.length = length
        self._rule = rule
        self._float_rule = float_rule
        self._q: list = []
        self._Q: list = [self._zero()]
        self._lock = threading.Lock()
        if float(self.q(0)) <= 0:
            raise DomainError(f"{name}: q_0 must be positive")

    def __repr__(self):
        return f"WeightSequence({self.name!r}, {self.arithmetic})"

    @property
    def key(self) -> str:
        return self.name

    @property
    def exact(self) -> bool:
        return self.arithmetic != "float"

    @property
    def rational(self) -> bool:
        return self.arithmetic == "rational"

    @property
    def non_increasing(self) -> bool:
        return NON_INCREASING in self.monotonicity

    @property
    def non_decreasing(self) -> bool:
        return NON_DECREASING in self.monotonicity

    def _zero(self):
        return Fraction(0) if self.arithmetic != "float" else 0.0

    def _extend(self, n: int) -> None:
        if len(self._q) > n:
            return
        if self.length is not None and n >= self.length:
            raise DomainError(f"{self.name}: only {self.length} weights available")
        with self._lock:
            while len(self._q) <= n:
                k = len(self._q)
                value = self._rule(k)
                if (float(value) if self.arithmetic == "surd" else value) < 0:
                    raise DomainError(f"{self.name}: q_{k} is negative")
                self._q.append(value)
                self._Q.append(self._Q[-1] + value)

    def q(self, k: int):
        if k < 0:
            raise DomainError("weight index must be nonnegative")
        self._extend(k)
        return self._q[k]

    def Q(self, n: int):
        if n < 0:
            raise DomainError("partial-sum index must be nonnegative")
        if n:
            self._extend(n - 1)
        return self._Q[n]

    def values(self, n: int) -> list:
        """``[q_0, ..., q_{n-1}]``."""
        if n:
            self._extend(n - 1)
        return self._q[:n]

    def partial_sums(self, n: int) -> list:
        """``[Q_0, ..., Q_n]``."""
        if n:
            self._extend(n - 1)
        return self._Q[: n + 1]

    def q_float(self, n: int) -> np.ndarray:
        """``q_0..q_{n-1}`` as floats (direct float evaluation when available)."""
        if self._float_rule is not None:
            return np.array([self._float_rule(k) for k in range(n)], dtype=float)
        return np.array([float(v) for v in self.values(n)], dtype=float)

    def Q_float(self, n: int) -> np.ndarray:
        """``Q_0..Q_n`` as floats."""
        return np.concatenate(([0.0], np.cumsum(self.q_float(n))))

    def components(self, n: int) -> dict[int, list[Fraction]]:
        """Split ``q_0..q_{n-1}`` into rational sequences, one per radical.

        ``q_k = sum_m components[m][k] * m**(1/degree)``.
        """
        if self.arithmetic == "float":
            raise ModeError(f"{self.name} has float weights")
        values = self.values(n)
        if self.arithmetic == "rational":
            return {1: list(values)}
        out: dict[int, list[Fraction]] = {}
        for k, v in enumerate(values):
            terms = v.components() if isinstance(v, Surd) else {1: Fraction(v)}
            for m, c in terms.items():
                out.setdefault(m, [Fraction(0)] * n)[k] = c
        return out

    def monotonicity_holds(self, n: int) -> dict[str, bool]:
        """Check the declared monotonicity against ``q_0..q_{n-1}``."""
        q = self.q_float(n) if self.arithmetic != "rational" else self.values(n)
        diffs = [b - a for a, b in zip(q[:-1], q[1:])]
        tol = 0 if self.arithmetic == "rational" else 1e-12
        observed = {
            NON_INCREASING: all(d <= tol for d in diffs),
            NON_DECREASING: all(d >= -tol for d in diffs),
        }
        return {m: observed[m] for m in self.monotonicity}


def _monotone_from_values(values) -> frozenset[str]:
    out = set()
    diffs = [b - a for a, b in zip(values[:-1], values[1:])]
    if all(d <= 0 for d in diffs):
        out.add(NON_INCREASING)
    if all(d >= 0 for d in diffs):
        out.add(NON_DECREASING)
    return frozenset(out)


_LOG_SHIFT = {1: math.e, 2: math.exp(math.e), 3: math.exp(math.exp(math.e))}


def _iterated_log(x: float, beta: int) -> float:
    for _ in range(beta):
        x = math.log(x)
    return x


def preset(name: str, *params) -> WeightSequence:
    """Named weight sequences.

    ``constant``       q_k = 1 (Fejer means)
    ``cesaro, a``      q_k = A_k^(a-1) ((C,a) means)
    ``power, a``       q_k = k^(a-1) for k >= 1, q_0 = 1, 0 < a <= 1
    ``log, a, b``      q_k = (log^(b)(k + e_b))^a with log^(b)(e_b) = 1, float only
    ``geometric, r``   q_k = r^k, 0 < r < 1 (bounded Q_n)
    ``custom, path``   one rational per line
    """
    name = name.strip().lower()
    if name == "constant":
        if params:
            raise DomainError("constant takes no parameters")
        return WeightSequence(
            "constant",
            lambda k: Fraction(1),
            monotonicity={NON_INCREASING, NON_DECREASING},
            float_rule=lambda k: 1.0,
        )
    if name == "cesaro":
        (alpha,) = _need(params, 1, name)
        alpha = parse_rational(alpha)
        if alpha <= 0:
            raise DomainError("cesaro weights need alpha > 0")
        mono = {NON_INCREASING} if alpha < 1 else {NON_DECREASING}
        if alpha == 1:
            mono = {NON_INCREASING, NON_DECREASING}
        return WeightSequence(
            f"cesaro:{alpha}",
            lambda k: cesaro_coefficient(alpha - 1, k),
            monotonicity=mono,
        )
    if name == "power":
        (alpha,) = _need(params, 1, name)
        alpha = parse_rational(alpha)
        if not 0 < alpha <= 1:
            raise DomainError("power weights need 0 < alpha <= 1")
        exponent = alpha - 1

        def rule(k, exponent=exponent):
            return Fraction(1) if k == 0 else integer_radical(k, exponent)

        def float_rule(k, e=float(exponent)):
            return 1.0 if k == 0 else float(k) ** e

        arithmetic = "rational" if exponent.denominator == 1 else "surd"
        if arithmetic == "surd":
            degree = exponent.denominator
            base_rule = rule

            def rule(k, base_rule=base_rule, degree=degree):
                v = base_rule(k)
                return v if isinstance(v, Surd) else Surd.rational(v, degree)

        return WeightSequence(
            f"power:{alpha}",
            rule,
            arithmetic=arithmetic,
            monotonicity={NON_INCREASING} if alpha < 1 else {NON_INCREASING, NON_DECREASING},
            float_rule=float_rule,
        )
    if name == "log":
        alpha, beta = _need(params, 2, name)
        alpha = parse_rational(alpha)
        beta = int(parse_rational(beta))
        if alpha < 0:
            raise DomainError("log weights need alpha >= 0")
        if beta not in _LOG_SHIFT:
            raise DomainError("log weights support beta in {1, 2, 3}")
        shift = _LOG_SHIFT[beta]
        a = float(alpha)

        def log_rule(k):
            return _iterated_log(k + shift, beta) ** a

        return WeightSequence(
            f"log:{alpha}:{beta}",
            log_rule,
            arithmetic="float",
            monotonicity={NON_DECREASING} if alpha > 0 else {NON_INCREASING, NON_DECREASING},
            float_rule=log_rule,
        )
    if name == "geometric":
        (r,) = _need(params, 1, name)
        r = parse_rational(r)
        if not 0 < r < 1:
            raise DomainError("geometric weights need 0 < r < 1")
        return WeightSequence(
            f"geometric:{r}", lambda k: r**k, monotonicity={NON_INCREASING}
        )
    if name == "custom":
        (path,) = _need(params, 1, name)
        return _custom(Path(path))
    raise DomainError(f"unknown weight preset {name!r}")


def _need(params, count, name):
    if len(params) != count:
        raise DomainError(f"preset {name} takes {count} parameter(s), got {len(params)}")
    return params


def _custom(path: Path) -> WeightSequence:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"cannot read weights file {path}: {exc}") from None
    values = [parse_rational(line) for line in text.splitlines() if line.strip()]
    if not values:
        raise DomainError(f"{path} holds no weights")
    digest = hashlib.sha256(text.encode()).hexdigest()[:12]
    return WeightSequence(
        f"custom:{path.name}@{digest}",
        values.__getitem__,
        monotonicity=_monotone_from_values(values),
        length=len(values),
    )


def parse_preset(spec: str) -> WeightSequence:
    """CLI form: ``constant``, ``cesaro:1/2``, ``power:1/2``, ``log:1:1``, ``custom:file``."""
    name, _, rest = spec.partition(":")
    if name.strip().lower() == "custom":
        return preset("custom", rest)
    params = rest.split(":") if rest else []
    return preset(name, *params)


# Conditions

CONDITIONS = (
    "regular_1a11",
    "bounded_100",
    "cond0",
    "no1_first",
    "no1_second",
    "nom3",
    "nom2",
    "cond5",
)

_NEEDS_ALPHA = {"no1_first", "no1_second", "nom3", "nom2", "cond5"}


@dataclass
class ConditionReport:
    condition: str
    witnesses: list[tuple[int, float]]
    verdict: str
    fails_at: int | None = None
    summary: dict = field(default_factory=dict)
    note: str = ""

    @property
    def label(self) -> str:
        if self.verdict == "fails":
            return f"fails_at({self.fails_at})"
        return self.verdict

    @property
    def holds(self) -> bool:
        return self.verdict == "holds_empirically"


def _trend(values: np.ndarray, rtol: float = 1e-12) -> str:
    d = np.diff(values)
    scale = rtol * max(1.0, float(np.max(np.abs(values))))
    if np.all(d <= scale):
        return "non_increasing"
    if np.all(d >= -scale):
        return "non_decreasing"
    return "mixed"


def _bounded(ns: list[int], w: np.ndarray) -> tuple[str, int | None]:
    """Classify ``w = O(1)`` on a dyadic grid.

    Non-increasing witnesses are bounded by their first value.  Increasing
    witnesses count as bounded when their increments shrink geometrically
    (ratio <= 0.9 over the second half of the grid), and as unbounded when
    the increments do not shrink (ratio >= 0.99).
    """
    if not np.all(np.isfinite(w)):
        bad = int(np.argmax(~np.isfinite(w)))
        return "fails", ns[bad]
    trend = _trend(w)
    if trend == "non_increasing":
        return "holds_empirically", None
    if trend == "mixed":
        return "inconclusive", None
    d = np.diff(w)
    tail = d[len(d) // 2 :]
    if np.all(tail <= 1e-15 * max(1.0, abs(w[-1]))):
        return "holds_empirically", None
    if np.any(tail[:-1] <= 0):
        return "inconclusive", None
    ratios = tail[1:] / tail[:-1]
    if len(ratios) == 0:
        return "inconclusive", None
    if np.all(ratios <= 0.9):
        return "holds_empirically", None
    if np.all(ratios >= 0.99):
        return "fails", ns[-1]
    return "inconclusive", None


def _negate(verdict: tuple[str, int | None], ns) -> tuple[str, int | None]:
    kind, _ = verdict
    if kind == "fails":
        return "holds_empirically", None
    if kind == "holds_empirically":
        return "fails", ns[-1]
    return "inconclusive", None


def _combine(*verdicts):
    kinds = [v[0] for v in verdicts]
    if "fails" in kinds:
        return next(v for v in verdicts if v[0] == "fails")
    if all(k == "holds_empirically" for k in kinds):
        return "holds_empirically", None
    return "inconclusive", None


def check_condition(
    q: WeightSequence, condition: str, n_max: int, alpha=None
) -> ConditionReport:
    """Evaluate a weight condition on the grid ``n = 2, 4, ..., n_max``.

    Verdicts are empirical: ``holds_empirically``, ``fails`` (with the grid
    point where failure showed) or ``inconclusive``.
    """
    if condition not in CONDITIONS:
        raise DomainError(f"unknown condition {condition!r}")
    if n_max < 8:
        raise DomainError("n_max must be at least 8")
    if condition in _NEEDS_ALPHA:
        if alpha is None:
            raise DomainError(f"{condition} needs alpha")
        a = float(parse_rational(alpha)) if not isinstance(alpha, float) else alpha
    ns = [1 << j for j in range(1, n_max.bit_length()) if 1 << j <= n_max]
    grid = np.array(ns, dtype=float)
    qf = q.q_float(ns[-1] + 2)
    Qf = np.concatenate(([0.0], np.cumsum(qf)))
    q0 = qf[0]
    Qn = Qf[ns]
    note = ""
    summary: dict = {}

    if condition == "regular_1a11":
        w = qf[np.array(ns) - 1] / Qn
        trend = _trend(w)
        if trend == "non_increasing" and (w[-1] == 0 or w[-1] < w[0]):
            verdict = ("holds_empirically", None)
        elif trend == "non_decreasing" and w[-1] > 0:
            verdict = ("fails", ns[-1])
        else:
            verdict = ("inconclusive", None)
        summary["last"] = float(w[-1])
    elif condition == "bounded_100":
        w = q0 * grid / Qn
        verdict = _bounded(ns, w)
        summary["sup"] = float(w.max())
    elif condition == "cond0":
        # q_0 / Q_n >= 1/n  <=>  q_0 n >= Q_n, checked exactly for rational weights
        w = q0 * grid / Qn
        verdict = ("holds_empirically", None)
        for n in ns:
            if q.rational:
                ok = q.q(0) * n >= q.Q(n)
            else:
                ok = q0 * n >= Qf[n] * (1 - 1e-12)
            if not ok:
                verdict = ("fails", n)
                break
        summary["min"] = float(w.min())
        if q.non_decreasing and not q.non_increasing:
            note = (
                "non-decreasing weights satisfy q_0/Q_n >= 1/n only when constant, "
                "since Q_n >= n q_0"
            )
    elif condition == "no1_first":
        w = q0 * grid**a / Qn
        verdict = _bounded(ns, w)
        summary["sup"] = float(w.max())
    elif condition == "no1_second":
        nidx = np.array(ns)
        w = np.abs(qf[nidx] - qf[nidx + 1]) * grid ** (2 - a)
        verdict = _bounded(ns, w)
        summary["sup"] = float(w.max())
    elif condition in ("nom3", "nom2"):
        w = q0 * grid**a / Qn
        if condition == "nom3":
            verdict = _bounded(ns, 1.0 / w)
            summary["inf"] = float(w.min())
        else:
            verdict = _negate(_bounded(ns, w), ns)
            summary["sup"] = float(w.max())
    else:  # cond5
        nidx = np.array(ns)
        w = q0 * grid**a / Qn
        drop = (qf[nidx] - qf[nidx + 1]) * grid ** (2 - a)
        if np.any(drop <= 0):
            second = ("fails", ns[int(np.argmax(drop <= 0))])
        else:
            second = _bounded(ns, 1.0 / drop)
        verdict = _combine(_bounded(ns, 1.0 / w), second)
        summary["inf_first"] = float(w.min())
        summary["inf_second"] = float(drop.min())
    kind, at = verdict
    return ConditionReport(
        condition,
        list(zip(ns, (float(v) for v in w))),
        kind,
        at,
        summary,
        note,
    )


# Abel transform of the Norlund mean


def abel_decompose(q: WeightSequence, n: int) -> list[tuple[object, int]]:
    """Coefficients ``c_j`` with ``t_n = sum_j c_j sigma_j`` (Fejer means, k=1..n form).

    ``c_j = (q_{n-j} - q_{n-j-1}) j / Q_n`` for ``j < n`` and ``c_n = q_0 n / Q_n``;
    zero coefficients are dropped.
    """
    if n < 1:
        raise DomainError("n must be positive")
    values = q.values(n) if q.rational else list(q.q_float(n))
    Qn = q.Q(n) if q.rational else float(np.sum(values))
    pairs = []
    for j in range(1, n):
        c = (values[n - j] - values[n - j - 1]) * j
        if c:
            pairs.append((c / Qn, j))
    pairs.append((values[0] * n / Qn, n))
    return pairs


def abel_identity(q: WeightSequence, n: int) -> tuple[object, object]:
    """Both sides of ``sum_{j<n} (q_{n-j} - q_{n-j-1}) j + q_0 n = Q_n``, exactly."""
    if not q.exact:
        raise ModeError("the Abel identity check needs exact weights")
    values = q.values(n)
    lhs = values[0] * n
    for j in range(1, n):
        lhs = lhs + (values[n - j] - values[n - j - 1]) * j
    return lhs, q.Q(n)
