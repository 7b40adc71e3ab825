"""Exact scalar arithmetic beyond the rationals.

Two pieces live here:

* :class:`Surd`, a Q-linear combination of real radicals ``m**(1/d)`` of a
  fixed degree ``d`` with ``m`` d-th-power-free.  Such radicals are linearly
  independent over Q, so a Surd is zero iff every coefficient is zero; this
  makes sums of weights like ``k**(-1/2)`` comparable exactly.
* helpers that raise rationals to rational powers and hand back a
  :class:`~fractions.Fraction` when the result is rational and a sympy
  number otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import sympy

__all__ = [
    "Surd",
    "integer_radical",
    "rational_power",
    "to_exact",
    "exact_equal",
    "exact_less",
    "format_exact",
    "is_exact",
]


@lru_cache(maxsize=65536)
def _factor(k: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(sympy.factorint(k).items()))


def _split_power(k: int, power: int, degree: int) -> tuple[int, int]:
    """``k**power = s**degree * m`` with ``m`` degree-th-power-free."""
    s, m = 1, 1
    for p, e in _factor(k):
        q, r = divmod(e * power, degree)
        s *= p**q
        m *= p**r
    return s, m


class Surd:
    __slots__ = ("degree", "terms")

    def __init__(self, terms=None, degree: int = 2):
        if degree < 1:
            raise ValueError("degree must be positive")
        self.degree = degree
        self.terms: dict[int, Fraction] = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[int(m)] = self.terms.get(int(m), Fraction(0)) + c
        self.terms = {m: c for m, c in self.terms.items() if c}

    @classmethod
    def rational(cls, value, degree: int = 2) -> "Surd":
        return cls({1: Fraction(value)}, degree)

    def _coerce(self, other) -> "Surd | None":
        if isinstance(other, Surd):
            if other.degree != self.degree:
                if not other.terms.keys() - {1}:
                    return Surd(other.terms, self.degree)
                if not self.terms.keys() - {1}:
                    return other
                raise ValueError("cannot mix radicals of different degrees")
            return other
        if isinstance(other, (int, Rational)):
            return Surd.rational(other, self.degree)
        return None

    def _degree_with(self, other: "Surd") -> int:
        if not self.terms.keys() - {1}:
            return other.degree
        return self.degree

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return Surd(terms, self._degree_with(other))

    __radd__ = __add__

    def __neg__(self):
        return Surd({m: -c for m, c in self.terms.items()}, self.degree)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            c = Fraction(other)
            return Surd({m: v * c for m, v in self.terms.items()}, self.degree)
        return NotImplemented

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if not self.terms.keys() - {1}:
            return hash(self.terms.get(1, Fraction(0)))
        return hash((self.degree, frozenset(self.terms.items())))

    def __float__(self):
        return float(sum(float(c) * m ** (1.0 / self.degree) for m, c in self.terms.items()))

    def __lt__(self, other):
        return exact_less(self, other)

    def __gt__(self, other):
        return exact_less(other, self)

    def __le__(self, other):
        return self == other or exact_less(self, other)

    def __ge__(self, other):
        return self == other or exact_less(other, self)

    def __repr__(self):
        return f"Surd({format_exact(self)})"

    @property
    def is_rational(self) -> bool:
        return not self.terms.keys() - {1}

    def components(self) -> dict[int, Fraction]:
        """Coefficient of each radical ``m**(1/degree)`` (``m = 1`` is the rational part)."""
        return dict(self.terms)

    def to_sympy(self):
        root = sympy.Rational(1, self.degree)
        return sympy.Add(
            *(sympy.Rational(c.numerator, c.denominator) * sympy.Integer(m) ** root
              for m, c in sorted(self.terms.items()))
        )


def integer_radical(k: int, exponent: Fraction):
    """``k**exponent`` for a positive integer ``k``; a Fraction when rational."""
    if k < 1:
        raise ValueError("radicand must be a positive integer")
    exponent = Fraction(exponent)
    a, b = exponent.numerator, exponent.denominator
    if b == 1:
        return Fraction(k) ** a
    # k**(a/b) = k**((a + t*b)/b) / k**t with 0 <= a + t*b < b
    t = -(a // b)
    s, m = _split_power(k, a + t * b, b)
    coeff = Fraction(s, k**t)
    if m == 1:
        return coeff
    return Surd({m: coeff}, b)


def to_exact(value):
    """Normalise to a Fraction when the value is rational, else to sympy."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Surd):
        if value.is_rational:
            return value.terms.get(1, Fraction(0))
        return value.to_sympy()
    if isinstance(value, sympy.Basic):
        if value.is_Rational:
            return Fraction(int(value.p), int(value.q))
        return value
    if isinstance(value, Rational):
        return Fraction(value)
    raise TypeError(f"{value!r} is not an exact value")


def _sym(value):
    value = to_exact(value)
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    return value


def rational_power(x, exponent):
    """Exact ``x**exponent`` for rational ``x >= 0`` and rational exponent."""
    x = Fraction(x)
    exponent = Fraction(exponent)
    if x < 0:
        raise ValueError("negative base")
    if x == 0:
        if exponent <= 0:
            raise ValueError("0 to a nonpositive power")
        return Fraction(0)
    if exponent.denominator == 1:
        return x ** exponent.numerator
    return to_exact(
        sympy.Rational(x.numerator, x.denominator)
        ** sympy.Rational(exponent.numerator, exponent.denominator)
    )


def is_exact(value) -> bool:
    return isinstance(value, (Fraction, int, Surd, sympy.Basic)) and not isinstance(value, bool)


def exact_equal(a, b) -> bool:
    a, b = to_exact(a), to_exact(b)
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    if isinstance(a, sympy.Basic) and isinstance(b, sympy.Basic) and a == b:
        return True
    return sympy.simplify(_sym(a) - _sym(b)) == 0


def exact_less(a, b, precision: int = 60) -> bool:
    """Strict ``a < b`` for exact reals, decided with a certified gap."""
    a, b = to_exact(a), to_exact(b)
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a < b
    diff = _sym(b) - _sym(a)
    if diff == 0 or exact_equal(a, b):
        return False
    value = sympy.N(diff, precision)
    if abs(value) < sympy.Float(10) ** (-(precision - 10)):
        value = sympy.N(diff, 4 * precision)
    return bool(value > 0)


def format_exact(value) -> str:
    """``num/den`` for rationals; sympy syntax for algebraic numbers."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Surd):
        value = to_exact(value)
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, sympy.Basic):
        if value.is_Rational:
            return format_exact(Fraction(int(value.p), int(value.q)))
        return sympy.sstr(value)
    return repr(value)
