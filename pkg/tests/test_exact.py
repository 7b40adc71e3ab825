from fractions import Fraction

import pytest
import sympy

from dslab.exact import (
    Surd,
    exact_equal,
    exact_less,
    format_exact,
    integer_radical,
    rational_power,
    to_exact,
)


def test_integer_radical_rational_and_surd():
    assert integer_radical(4, Fraction(-1, 2)) == Fraction(1, 2)
    r = integer_radical(8, Fraction(-1, 2))
    assert isinstance(r, Surd)
    assert r.components() == {2: Fraction(1, 4)}
    assert abs(float(r) - 8**-0.5) < 1e-15


def test_surd_linear_independence_gives_exact_zero():
    a = integer_radical(2, Fraction(-1, 2)) + integer_radical(8, Fraction(-1, 2))
    b = integer_radical(2, Fraction(1, 2)) * Fraction(3, 4)
    assert a == b
    assert a - b == 0
    assert not (a - b)


def test_surd_ordering():
    assert integer_radical(3, Fraction(1, 2)) < 2
    assert integer_radical(3, Fraction(1, 2)) > Fraction(17, 10)


def test_rational_power():
    assert rational_power(Fraction(1, 4), Fraction(1, 2)) == Fraction(1, 2)
    value = rational_power(2, Fraction(-3, 2))
    assert isinstance(value, sympy.Basic)
    assert exact_equal(value, sympy.sqrt(2) / 4)
    with pytest.raises(ValueError):
        rational_power(-1, Fraction(1, 2))


def test_exact_less_close_values():
    a = sympy.sqrt(2)
    b = Fraction(14142135623730951, 10**16)
    assert exact_less(a, b)
    assert not exact_less(a, a)


def test_format_exact():
    assert format_exact(Fraction(3, 4)) == "3/4"
    assert format_exact(Fraction(4)) == "4"
    assert format_exact(True) == "true"
    assert format_exact(sympy.sqrt(2) / 32) == "sqrt(2)/32"
    assert format_exact(to_exact(sympy.Rational(6, 3))) == "2"
