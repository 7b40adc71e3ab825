from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dslab.dyadic import DyadicInterval, DyadicPoint, bit_length, decompose, interval_cells
from dslab.exceptions import DomainError, ResolutionError


@pytest.mark.parametrize("n, expected", [(1, 0), (5, 2), (1024, 10)])
def test_bit_length_examples(n, expected):
    assert bit_length(n) == expected


def test_bit_length_zero_is_domain_error():
    with pytest.raises(DomainError):
        bit_length(0)


@given(st.integers(1, 1 << 20))
def test_bit_length_brackets_n(n):
    k = bit_length(n)
    assert 2**k <= n < 2 ** (k + 1)


def test_decompose_examples():
    e = decompose(13)
    assert e.exponents == (3, 2, 0)
    assert e.tail(1) == 5 and e.tail(2) == 1 and e.tail(3) == 0
    assert decompose(8).exponents == (3,) and decompose(8).tail(1) == 0
    assert decompose(6).exponents == (2, 1) and decompose(6).tail(1) == 2


@given(st.integers(1, 10**5))
def test_decompose_reconstructs(n):
    e = decompose(n)
    assert sum(2**k for k in e.exponents) == n
    assert sum(d << i for i, d in enumerate(e.digits)) == n
    assert list(e.tails) == sorted(e.tails, reverse=True)
    assert e.tails[-1] == 0
    assert e.top == bit_length(n)


def test_interval_cells_examples():
    assert interval_cells(DyadicInterval.centered(2), 3) == range(0, 2)
    assert interval_cells(DyadicInterval(0), 3) == range(0, 8)
    e0 = DyadicPoint.unit(0, 3)
    assert interval_cells(DyadicInterval.at(e0, 3), 3) == range(4, 5)


def test_interval_rank_above_resolution():
    with pytest.raises(ResolutionError):
        interval_cells(DyadicInterval.centered(4), 3)


@given(st.integers(0, 8), st.data())
def test_interval_measure_matches_cells(N, data):
    rank = data.draw(st.integers(0, N))
    anchor = tuple(data.draw(st.lists(st.integers(0, 1), min_size=rank, max_size=rank)))
    I = DyadicInterval(rank, anchor)
    cells = interval_cells(I, N)
    assert Fraction(len(cells), 2**N) == I.measure == Fraction(1, 2**rank)
    for child in I.children():
        c = interval_cells(child, max(N, rank + 1))
        parent = interval_cells(I, max(N, rank + 1))
        assert c.start >= parent.start and c.stop <= parent.stop


@given(st.integers(1, 12), st.data())
def test_point_index_roundtrip(N, data):
    i = data.draw(st.integers(0, 2**N - 1))
    x = DyadicPoint.from_index(i, N)
    assert len(x.bits) == N
    assert x.index == i
    assert x.bits[0] == i >> (N - 1)


def test_point_addition_is_xor():
    x = DyadicPoint.from_index(0b101, 3)
    y = DyadicPoint.from_index(0b110, 3)
    assert (x + y).index == 0b011
