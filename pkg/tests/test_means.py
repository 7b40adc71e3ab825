from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracle
from dslab.exceptions import DomainError, ModeError, ResolutionError
from dslab.kernels import dirichlet_kernel
from dslab.means import (
    MeanId,
    apply_mean,
    apply_mean_convolution,
    apply_mean_partial_sums,
    harmonic_number,
    martingale_maximal,
    maximal_operator,
    parse_mean,
)
from dslab.systems import system_values
from dslab.transforms import SampledFunction
from dslab.weights import preset

MEANS = ["fejer", "fejer_printed", "riesz", "norlund_log", "cesaro:1/2", "norlund:cesaro:1/3", "norlund:geometric:1/2"]


def random_fn(seed, N):
    rng = np.random.default_rng(seed)
    num = rng.integers(-6, 7, 2**N)
    den = rng.integers(1, 4, 2**N)
    return SampledFunction(np.array([Fraction(int(a), int(b)) for a, b in zip(num, den)], dtype=object))


def counterexample(n):
    N = n + 2
    return dirichlet_kernel(2 ** (n + 1), "k", N).data - dirichlet_kernel(2**n, "k", N).data


@pytest.mark.parametrize("spec", MEANS)
@pytest.mark.parametrize("system", ["w", "k"])
def test_three_paths_agree(spec, system):
    mean = parse_mean(spec, system)
    for seed in range(3):
        f = random_fn(seed, 5)
        for n in (2, 3, 9, 17, 32):
            a = apply_mean(mean, n, f)
            assert a == apply_mean_partial_sums(mean, n, f)
            assert a == apply_mean_convolution(mean, n, f)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 16), st.sampled_from(MEANS))
def test_linearity(seed, n, spec):
    mean = parse_mean(spec)
    f, g = random_fn(seed, 4), random_fn(seed + 1, 4)
    assert apply_mean(mean, n, f * 3 - g) == apply_mean(mean, n, f) * 3 - apply_mean(mean, n, g)


def test_counterexample_mean_has_constant_modulus():
    for q in (preset("constant"), preset("cesaro", "1/2"), preset("geometric", "1/3")):
        for n in range(1, 6):
            t = apply_mean(MeanId.norlund(q), 2**n + 1, counterexample(n))
            expected = q.q(0) / q.Q(2**n + 1)
            assert {abs(v) for v in t.values} == {expected}
            assert t == SampledFunction(system_values(2**n, n + 2, "k")) * expected


def test_fejer_printed_on_constant():
    f = SampledFunction.constant(1, 3)
    for n in range(1, 9):
        out = apply_mean(MeanId("fejer_printed"), n, f)
        assert out == SampledFunction.constant(Fraction(n - 1, n), 3)


def test_norlund_constant_equals_fejer():
    f = random_fn(4, 6)
    fejer = MeanId.fejer()
    norlund = MeanId.norlund(preset("constant"))
    for n in (1, 5, 40, 64):
        assert apply_mean(fejer, n, f) == apply_mean(norlund, n, f)


def test_norlund_constant_matches_oracle_double_sum():
    values = [Fraction((5 * i) % 9 - 4, 3) for i in range(16)]
    f = SampledFunction(np.array(values, dtype=object))
    for n in (3, 10, 16):
        direct = [sum(col) / n for col in zip(*(oracle.partial_sum("k", values, k, 4) for k in range(1, n + 1)))]
        assert list(apply_mean(MeanId.fejer(), n, f).values) == direct


def test_cesaro_mean_is_norlund_with_cesaro_weights():
    f = random_fn(2, 5)
    for n in (1, 7, 32):
        assert apply_mean(MeanId.cesaro("1/2"), n, f) == apply_mean(MeanId.norlund(preset("cesaro", "1/2")), n, f)


def test_riesz_and_log_need_n_at_least_two():
    f = SampledFunction.constant(1, 3)
    for kind in ("riesz", "norlund_log"):
        with pytest.raises(DomainError):
            apply_mean(MeanId(kind), 1, f)


def test_mean_resolution_error():
    with pytest.raises(ResolutionError):
        apply_mean(MeanId.fejer(), 9, SampledFunction.constant(1, 3))


def test_exact_input_with_surd_weights():
    mean = MeanId.norlund(preset("power", "1/2"))
    with pytest.raises(ModeError):
        apply_mean(mean, 3, SampledFunction.constant(1, 3))
    out = apply_mean(mean, 3, SampledFunction.constant(1, 3, exact=False))
    assert np.allclose(out.values, 1.0)


def test_harmonic_numbers():
    assert harmonic_number(4) == Fraction(25, 12)
    assert harmonic_number(0) == 0
    assert abs(harmonic_number(1 << 20, exact=False) - sum(1 / k for k in range(1, (1 << 20) + 1))) < 1e-9


def test_maximal_operator_on_constant():
    f = SampledFunction.constant(Fraction(-3), 4)
    out = maximal_operator(MeanId("fejer_printed"), f, 16)
    assert out == SampledFunction.constant(Fraction(3) * 15 / 16, 4)


def test_maximal_operator_single_term():
    f = random_fn(5, 4)
    out = maximal_operator(MeanId.norlund(preset("cesaro", "1/2")), f, 1)
    assert out == SampledFunction.constant(abs(f.mean()), 4)


def test_maximal_operator_monotone_and_dominating():
    f = random_fn(7, 5)
    mean = MeanId.cesaro("1/3")
    prev = None
    for n_max in (1, 4, 9, 20):
        cur = maximal_operator(mean, f, n_max, threads=2)
        for n in range(1, n_max + 1):
            assert all(c >= abs(v) for c, v in zip(cur.values, apply_mean(mean, n, f).values))
        if prev is not None:
            assert all(c >= p for c, p in zip(cur.values, prev.values))
        prev = cur


def test_maximal_operator_counterexample_lower_bound():
    q = preset("constant")
    for n in range(1, 5):
        out = maximal_operator(MeanId.norlund(q), counterexample(n), 2**n + 1)
        assert min(out.values) >= q.q(0) / q.Q(2**n + 1)


def test_martingale_maximal_examples():
    assert martingale_maximal(SampledFunction.constant(Fraction(-2), 3)) == SampledFunction.constant(2, 3)
    for n in range(4):
        star = martingale_maximal(counterexample(n).embed(n + 3))
        N = n + 3
        expected = [2**n if i < 2 ** (N - n) else 0 for i in range(2**N)]
        assert [int(v) for v in star.values] == expected
    for j in (1, 5, 12):
        assert martingale_maximal(SampledFunction(system_values(j, 4, "w"))) == SampledFunction.constant(1, 4)


def test_martingale_maximal_matches_oracle():
    f = random_fn(8, 5)
    assert list(martingale_maximal(f).values) == oracle.block_average_max(list(f.values), 5)


def test_mean_id_equality():
    assert parse_mean("cesaro:1/2") == MeanId.cesaro(Fraction(1, 2))
    assert hash(parse_mean("norlund:constant")) == hash(MeanId.norlund(preset("constant")))
    with pytest.raises(DomainError):
        parse_mean("fejer:2")
