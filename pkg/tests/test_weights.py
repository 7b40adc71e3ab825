from fractions import Fraction

import numpy as np
import pytest

import oracle
from dslab.exceptions import DomainError, ModeError
from dslab.means import MeanId, apply_mean, apply_mean_partial_sums
from dslab.transforms import SampledFunction
from dslab.weights import (
    abel_decompose,
    abel_identity,
    check_condition,
    parse_preset,
    parse_rational,
    preset,
)

PRESETS = ["constant", "cesaro:1/2", "cesaro:1/4", "power:1/2", "power:1/3", "log:1:1", "log:2:2", "geometric:1/2"]


def test_constant_preset():
    q = preset("constant")
    assert q.Q(10) == 10
    assert q.non_increasing and q.non_decreasing


def test_cesaro_preset_is_non_increasing():
    q = preset("cesaro", "1/2")
    assert q.values(3) == [1, Fraction(1, 2), Fraction(3, 8)]
    assert q.non_increasing and not q.non_decreasing
    assert q.monotonicity_holds(300) == {"non_increasing": True}


def test_power_preset():
    q = preset("power", "1/2")
    assert q.q(0) == 1 and q.q(4) == Fraction(1, 2)
    assert abs(float(q.q(2)) - 2**-0.5) < 1e-15
    assert preset("power", 1).values(5) == [1] * 5


@pytest.mark.parametrize("spec", ["power:0", "power:3/2", "cesaro:0", "geometric:1", "log:1:4", "nope", "constant:1"])
def test_invalid_presets(spec):
    with pytest.raises(DomainError):
        parse_preset(spec)


def test_float_parameter_rejected():
    with pytest.raises(ModeError):
        parse_rational(0.5)


def test_custom_preset(tmp_path):
    path = tmp_path / "w.txt"
    path.write_text("3\n2\n1/2\n")
    q = parse_preset(f"custom:{path}")
    assert q.values(3) == [3, 2, Fraction(1, 2)]
    assert q.non_increasing
    with pytest.raises(DomainError):
        q.q(3)


@pytest.mark.parametrize("spec", PRESETS)
def test_partial_sums_and_growth(spec):
    q = parse_preset(spec)
    Q = q.Q_float(4096)
    assert np.all(np.diff(Q) >= 0)
    assert np.allclose(np.diff(Q), q.q_float(4096))
    if q.exact:
        assert all(q.Q(n + 1) - q.Q(n) == q.q(n) for n in range(50))
    if not spec.startswith("geometric"):
        assert Q[-1] > 4 * Q[1]


@pytest.mark.parametrize("spec", [s for s in PRESETS if not s.startswith("log")])
def test_non_increasing_presets_satisfy_cond0(spec):
    q = parse_preset(spec)
    if not q.non_increasing:
        pytest.skip("not non-increasing")
    n = np.arange(1, 4097)
    Q = q.Q_float(4096)[1:]
    assert np.all(q.q_float(1)[0] * n >= Q * (1 - 1e-12))


def test_conditions_for_constant_weights():
    q = preset("constant")
    r = check_condition(q, "regular_1a11", 1024)
    assert r.holds
    assert r.witnesses[:3] == [(2, 0.5), (4, 0.25), (8, 0.125)]
    b = check_condition(q, "bounded_100", 1024)
    assert b.holds and all(w == 1.0 for _, w in b.witnesses)


def test_no1_first_for_cesaro():
    r = check_condition(preset("cesaro", "1/2"), "no1_first", 1 << 12, "1/2")
    assert r.holds
    assert r.summary["sup"] < 2


def test_cond0_incompatibility_note():
    r = check_condition(preset("log", 1, 1), "cond0", 256)
    assert r.verdict == "fails"
    assert "constant" in r.note


def test_nom2_with_bounded_partial_sums():
    r = check_condition(preset("geometric", "1/2"), "nom2", 1024, "1/2")
    assert r.holds
    r = check_condition(preset("constant"), "nom2", 1024, "1/2")
    assert r.verdict == "fails"


def test_nom3_reports_infimum():
    r = check_condition(preset("power", "1/2"), "nom3", 1 << 12, "1/2")
    assert r.holds
    assert 0.4 < r.summary["inf"] < 1


def test_condition_needs_alpha_and_grid():
    with pytest.raises(DomainError):
        check_condition(preset("constant"), "nom3", 1024)
    with pytest.raises(DomainError):
        check_condition(preset("constant"), "bounded_100", 4)


def test_abel_constant():
    assert abel_decompose(preset("constant"), 7) == [(1, 7)]


@pytest.mark.parametrize("spec", ["cesaro:1/2", "geometric:1/3", "constant", "power:1/2"])
def test_abel_coefficient_identity(spec):
    lhs, Q = abel_identity(parse_preset(spec), 10)
    assert lhs == Q


def test_abel_reconstruction_matches_direct_mean():
    q = preset("cesaro", "1/2")
    rng = np.random.default_rng(6)
    f = SampledFunction(np.array([Fraction(int(v)) for v in rng.integers(-5, 6, 64)], dtype=object))
    fejer = MeanId.fejer()
    total = SampledFunction.constant(0, 6)
    for c, j in abel_decompose(q, 6):
        total = total + apply_mean(fejer, j, f) * c
    assert total == apply_mean_partial_sums(MeanId.norlund(q), 6, f)


def test_oracle_cesaro_agrees_with_preset():
    q = preset("cesaro", "1/3")
    assert q.values(30) == [oracle.cesaro(Fraction(-2, 3), k) for k in range(30)]
