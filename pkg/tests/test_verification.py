from fractions import Fraction

import pytest
import sympy

from dslab.exact import exact_equal
from dslab.exceptions import DomainError, ModeError, ResolutionError
from dslab.means import parse_mean
from dslab.verification import (
    blowup_theorem2,
    blowup_theorem3,
    convergence_experiment,
    corollary_presets_suite,
    counterexample,
    norlund_log_blowup,
    standard_test_function,
    verify_lemma2,
    verify_lemma3,
)
from dslab.weights import preset


def test_decomposition_constant_weights():
    r = verify_lemma2(preset("constant"), 3, 5)
    assert r.verdict == "pass"
    assert [row[0] for row in r.rows] == list(range(9, 17))
    assert all(row[1] for row in r.rows)


def test_decomposition_cesaro_identifies_proof_form():
    r = verify_lemma2(preset("cesaro", "1/2"), 4, 6)
    assert r.verdict == "pass"
    assert r.summary["matching_variants"] == ["proof"]
    assert r.summary["unique_match"]


def test_decomposition_smallest_tail():
    r = verify_lemma2(preset("cesaro", "1/4"), 2)
    first = r.rows[0]
    assert first[0] == 5 and first[1] is True


def test_decomposition_radical_weights():
    r = verify_lemma2(preset("power", "1/2"), 3)
    assert r.verdict == "pass"
    assert r.summary["components"] > 1


def test_decomposition_errors():
    with pytest.raises(ModeError):
        verify_lemma2(preset("log", 1, 1), 2)
    with pytest.raises(ResolutionError):
        verify_lemma2(preset("constant"), 3, 3)


def test_majorant_small_sweep():
    r = verify_lemma3(preset("cesaro", "1/2"), "1/2", 64, 8)
    assert r.summary["zero_cells"] == 0
    ratios = [row[1] for row in r.rows]
    assert r.summary["c_emp"] == max(ratios)
    # power-of-two rows are finite
    assert all(r.rows[2**j - 1][1] < 10 for j in range(7))


def test_majorant_c_emp_monotone_in_n_max():
    q = preset("cesaro", "1/2")
    values = [verify_lemma3(q, "1/2", n, 8).summary["c_emp"] for n in (16, 32, 64, 128)]
    assert values == sorted(values)


def test_majorant_frozen_constant():
    r = verify_lemma3(preset("cesaro", "1/2"), "1/2", 256, 10)
    assert r.summary["c_emp"] == pytest.approx(2.3903275603626164, rel=1e-9)
    assert r.summary["running_max_at_half"] == pytest.approx(2.3467199098603646, rel=1e-9)


def test_majorant_precondition_failure_is_inconclusive():
    r = verify_lemma3(preset("log", 1, 1), "1/2", 16, 6)
    assert r.verdict == "inconclusive"


def test_blowup_small_p_constant_weights():
    r = blowup_theorem2(preset("constant"), "2/5", range(2, 9))
    assert r.verdict == "pass"
    for n, weak, hardy, ratio, closed, constant, agree in r.rows:
        assert weak == Fraction(1, 2**n + 1)
        assert exact_equal(hardy, sympy.Integer(2) ** sympy.Rational(-3 * n, 2))
        assert exact_equal(ratio, sympy.Integer(2) ** sympy.Rational(3 * n, 2) / (2**n + 1))
        assert constant and agree


def test_blowup_small_p_domain():
    for p in ("1/2", "0", "3/4"):
        with pytest.raises(DomainError):
            blowup_theorem2(preset("constant"), p, [2, 3])


def test_blowup_small_p_float_weights_need_float_mode():
    with pytest.raises(ModeError):
        blowup_theorem2(preset("log", 1, 1), "2/5", [2, 3])
    assert blowup_theorem2(preset("log", 1, 1), "2/5", range(2, 7), mode="float").verdict == "pass"


def test_blowup_alpha_power_weights():
    r = blowup_theorem3(preset("power", "1/2"), "1/2", "1/2", range(2, 11))
    assert r.verdict == "pass"
    assert all(row[6] for row in r.rows)


def test_blowup_alpha_exponent_one():
    # alpha = 1, p = 1/3: ratio grows like 2^n
    r = blowup_theorem3(preset("power", 1), 1, "1/3", range(2, 9))
    ratios = [float(row[3]) for row in r.rows]
    assert all(1.5 < b / a < 2.5 for a, b in zip(ratios, ratios[1:]))


def test_blowup_alpha_part_c_bounded_partial_sums():
    r = blowup_theorem3(preset("geometric", "1/2"), "1/2", None, range(2, 11), "part_c")
    assert r.verdict == "pass"
    with pytest.raises(DomainError):
        blowup_theorem3(preset("geometric", "1/2"), "1/2", "1/2", [2, 3], "part_c")


def test_blowup_alpha_saturating_ratio_fails():
    # constant weights with alpha = 1/2 at p = 2/3: ratio 2^(n/2)/(2^n+1) decreases
    r = blowup_theorem3(preset("constant"), "1/2", None, range(2, 8), "part_c")
    assert r.verdict == "fail"


def test_norlund_log_blowup():
    r = norlund_log_blowup("9/10", range(2, 65))
    assert r.verdict == "pass"
    assert all(row[3] is True for row in r.rows if row[0] <= 8)


def test_convergence_fejer():
    f = standard_test_function(10)
    r = convergence_experiment(parse_mean("fejer"), f, [8, 256])
    assert r.verdict == "pass"
    assert r.rows[0][1] > r.rows[1][1]


def test_counterexample_resolution():
    assert counterexample(3).resolution == 5


def test_weight_preset_suite():
    r = corollary_presets_suite()
    assert r.verdict == "pass"
    assert [row[0] for row in r.rows] == ["log:1:1", "power:1/2", "norlund_log"]


def test_reports_independent_of_threads():
    q = preset("cesaro", "1/2")
    base = verify_lemma2(q, 3).to_csv()
    assert verify_lemma2(q, 3, threads=4).to_csv() == base
    b1 = blowup_theorem2(preset("constant"), "2/5", range(2, 7)).to_csv()
    assert blowup_theorem2(preset("constant"), "2/5", range(2, 7), threads=3).to_csv() == b1
