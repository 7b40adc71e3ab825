import json
from fractions import Fraction

import numpy as np
import pytest
import sympy

from dslab.report import ExperimentReport, format_cell


def sample():
    return ExperimentReport(
        "demo",
        {"p": Fraction(2, 5), "n": [2, 3]},
        ["n", "exact", "approx", "flag"],
        [(2, Fraction(1, 5), 0.1, np.bool_(True)), (3, sympy.sqrt(2) / 32, 0.25, False)],
        "pass",
        {"last": Fraction(3, 4), "count": 2},
        float_columns=frozenset({"approx"}),
    )


def test_format_cell():
    assert format_cell(np.int64(3)) == "3"
    assert format_cell(np.bool_(False)) == "false"
    assert format_cell(0.1) == "0.1"
    assert format_cell(Fraction(-7, 2)) == "-7/2"
    assert format_cell(None) == ""


def test_csv_layout():
    text = sample().to_csv()
    assert "\r" not in text
    lines = text.splitlines()
    assert lines[0] == "n,exact,approx[float],flag"
    assert lines[1] == "2,1/5,0.1,true"
    assert lines[2] == "3,sqrt(2)/32,0.25,false"


def test_json_payload():
    payload = json.loads(sample().to_json())
    assert payload == {
        "experiment": "demo",
        "params": {"p": "2/5", "n": [2, 3]},
        "verdict": "pass",
        "summary_stats": {"last": "3/4", "count": 2},
    }


def test_write(tmp_path):
    csv_path, json_path = sample().write(tmp_path / "out")
    assert open(csv_path, newline="").read() == sample().to_csv()
    assert json.loads(open(json_path).read())["verdict"] == "pass"


def test_validation():
    with pytest.raises(ValueError):
        ExperimentReport("x", {}, ["a"], [], "maybe")
    with pytest.raises(ValueError):
        ExperimentReport("x", {}, ["a"], [(1, 2)], "pass")
    assert not ExperimentReport("x", {}, ["a"], [], "fail").passed
