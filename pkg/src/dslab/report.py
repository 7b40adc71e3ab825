"""Experiment reports and their CSV / JSON serialisation."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import Surd, format_exact, is_exact

__all__ = ["VERDICTS", "ExperimentReport", "format_cell"]

VERDICTS = ("pass", "fail", "inconclusive")


def format_cell(value) -> str:
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if is_exact(value) or isinstance(value, Surd):
        return format_exact(value)
    return str(value)


def _json_value(value):
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, (bool, str, float)) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    if isinstance(value, dict):
        return {str(k): _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return format_cell(value)


@dataclass
class ExperimentReport:
    """Rows of one experiment plus a verdict.

    ``float_columns`` names the columns holding floating-point values; their
    CSV headers get a ``[float]`` tag so exact and approximate output never
    mix silently.
    """

    experiment: str
    params: dict
    columns: list[str]
    rows: list[tuple]
    verdict: str
    summary: dict = field(default_factory=dict)
    float_columns: frozenset[str] = frozenset()

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"verdict must be one of {VERDICTS}")
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError("row width does not match the header")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def header(self) -> list[str]:
        return [f"{c}[float]" if c in self.float_columns else c for c in self.columns]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header())
        for row in self.rows:
            writer.writerow([format_cell(v) for v in row])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "experiment": self.experiment,
            "params": _json_value(self.params),
            "verdict": self.verdict,
            "summary_stats": _json_value(self.summary),
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def write(self, prefix) -> tuple[str, str]:
        """Write ``<prefix>.csv`` and ``<prefix>.json``; return both paths."""
        csv_path, json_path = f"{prefix}.csv", f"{prefix}.json"
        with open(csv_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.to_csv())
        with open(json_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.to_json())
        return csv_path, json_path
