"""JSON assessment files.

    {
      "space_size": 3,
      "gambles": [{"values": [0, 1, 0.5], "lower": 0.46}, ...],
      "labels": ["f1", ...]            # optional
    }
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import Assessment

TOP_KEYS = {"space_size", "gambles", "labels"}
ITEM_KEYS = {"values", "lower"}


class AssessmentFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


def _number(x, what: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise AssessmentFileError(f"{what} must be a number, got {x!r}")
    return float(x)


def parse_assessment(text: str, strict: bool = True) -> Assessment:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AssessmentFileError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise AssessmentFileError("top level must be an object")
    if strict and set(doc) - TOP_KEYS:
        raise AssessmentFileError(f"unknown keys: {sorted(set(doc) - TOP_KEYS)}")
    s = doc.get("space_size")
    if isinstance(s, bool) or not isinstance(s, int) or s < 1:
        raise AssessmentFileError("space_size must be a positive integer")
    items = doc.get("gambles", [])
    if not isinstance(items, list):
        raise AssessmentFileError("gambles must be an array")
    gambles, lowers = [], []
    for i, item in enumerate(items):
        if not isinstance(item, dict) or not ITEM_KEYS <= set(item):
            raise AssessmentFileError(f"gamble {i} must be an object with 'values' and 'lower'")
        if strict and set(item) - ITEM_KEYS:
            raise AssessmentFileError(f"gamble {i}: unknown keys {sorted(set(item) - ITEM_KEYS)}")
        values = item["values"]
        if not isinstance(values, list) or len(values) != s:
            raise AssessmentFileError(f"gamble {i}: 'values' must be an array of {s} numbers")
        gambles.append([_number(v, f"gamble {i} value") for v in values])
        lowers.append(_number(item["lower"], f"gamble {i} lower"))
    labels = doc.get("labels", [])
    if not isinstance(labels, list) or (labels and len(labels) != len(items)):
        raise AssessmentFileError("labels must be an array with one entry per gamble")
    try:
        return Assessment(s, gambles, lowers, tuple(str(x) for x in labels))
    except ValueError as exc:
        raise AssessmentFileError(str(exc)) from None


def load_assessment(path, strict: bool = True) -> Assessment:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise AssessmentFileError(f"cannot read {path}: {exc}") from None
    return parse_assessment(text, strict)


def dump_assessment(a: Assessment) -> str:
    doc = {
        "space_size": a.space_size,
        "gambles": [
            {"values": [float(v) for v in g], "lower": float(low)} for g, low in a.items()
        ],
        "labels": list(a.labels),
    }
    return json.dumps(doc, indent=2)
