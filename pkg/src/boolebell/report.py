"""Deterministic report serialization: sorted keys, fixed float format.

Floats are rendered at 12 significant digits; dict keys are emitted in
sorted order; exact rationals become integers or 'p/q' strings.  Identical
inputs therefore serialize to identical bytes, which makes CLI outputs
directly diffable against goldens.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from importlib import resources

SIGNIFICANT_DIGITS = 12


def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("reports may not contain NaN or infinity")
    if x == 0.0:
        return "0"
    return "%.*g" % (SIGNIFICANT_DIGITS, x)


def _fraction_token(value: Fraction):
    return int(value) if value.denominator == 1 else str(value)


def dumps(value, indent: int = 2) -> str:
    """Serialize a report to canonical JSON text (without trailing newline)."""

    def render(node, depth):
        pad = " " * (indent * depth)
        inner = " " * (indent * (depth + 1))
        if isinstance(node, dict):
            if not node:
                return "{}"
            parts = []
            for key in sorted(str(k) for k in node):
                parts.append(f"{inner}{json.dumps(key)}: {render(node[key], depth + 1)}")
            return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
        if isinstance(node, (list, tuple)):
            return "[" + ", ".join(render(item, depth) for item in node) + "]"
        if isinstance(node, bool):
            return "true" if node else "false"
        if isinstance(node, Fraction):
            return render(_fraction_token(node), depth)
        if isinstance(node, int):
            return str(node)
        if isinstance(node, float):
            return format_float(node)
        if isinstance(node, str):
            return json.dumps(node)
        if node is None:
            return "null"
        if hasattr(node, "item"):  # numpy scalars
            return render(node.item(), depth)
        raise TypeError(f"cannot serialize {type(node).__name__} into a report")

    return render(value, 0)


def csv_lines(header, rows) -> list[str]:
    """CSV text rows with the same fixed float formatting as the JSON path."""

    def cell(value):
        if isinstance(value, bool):
            return "1" if value else "0"
        if isinstance(value, float):
            return format_float(value)
        if isinstance(value, Fraction):
            return str(_fraction_token(value))
        return str(value)

    lines = [",".join(header)]
    lines.extend(",".join(cell(v) for v in row) for row in rows)
    return lines


def report_schema() -> dict:
    """The published JSON schema every CLI report validates against."""
    text = resources.files("boolebell").joinpath("schemas/report.schema.json").read_text()
    return json.loads(text)
