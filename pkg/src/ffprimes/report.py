"""Serialization helpers shared by reports and the command line."""

from __future__ import annotations

import json


def fmt_float(x: float) -> str:
    """17 significant digits, enough to round-trip a double."""
    return format(float(x), ".17g")


def dumps(obj) -> str:
    """Stable JSON text: insertion order kept, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"
