"""JSON envelopes for CLI output.

High-precision numbers are written as decimal strings carrying
``numeric_digits`` significant digits; binary floats are written as their
shortest round-tripping decimal string.  Integers stay JSON integers since
they are exact.
"""

from __future__ import annotations

import dataclasses
import datetime as _dt
import enum
import json
from fractions import Fraction
from typing import Any

import mpmath

from . import __version__

SCHEMA_VERSION = 1


def decimal_string(value, digits: int) -> str:
    return mpmath.nstr(value, digits, strip_zeros=False, min_fixed=-4, max_fixed=8)


def to_jsonable(obj: Any, digits: int) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if hasattr(obj, "_mpf_"):
        return decimal_string(obj, digits)
    if dataclasses.is_dataclass(obj):
        return {
            f.name: to_jsonable(getattr(obj, f.name), digits)
            for f in dataclasses.fields(obj)
            if f.compare  # timings are excluded from equality and from payloads
        }
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v, digits) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def envelope(subcommand: str, config: dict, payload: Any, status: str, digits: int,
             timing: dict | None = None) -> dict:
    """Wrap a payload.  ``timestamp`` and ``timing`` are the only fields that
    vary between identical runs."""
    return {
        "schema": SCHEMA_VERSION,
        "tool": "errorlab",
        "version": __version__,
        "subcommand": subcommand,
        "config": to_jsonable(config, digits),
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(),
        "numeric_digits": digits,
        "status": status,
        "payload": to_jsonable(payload, digits),
        "timing": to_jsonable(timing or {}, digits),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False)
