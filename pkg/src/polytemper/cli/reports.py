"""Report envelopes and deterministic serialization."""

from __future__ import annotations

import datetime as _dt
import json
import math
import os
from fractions import Fraction
from typing import Any, Mapping

import numpy as np

from ..root_system import Functional, RootSystem

SCHEMA_VERSION = 1


def jsonable(x: Any) -> Any:
    """Recursively convert to JSON types; infinities become sentinel strings."""
    if isinstance(x, Mapping):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return [jsonable(v) for v in x.tolist()]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating, Fraction)):
        f = float(x)
        if f == math.inf:
            return "+infinity"
        if f == -math.inf:
            return "-infinity"
        if math.isnan(f):
            raise ValueError("NaN in report")
        return f + 0.0
    if isinstance(x, Functional):
        return {"std": jsonable(x.std_coords), "root": jsonable(x.root_coords)}
    if x is None or isinstance(x, str):
        return x
    if hasattr(x, "to_json"):
        return jsonable(x.to_json())
    raise TypeError(f"cannot serialize {type(x).__name__}")


def envelope(command: str, result: Mapping, rs: RootSystem | None = None,
             timestamp: bool = True) -> dict:
    doc: dict = {"schema_version": SCHEMA_VERSION, "command": command}
    if rs is not None:
        doc["root_system"] = rs.preset.to_json()
    if timestamp:
        doc["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    doc["result"] = jsonable(result)
    return doc


def dumps(doc: Mapping) -> str:
    return json.dumps(jsonable(doc), indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False) + "\n"


def aligned(rows) -> str:
    """Two-column aligned text block."""
    rows = [(str(k), str(v)) for k, v in rows]
    if not rows:
        return ""
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}".rstrip() for k, v in rows) + "\n"


def fmt(x) -> str:
    if isinstance(x, str):
        return x
    f = float(x)
    if f == math.inf:
        return "+infinity"
    if f == -math.inf:
        return "-infinity"
    q = Fraction(f).limit_denominator(1000)
    if abs(float(q) - f) <= 1e-12 * max(1.0, abs(f)):
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    return f"{f:.10g}"


def fmt_vec(v) -> str:
    return "(" + ", ".join(fmt(x) for x in np.asarray(v, dtype=float)) + ")"


def write_outputs(out_dir: str | None, files: Mapping[str, str]) -> list[str]:
    """Write ``{name: text}`` under ``out_dir``; returns written paths."""
    if not out_dir:
        return []
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for name, text in files.items():
        p = os.path.join(out_dir, name)
        with open(p, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        paths.append(p)
    return paths
