"""Run configuration: JSON loading, schema validation and flag overrides."""

from __future__ import annotations

import copy
import json
from fractions import Fraction
from importlib import resources
from typing import Any, Mapping

import jsonschema

from ..errors import ParameterError
from ..root_system import Functional, RootSystem

CONFIG_VERSION = 1

DEFAULTS: dict[str, Any] = {
    "analysis": {
        "modified": False,
        "estimator": "cumulative",
        "shell_width": 0.5,
        "aperture": 0.1,
        "direction_grid": 8,
        "radius_threshold": 1.0,
        "wall_margin": 1e-2,
        "grid_resolution": 100,
        "metric_scale": 1.0,
    },
    "output": {"formats": ["text"]},
}
GENERATOR_DEFAULTS = {"include_inverses": True, "max_word_length": 8, "memory_cap": 10**7, "workers": 1}


class SchemaError(Exception):
    """The configuration document does not match the published schema."""


def load_schema(name: str = "config.schema.json") -> dict:
    text = resources.files("polytemper.cli").joinpath("schema", name).read_text(encoding="utf-8")
    return json.loads(text)


def validate(doc: Mapping, schema_name: str = "config.schema.json") -> None:
    try:
        jsonschema.validate(doc, load_schema(schema_name))
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{path}: {exc.message}") from None


def load_config(path: str | None) -> dict:
    """Parse and validate a config file (``None`` gives an empty document)."""
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise ParameterError(f"cannot read config {path}: {exc}") from None
    validate(doc)
    return doc


def merge(doc: Mapping, overrides: Mapping[str, Mapping]) -> dict:
    """Defaults, then the config document, then flags (flags win).

    The document itself must be schema-valid; a result that fails validation
    only after the flags are applied is reported as a parameter error.
    """
    validate(doc)
    out = copy.deepcopy(DEFAULTS)
    for section in ("root_system", "generators", "analysis", "output"):
        if section in doc:
            if section == "root_system":
                out[section] = dict(doc[section])
            else:
                out.setdefault(section, {}).update(doc[section])
    for section, values in overrides.items():
        vals = {k: v for k, v in values.items() if v is not None}
        if not vals:
            continue
        if section == "root_system" and "preset" in vals:
            out[section] = vals
        else:
            out.setdefault(section, {}).update(vals)
    if "generators" in out:
        out["generators"] = {**GENERATOR_DEFAULTS, **out["generators"]}
    try:
        validate(out)
    except SchemaError as exc:
        raise ParameterError(f"invalid option value: {exc}") from None
    return out


def parse_number(x) -> float:
    if isinstance(x, bool):
        raise ParameterError("boolean is not a number")
    if isinstance(x, (int, float)):
        return float(x)
    try:
        return float(Fraction(str(x).strip()))
    except (ValueError, ZeroDivisionError):
        raise ParameterError(f"cannot parse number {x!r}") from None


def parse_vector(text: str) -> list[float]:
    return [parse_number(p) for p in text.split(",") if p.strip()]


def parse_functional(rs: RootSystem, spec) -> Functional:
    """``rho``, ``a3``, ``h1``, ``2*a3``, ``3/2*rho`` or std coordinates ``"3,1"`` / list."""
    if isinstance(spec, (list, tuple)):
        return rs.functional([parse_number(x) for x in spec])
    s = str(spec).strip()
    if not s:
        raise ParameterError("empty functional")
    if "*" in s:
        coef, name = s.split("*", 1)
        return parse_number(coef) * parse_functional(rs, name)
    if s[0].isalpha():
        return rs.named(s)
    return rs.functional(parse_vector(s))


def split_family(texts) -> list[str]:
    """Split ``--set`` arguments: ``;`` separates members, and so does ``,`` between names."""
    out: list[str] = []
    for t in texts:
        if ";" in t:
            out += [p.strip() for p in t.split(";") if p.strip()]
            continue
        parts = [p.strip() for p in t.split(",") if p.strip()]
        if parts and all(p[0].isalpha() or "*" in p for p in parts):
            out += parts
        else:
            out.append(t)
    return out
