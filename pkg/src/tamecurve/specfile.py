"""Curve specification files.

A spec is a JSON object with three keys::

    {
      "base_field": {"kind": "finite", "p": 3},
      "bimodule": {"kind": "tower", "c0": "2", "a0": "1", "a1": "1"},
      "options": {"max_degree": 2, "description": "..."}
    }

Field kinds: ``finite`` (p, m, modulus, name), ``rationals`` and
``ratfunc`` (p, vars, display).  Bimodule kinds: ``tower`` (c1, c0, d1,
a0, a1 for x² = c1·x + c0, y² = d1·y + a0 + a1·x, yx = xy),
``quaternion`` (variant ``charNot2`` with a, b, or ``char2`` with c0,
a0), ``twotwo`` (n, simple, label) and ``kronecker``.  Scalars are
strings such as ``"u^2+v^2"`` or ``"-1/2"`` over the base field's
generators.  Unknown keys are rejected.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path
from typing import Any

from .algebras import QuarticTowerSpec, QuaternionSpec, build_algebra
from .errors import SpecParseError, TameCurveError
from .fields import Field, field_from_descriptor
from .reps import OneFour, TwoTwo

TOP_KEYS = {"base_field", "bimodule", "options"}
OPTION_KEYS = {"max_degree", "search_bound", "seed", "format", "description", "commands"}
BIMODULE_KEYS = {
    "tower": {"kind", "c1", "c0", "d1", "a0", "a1"},
    "quaternion": {"kind", "variant", "a", "b", "c0", "a0"},
    "twotwo": {"kind", "n", "simple", "label"},
    "kronecker": {"kind"},
}
COMMANDS = ("classify", "points", "algebra", "ghosts", "ladder-verify", "ar-translate", "function-field")


@dataclass
class CurveSpec:
    name: str
    base_field: Field
    bimodule: Any  # OneFour or TwoTwo
    options: dict = dc_field(default_factory=dict)
    raw: dict = dc_field(default_factory=dict)

    @property
    def kind(self) -> str:
        return self.raw["bimodule"]["kind"]

    @property
    def commands(self) -> list[str]:
        return list(self.options.get("commands", COMMANDS))

    def describe(self) -> dict:
        return {"name": self.name, "base_field": self.raw["base_field"], "bimodule": self.raw["bimodule"]}


def _line_of(text: str, key: str) -> int | None:
    m = re.search(rf'"{re.escape(key)}"\s*:', text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _fail(text: str, message: str, key: str) -> SpecParseError:
    return SpecParseError(message, field=key, line=_line_of(text, key))


def _reject(text: str, obj: dict, allowed: set, where: str):
    extra = sorted(set(obj) - allowed)
    if extra:
        raise _fail(text, f"unknown key {extra[0]!r} in {where}", extra[0])


def _scalar(text: str, k: Field, obj: dict, key: str, default: str | None = None):
    if key not in obj:
        if default is None:
            raise _fail(text, f"missing scalar {key!r}", key)
        return k.parse(default)
    value = obj[key]
    if not isinstance(value, (str, int)) or isinstance(value, bool):
        raise _fail(text, f"scalar {key!r} must be a string or integer", key)
    try:
        return k.parse(str(value))
    except SpecParseError as exc:
        raise SpecParseError(str(exc), field=key, line=_line_of(text, key)) from None
    except (TameCurveError, ValueError, ZeroDivisionError) as exc:
        raise _fail(text, f"bad scalar {key!r}: {exc}", key) from None


def parse_spec(text: str, name: str = "<spec>") -> CurveSpec:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(raw, dict):
        raise SpecParseError("a spec must be a JSON object", line=1)
    _reject(text, raw, TOP_KEYS, "the spec")
    for key in ("base_field", "bimodule"):
        if not isinstance(raw.get(key), dict):
            raise _fail(text, f"missing object {key!r}", key) if key in raw else SpecParseError(f"missing object {key!r}", field=key)
    options = raw.get("options", {})
    if not isinstance(options, dict):
        raise _fail(text, "options must be an object", "options")
    _reject(text, options, OPTION_KEYS, "options")
    for key in ("max_degree", "search_bound", "seed"):
        if key in options and (not isinstance(options[key], int) or isinstance(options[key], bool) or options[key] < 0):
            raise _fail(text, f"option {key!r} must be a non-negative integer", key)
    for cmd in options.get("commands", []):
        if cmd not in COMMANDS:
            raise _fail(text, f"unknown command {cmd!r}", "commands")
    try:
        k = field_from_descriptor(raw["base_field"])
    except SpecParseError as exc:
        raise SpecParseError(str(exc), field=exc.field, line=_line_of(text, exc.field or "base_field")) from None
    except (KeyError, TypeError, ValueError) as exc:
        raise _fail(text, f"bad base_field: {exc}", "base_field") from None
    bim_raw = raw["bimodule"]
    kind = bim_raw.get("kind")
    if kind not in BIMODULE_KEYS:
        raise _fail(text, f"unknown bimodule kind {kind!r}", "kind")
    _reject(text, bim_raw, BIMODULE_KEYS[kind], "bimodule")
    bimodule = _build_bimodule(text, k, kind, bim_raw)
    return CurveSpec(name, k, bimodule, options, raw)


def _build_bimodule(text: str, k: Field, kind: str, obj: dict):
    try:
        if kind == "tower":
            spec = QuarticTowerSpec(
                k,
                _scalar(text, k, obj, "c1", "0"),
                _scalar(text, k, obj, "c0"),
                _scalar(text, k, obj, "d1", "0"),
                _scalar(text, k, obj, "a0"),
                _scalar(text, k, obj, "a1", "0"),
            )
            return OneFour(build_algebra(spec))
        if kind == "quaternion":
            variant = obj.get("variant", "charNot2")
            if variant == "charNot2":
                spec = QuaternionSpec.char_not_2(k, _scalar(text, k, obj, "a"), _scalar(text, k, obj, "b"))
            elif variant == "char2":
                spec = QuaternionSpec.char_2(k, _scalar(text, k, obj, "c0"), _scalar(text, k, obj, "a0"))
            else:
                raise _fail(text, f"unknown quaternion variant {variant!r}", "variant")
            return OneFour(build_algebra(spec))
        if kind == "twotwo":
            n = obj.get("n", 1)
            if not isinstance(n, int) or n < 1:
                raise _fail(text, "n must be a positive integer", "n")
            simple = bool(obj.get("simple", False))
            if not simple and not k.is_finite:
                raise _fail(text, "non-simple (2,2)-bimodules are supported over finite fields", "n")
            return TwoTwo(k, n, simple=simple, label=str(obj.get("label", "")))
        return TwoTwo(k, 1, label="Kronecker")
    except SpecParseError:
        raise
    except (TameCurveError, ValueError) as exc:
        raise _fail(text, f"invalid bimodule: {exc}", "bimodule") from None


def bundled_names() -> list[str]:
    folder = resources.files("tamecurve") / "curves"
    return sorted(p.name[: -len(".json")] for p in folder.iterdir() if p.name.endswith(".json"))


def resolve(path_or_name: str) -> tuple[str, str]:
    """(name, text) for a file path or the name of a bundled curve."""
    p = Path(path_or_name)
    if p.is_file():
        return p.stem, p.read_text()
    stem = p.stem if p.suffix == ".json" else p.name
    candidate = resources.files("tamecurve") / "curves" / f"{stem}.json"
    if candidate.is_file():
        return stem, candidate.read_text()
    raise SpecParseError(f"no spec file or bundled curve named {path_or_name!r}")


def load_spec(path_or_name: str) -> CurveSpec:
    name, text = resolve(path_or_name)
    return parse_spec(text, name)
