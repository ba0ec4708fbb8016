from __future__ import annotations

import json

import pytest

from tamecurve.errors import SpecParseError
from tamecurve.reps import OneFour, TwoTwo
from tamecurve.specfile import COMMANDS, bundled_names, load_spec, parse_spec, resolve

TOWER = """{
  "base_field": {"kind": "finite", "p": 3},
  "bimodule": {
    "kind": "tower",
    "c0": "2",
    "a0": "1",
    "a1": "1"
  }
}"""


def test_minimal_tower_spec():
    spec = parse_spec(TOWER, "t")
    assert isinstance(spec.bimodule, OneFour)
    assert spec.kind == "tower"
    assert spec.commands == list(COMMANDS)
    assert spec.base_field.is_finite


def test_unknown_bimodule_key_reports_line_and_field():
    text = TOWER.replace('"a1": "1"', '"a1": "1",\n    "bogus": 3')
    with pytest.raises(SpecParseError) as info:
        parse_spec(text)
    assert info.value.field == "bogus"
    assert info.value.line == 8


def test_unknown_top_level_key():
    raw = json.loads(TOWER)
    raw["extra"] = {}
    with pytest.raises(SpecParseError) as info:
        parse_spec(json.dumps(raw, indent=1))
    assert info.value.field == "extra" and info.value.line is not None


def test_invalid_json_reports_line():
    with pytest.raises(SpecParseError) as info:
        parse_spec('{\n  "base_field": {\n  "kind": }\n}')
    assert info.value.line == 3


def test_bad_scalar_is_attributed():
    with pytest.raises(SpecParseError) as info:
        parse_spec(TOWER.replace('"c0": "2"', '"c0": "2/x"'))
    assert info.value.field == "c0"


def test_reducible_tower_is_a_spec_error():
    with pytest.raises(SpecParseError) as info:
        parse_spec(TOWER.replace('"c0": "2"', '"c0": "1"'))
    assert info.value.field == "bimodule"


def test_unknown_option_and_command():
    raw = json.loads(TOWER)
    raw["options"] = {"commands": ["points", "fly"]}
    with pytest.raises(SpecParseError):
        parse_spec(json.dumps(raw))
    raw["options"] = {"colour": "red"}
    with pytest.raises(SpecParseError) as info:
        parse_spec(json.dumps(raw))
    assert info.value.field == "colour"


def test_negative_max_degree_rejected():
    raw = json.loads(TOWER)
    raw["options"] = {"max_degree": -1}
    with pytest.raises(SpecParseError):
        parse_spec(json.dumps(raw))


def test_non_simple_two_two_needs_finite_field():
    text = '{"base_field": {"kind": "rational"}, "bimodule": {"kind": "twotwo", "n": 2}}'
    with pytest.raises(SpecParseError):
        parse_spec(text)


def test_kronecker_spec():
    spec = parse_spec('{"base_field": {"kind": "finite", "p": 5}, "bimodule": {"kind": "kronecker"}}')
    assert isinstance(spec.bimodule, TwoTwo) and spec.bimodule.degree == 1


@pytest.mark.parametrize("name", bundled_names())
def test_bundled_specs_parse(name):
    spec = load_spec(name)
    assert spec.name == name
    assert set(spec.commands) <= set(COMMANDS)


def test_resolve_falls_back_to_bundled_stem():
    name, text = resolve("examples/f3_tower.json")
    assert name == "f3_tower" and '"tower"' in text
    with pytest.raises(SpecParseError):
        resolve("no_such_curve")


def test_resolve_prefers_a_real_file(tmp_path):
    path = tmp_path / "mine.json"
    path.write_text(TOWER)
    assert load_spec(str(path)).name == "mine"
