import json
from pathlib import Path

import pytest

from g2contact.algebra.ratfunc import rf_var
from g2contact.checks import run_check
from g2contact.errors import ParseError
from g2contact.manifest import manifest_checks, parse_manifest

CASE1 = Path(__file__).resolve().parents[1] / "manifests" / "case1.json"


def _text(obj):
    return json.dumps(obj, indent=2)


def test_chart_and_tensor_block():
    m = parse_manifest(_text({
        "charts": {"T": {"coords": ["a", "b", "c", "e", "f"]}},
        "tensors": {"g": {"chart": "T", "kind": "symmetric", "expr": "(+ (* a (^ da 2)) (* db df))"},
                    "w": {"chart": "J", "kind": "one-form", "expr": "(+ dz (* -1 p dx))"}},
    }))
    assert m.charts["T"].coords == ("a", "b", "c", "e", "f")
    assert m.tensors["g"].degree == 2
    assert m.tensors["w"].coefficient("x") == -rf_var("p")


def test_undeclared_symbol():
    text = _text({"tensors": {"g": {"chart": "J", "kind": "symmetric", "expr": "(* dx da)"}}})
    with pytest.raises(ParseError) as err:
        parse_manifest(text)
    assert "undeclared symbol 'da'" in str(err.value)
    line = text.splitlines()[err.value.line - 1]
    assert line[err.value.column - 1:].startswith("da")


def test_duplicate_chart_name():
    text = '{"charts": {"T": {"coords": ["a"]},\n "T": {"coords": ["b"]}}}'
    with pytest.raises(ParseError) as err:
        parse_manifest(text)
    assert "duplicate" in str(err.value) and err.value.line == 2


def test_name_shared_between_blocks():
    text = _text({"charts": {"T": {"coords": ["a"]}},
                  "scalars": {"T": "1"}})
    with pytest.raises(ParseError, match="duplicate name 'T'"):
        parse_manifest(text)


@pytest.mark.parametrize("obj, match", [
    ({"chartz": {}}, "unknown key 'chartz'"),
    ({"charts": {"T": {"coords": ["a"], "dim": 1}}}, "unknown key 'dim'"),
    ({"tensors": {"g": {"chart": "K", "kind": "symmetric", "expr": "1"}}}, "undeclared chart"),
    ({"tensors": {"g": {"chart": "J", "kind": "one-form", "expr": "(* dx dy)"}}}, "linear"),
    ({"tensors": {"g": {"chart": "J", "kind": "symmetric", "expr": "(+ dx (* dy dy))"}}},
     "homogeneous"),
    ({"checks": [{"id": "a", "type": "noth", "hmodel": "h"}]}, "undeclared hmodel"),
    ({"checks": [{"id": "a", "type": "bogus"}]}, "type must be"),
    ({"hmodels": {"h": {"kind": "explicit", "var": "q", "H": "1"}}}, "var must be"),
    ({"scalars": {"k": "x"}}, "undeclared symbol"),
])
def test_rejections(obj, match):
    with pytest.raises(ParseError, match=match):
        parse_manifest(_text(obj))


def test_invalid_json_is_positioned():
    with pytest.raises(ParseError) as err:
        parse_manifest('{"charts": {\n  "T": }')
    assert err.value.line == 2


def test_scalars_substitute():
    m = parse_manifest(_text({"scalars": {"k": "(/ 1 4)", "k2": "(* k k)"},
                              "checks": [{"id": "z", "type": "zero", "expr": "(+ k2 -1/16)"}]}))
    (check,) = manifest_checks(m)
    assert run_check(check).status == "pass"


def test_sample_manifest_checks_pass():
    m = parse_manifest(CASE1.read_text())
    reports = [run_check(c) for c in manifest_checks(m)]
    assert [r.check_id for r in reports] == sorted(r.check_id for r in reports)
    assert all(r.status == "pass" for r in reports)


def test_zero_check_fails_honestly():
    m = parse_manifest(_text({"checks": [{"id": "z", "type": "zero", "expr": "(+ x 1)"}]}))
    rep = run_check(manifest_checks(m)[0])
    assert (rep.status, rep.residual_summary) == ("fail", "(+ x 1)")
