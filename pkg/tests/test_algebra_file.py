import json

import pytest

from algeo.algebra_file import algebra_digest, dump_algebra, load_algebra, parse_algebra
from algeo.errors import ParseError, ValidationError
from algeo.field import GF
from algeo.library import BUILTINS, builtin


@pytest.mark.parametrize("name", sorted(BUILTINS) + ["random:7:3:2", "random:0:2:5"])
def test_round_trip(name):
    A = builtin(name)
    B = parse_algebra(dump_algebra(A))
    assert B == A and B.name == A.name and B.basis_names == A.basis_names
    assert dump_algebra(B) == dump_algebra(A)


def test_rational_coefficients_and_default_bracket():
    text = json.dumps({"field": "QQ", "dimension": 1, "mu": [{"i": 0, "j": 0, "k": 0, "c": "-3/4"}]})
    A = parse_algebra(text, "tiny.json")
    assert A.name == "tiny.json" and A.bracket is None
    assert A.mu == {(0, 0, 0): A.field.parse_raw("-3/4")}


def test_prime_field():
    text = json.dumps({"field": "GF(5)", "dimension": 2, "mu": [{"i": 0, "j": 1, "k": 1, "c": 7}]})
    A = parse_algebra(text)
    assert A.field == GF(5) and A.mu == {(0, 1, 1): 2}


def test_characteristic_three_rejected():
    with pytest.raises(ValidationError) as err:
        parse_algebra(json.dumps({"field": "GF(3)", "dimension": 1, "mu": []}))
    assert err.value.invariant == "field"


def test_duplicate_triple_rejected():
    entry = {"i": 0, "j": 0, "k": 0, "c": "1"}
    with pytest.raises(ValidationError) as err:
        parse_algebra(json.dumps({"field": "QQ", "dimension": 1, "mu": [entry, entry]}))
    assert err.value.invariant == "mu.duplicate"


def test_bracket_violating_jacobi_is_named():
    bracket = [{"i": 0, "j": 1, "k": 2, "c": 1}, {"i": 1, "j": 0, "k": 2, "c": -1},
               {"i": 0, "j": 2, "k": 0, "c": 1}, {"i": 2, "j": 0, "k": 0, "c": -1},
               {"i": 1, "j": 2, "k": 2, "c": 1}, {"i": 2, "j": 1, "k": 2, "c": -1}]
    with pytest.raises(ValidationError) as err:
        parse_algebra(json.dumps({"field": "QQ", "dimension": 3, "mu": [], "bracket": bracket}))
    assert err.value.invariant == "bracket.jacobi"
    assert "(e0, e1, e2)" in str(err.value)


def test_malformed_json_reports_position():
    with pytest.raises(ParseError) as err:
        parse_algebra('{"field": "QQ",\n  "dimension": 2,,}')
    assert err.value.position == (2, 18)


@pytest.mark.parametrize("doc, invariant", [
    ({"field": "QQ", "dimension": 2, "mu": [{"i": 0, "j": 2, "k": 0, "c": 1}]}, "mu.index"),
    ({"field": "QQ", "dimension": 2, "mu": [{"i": 0, "j": 1.5, "k": 0, "c": 1}]}, "mu.index"),
    ({"field": "QQ", "dimension": 2, "mu": [{"i": 0, "j": 0, "k": 0}]}, "mu.format"),
    ({"field": "QQ", "dimension": 2, "mu": [{"i": 0, "j": 0, "k": 0, "c": 1.5}]}, "mu.coefficient"),
    ({"field": "QQ", "dimension": 0, "mu": []}, "dimension"),
    ({"field": "QQ", "dimension": 2, "mu": [], "extra": 1}, "file.keys"),
    ({"field": "QQ", "mu": []}, "file.keys"),
    ({"field": "QQ", "dimension": 2, "mu": {}}, "mu.format"),
])
def test_invalid_documents(doc, invariant):
    with pytest.raises(ValidationError) as err:
        parse_algebra(json.dumps(doc))
    assert err.value.invariant == invariant


def test_bad_scalars_and_fields():
    with pytest.raises(ParseError):
        parse_algebra(json.dumps({"field": "QQ", "dimension": 1, "mu": [{"i": 0, "j": 0, "k": 0, "c": "1/0x"}]}))
    with pytest.raises(ParseError):
        parse_algebra(json.dumps({"field": "reals", "dimension": 1, "mu": []}))
    with pytest.raises(ValidationError):
        parse_algebra(json.dumps({"field": "GF(4)", "dimension": 1, "mu": []}))


def test_load_by_name_and_path(tmp_path):
    assert load_algebra("m2q") == builtin("m2q")
    path = tmp_path / "sl2.json"
    path.write_text(dump_algebra(builtin("sl2")))
    assert load_algebra(str(path)) == builtin("sl2")
    with pytest.raises(OSError):
        load_algebra(str(tmp_path / "missing.json"))


def test_digest_ignores_name():
    A = builtin("qz3")
    doc = json.loads(dump_algebra(A))
    doc["name"] = "renamed"
    B = parse_algebra(json.dumps(doc))
    assert algebra_digest(A) == algebra_digest(B)
    assert algebra_digest(A) != algebra_digest(builtin("m2q"))
    assert algebra_digest(A).startswith("sha256:")
