import json
from fractions import Fraction

import pytest

from core.algebra import Element
from core.bv_kernel import apply_B
from core.errors import ModelIncompleteError, SchemaError
from models.schemas import HepworthModelFile, LieGroupModelFile, RationalActionModelFile
from rules.lie_group import SignMutation
from services.model_loader import build_model, list_catalog, load_model, parse_model, read_model_file, validate_model
from tests.conftest import el


def lie_file(**group):
    return {"schema_version": 1, "kind": "lie_group", "name": "G", "group": {"free_rank": 0, **group}}


def test_catalog_su3():
    description = parse_model("SU(3)")
    assert isinstance(description, LieGroupModelFile)
    assert description.group.free_rank == 0
    assert description.group.torsion_factors == []
    assert description.group.odd_degrees == [3, 5]


def test_catalog_so3():
    group = parse_model("SO(3)").group
    assert (group.free_rank, group.torsion_factors, group.odd_degrees) == (0, [2], [3])


def test_catalog_aliases_and_spacing():
    assert parse_model("S3").name == "SU(2)"
    assert parse_model("su(2)").name == "SU(2)"
    assert parse_model("U(1)").name == "S1"
    assert parse_model("T^2").name == "T2"


def test_catalog_listing():
    names = {entry.name for entry in list_catalog()}
    assert {"S1", "SU(2)", "SO(3)", "U(2)", "SU(3)", "T2", "T3", "LS1", "LS3"} <= names


def test_unknown_catalog_name():
    with pytest.raises(SchemaError):
        parse_model("E8")


@pytest.mark.parametrize("group, field", [
    ({"torsion_factors": ["0"]}, "torsion_factors"),
    ({"torsion_factors": ["2.5"]}, "torsion_factors"),
    ({"odd_degrees": [4]}, "odd_degrees"),
    ({"free_rank": -1}, "free_rank"),
])
def test_schema_errors_name_the_field(group, field):
    with pytest.raises(SchemaError, match=field):
        validate_model(lie_file(**group))


def test_unknown_kind_and_version():
    with pytest.raises(SchemaError):
        validate_model({"schema_version": 1, "kind": "surface", "name": "X"})
    raw = lie_file(odd_degrees=[3])
    raw["schema_version"] = 2
    with pytest.raises(SchemaError, match="schema_version"):
        validate_model(raw)


def test_rationals_are_exact_strings():
    raw = {
        "schema_version": 1, "kind": "rational_action", "name": "R",
        "monoid": {"free_rank": 1}, "manifold": {"generators": [{"name": "d", "degree": -1}]},
        "action": [{"name": "c", "degree": 1, "images": {"d": "1"}}],
        "hur": {"x1": {"c": "-3/7"}},
    }
    description = validate_model(raw)
    assert isinstance(description, RationalActionModelFile)
    assert description.hur["x1"]["c"] == Fraction(-3, 7)
    raw["hur"]["x1"]["c"] = 0.5
    with pytest.raises(SchemaError, match="hur"):
        validate_model(raw)


def test_model_files_on_disk(tmp_path):
    good = tmp_path / "su2.json"
    good.write_text(json.dumps(lie_file(odd_degrees=[3])))
    assert read_model_file(good).group.odd_degrees == [3]
    broken = tmp_path / "broken.json"
    broken.write_text("{ not json")
    with pytest.raises(SchemaError, match="not valid JSON"):
        read_model_file(broken)
    with pytest.raises(SchemaError, match="not found"):
        read_model_file(tmp_path / "missing.json")


def test_mutations_only_for_lie_groups():
    with pytest.raises(SchemaError):
        load_model("LS1", mutation=SignMutation("group", 1))


def test_hepworth_model_file():
    raw = {
        "schema_version": 1, "kind": "hepworth", "name": "circle via σ*",
        "monoid": {"free_rank": 1},
        "manifold": {"name": "S1", "generators": [{"name": "d", "degree": -1}]},
        "action": [{"name": "c", "degree": 1, "images": {"d": "1"}}],
        "sigma": {"x1": {"c": "1"}, "x1^2": {"c": "2"}, "x1^-1": {"c": "-1"}},
    }
    description = validate_model(raw)
    assert isinstance(description, HepworthModelFile)
    model = build_model(description)
    assert model.tag == "hepworth-generic"
    assert apply_B(model, el(model, "x1^2*d")) == el(model, "2*x1^2")
    assert apply_B(model, el(model, "x1^-1*d")) == el(model, "-x1^-1")
    assert apply_B(model, el(model, "d")).is_zero()
    with pytest.raises(ModelIncompleteError, match="x1\\^3"):
        apply_B(model, el(model, "x1^3*d"))


def test_loop_operator_section():
    raw = {
        "schema_version": 1, "kind": "rational_action", "name": "with B_ΩG",
        "monoid": {"free_rank": 0, "spherical": [{"name": "a", "degree": 3}, {"name": "b", "degree": 4}]},
        "manifold": {"name": "pt"},
        "hur": {"a": {}, "b": {}},
        "b_loop": {"entries": {"a": "b"}, "unlisted": "error"},
    }
    model = build_model(validate_model(raw))
    assert apply_B(model, el(model, "a")) == el(model, "b")
    assert model.rule.loop_operator(next(iter(el(model, "a").terms))) == el(model, "b")
    with pytest.raises(ModelIncompleteError):
        apply_B(model, el(model, "a^2"))


def test_tensor_of_two_catalog_models():
    model = load_model("LS1", tensor="LS3")
    assert [g.name for g in model.signature.generators] == ["x", "d", "u2", "d_2"]
    assert apply_B(model, el(model, "x^2*d*u2^3")) == el(model, "2*x^2*u2^3")
    expected = el(model, "2*x^2*u2^3*d_2 - 3*x^2*d*u2^2")
    assert apply_B(model, el(model, "x^2*d*u2^3*d_2")) == expected
    assert apply_B(model, el(model, "x^2*d*u2^3*d_2")) != Element.zero(model.signature)


def test_zero_denominator_in_action_image():
    raw = {
        "schema_version": 1, "kind": "rational_action", "name": "R",
        "monoid": {"free_rank": 1}, "manifold": {"generators": [{"name": "d", "degree": -1}]},
        "action": [{"name": "c", "degree": 1, "images": {"d": "1/0"}}],
        "hur": {"x1": {"c": "1"}},
    }
    with pytest.raises(SchemaError, match="action.c.images"):
        build_model(validate_model(raw))


def test_duplicate_spherical_names_are_a_schema_error():
    raw = {
        "schema_version": 1, "kind": "rational_action", "name": "R",
        "monoid": {"free_rank": 0, "spherical": [{"name": "e", "degree": 2}, {"name": "e", "degree": 4}]},
        "manifold": {"generators": []},
        "hur": {"e": {}},
    }
    with pytest.raises(SchemaError, match="monoid.spherical"):
        validate_model(raw)
