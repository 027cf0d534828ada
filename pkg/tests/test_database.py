import json

import pytest

from HoCat.database.database import (
    WeakEquivalences,
    load_battery,
    load_functor,
    load_instance,
    parse_category,
    parse_functor,
    parse_instance,
    save_instance,
    serialize_category,
    serialize_instance,
)
from HoCat.database.JsonDb import JsonDb
from HoCat.engine import catalog
from HoCat.engine.errors import InstanceError
from HoCat.engine.fincat import FinCategory
from HoCat.engine.model import ModelData

from conftest import BATTERY_DIR, FUNCTORS, INSTANCES


def test_json_db_crud(tmp_path):
    db = JsonDb(tmp_path / "corpus")
    assert db.get_all_id() == []
    db.update_document("b", {"name": "b", "objects": []})
    db.update_document("a", {"name": "a"})
    db.update_document("b", {"W": ["f"]})
    assert db.get_all_id() == ["a", "b"]
    assert db.read_document("b") == {"name": "b", "objects": [], "W": ["f"]}
    assert db.read_document("b", projection=["W"]) == {"W": ["f"]}
    db.delete_document("a")
    db.delete_document("a")
    assert db.total_documents() == 1


def test_unreadable_documents(tmp_path):
    (tmp_path / "broken.json").write_text("{not json", encoding="utf-8")
    (tmp_path / "list.json").write_text("[1, 2]", encoding="utf-8")
    db = JsonDb(tmp_path)
    for document_id in ("broken", "list", "missing"):
        with pytest.raises(InstanceError):
            db.read_document(document_id)


def test_shipped_battery_matches_the_catalog():
    battery = load_battery(BATTERY_DIR)
    assert battery.name == "default"
    assert list(battery.members) == catalog.standard_categories()
    assert battery.names() == ["arrow", "discrete2", "idempotent", "iso2", "parallel", "point", "z2"]


def test_battery_size_limits(tmp_path):
    assert len(load_battery(BATTERY_DIR, max_objects=2, max_morphisms=3)) == 5
    assert load_battery(BATTERY_DIR, max_objects=1).names() == ["idempotent", "point", "z2"]
    with pytest.raises(InstanceError):
        load_battery(tmp_path)
    with pytest.raises(InstanceError):
        load_battery(tmp_path / "nowhere")


def test_instance_kinds():
    assert isinstance(load_instance(INSTANCES / "arrow_f.json"), WeakEquivalences)
    md = load_instance(INSTANCES / "triv_diamond.json")
    assert isinstance(md, ModelData)
    assert md.cat.name == "diamond"
    assert md.Q is not None and md.Q.transformation.is_identity
    assert isinstance(parse_instance(serialize_category(catalog.z2())), FinCategory)


def test_partial_composition_is_invalid():
    document = serialize_category(catalog.arrow())
    document["composition"] = document["composition"][:-1]
    with pytest.raises(InstanceError):
        parse_category(document)


def test_unknown_names_are_invalid(diamond):
    document = serialize_category(catalog.arrow())
    document["identities"]["a"] = "nope"
    with pytest.raises(InstanceError):
        parse_category(document)
    with pytest.raises(InstanceError):
        parse_instance(dict(serialize_category(diamond), structure="quillen"))


def test_save_and_load_a_model(tmp_path, triv_z2plus):
    path = tmp_path / "saved.json"
    save_instance(path, triv_z2plus)
    loaded = load_instance(path)
    assert loaded.cat == triv_z2plus.cat
    assert loaded.W.members == triv_z2plus.W.members
    assert loaded.fact1 == triv_z2plus.fact1
    assert loaded.Q.transformation.components == triv_z2plus.Q.transformation.components
    assert json.loads(path.read_text(encoding="utf-8"))["category"] == "z2+"


def test_functor_loading(triv_z2plus):
    c = triv_z2plus.cat
    F = load_functor(FUNCTORS / "collapse_z2plus.json", c, c)
    assert F.name == "collapse_z2plus"
    assert F.mor(c.morphism_id("s")) == c.morphism_id("e")
    assert F.mor(c.morphism_id("e")) == c.morphism_id("e")


def test_broken_functor_is_invalid(tmp_path, triv_z2plus):
    c = triv_z2plus.cat
    (tmp_path / "bad.json").write_text(
        json.dumps({"objects": {"bot": "bot", "*": "*", "top": "top"}, "morphisms": {"bot->*": "bot->top"}}),
        encoding="utf-8",
    )
    with pytest.raises(InstanceError):
        load_functor(tmp_path / "bad.json", c, c)


@pytest.fixture
def arrow_model_document():
    return serialize_instance(catalog.triv_model(catalog.arrow(), name="triv_arrow"))


def test_model_documents_use_named_keys(arrow_model_document):
    document = arrow_model_document
    assert document["classes"]["Fib"] == ["id_a", "id_b", "f"]
    assert (document["initial"], document["terminal"]) == ("a", "b")
    assert document["fact_cof_trivfib"]["f"] == {"first": "f", "second": "id_b"}
    assert document["fact_trivcof_fib"]["f"] == {"first": "id_a", "second": "f"}
    for key in ("W", "Cof", "Fib", "init", "term", "fact1", "fact2"):
        assert key not in document

    md = parse_instance(document)
    expected = catalog.triv_model(catalog.arrow())
    assert isinstance(md, ModelData)
    assert (md.W, md.Cof, md.Fib) == (expected.W, expected.Cof, expected.Fib)
    assert (md.init, md.term, md.fact1, md.fact2) == (expected.init, expected.term, expected.fact1, expected.fact2)


def test_older_model_keys_are_still_read(arrow_model_document):
    document = dict(arrow_model_document)
    classes = document.pop("classes")
    document.update(classes)
    document["init"], document["term"] = document.pop("initial"), document.pop("terminal")
    for old, new in (("fact1", "fact_cof_trivfib"), ("fact2", "fact_trivcof_fib")):
        document[old] = {f: [pair["first"], pair["second"]] for f, pair in document.pop(new).items()}
    assert parse_instance(document).fact2 == parse_instance(arrow_model_document).fact2


def test_incomplete_model_document_is_invalid(arrow_model_document):
    del arrow_model_document["fact_trivcof_fib"]
    with pytest.raises(InstanceError, match="fact_trivcof_fib"):
        parse_instance(arrow_model_document)


def test_shipped_explicit_model_matches_the_catalog(collapse_diamond):
    md = load_instance(INSTANCES / "collapse_diamond.json")
    assert md.cat == collapse_diamond.cat
    assert (md.W, md.Cof, md.Fib) == (collapse_diamond.W, collapse_diamond.Cof, collapse_diamond.Fib)
    assert (md.fact1, md.fact2) == (collapse_diamond.fact1, collapse_diamond.fact2)
    assert md.Q.transformation.is_identity


def _break(document: dict, damage: str) -> None:
    if damage == "identities":
        document["identities"] = list(document["identities"].values())
    elif damage == "composition":
        document["composition"][0] = "id_a"
    elif damage == "classes":
        document["classes"] = ["id_a"]
    elif damage == "class members":
        document["classes"]["W"] = [["f"]]
    elif damage == "factorization":
        document["fact_cof_trivfib"]["f"] = "f"
    elif damage == "replacement":
        document["Q"] = ["id_a", "id_b"]
    elif damage == "replacement map":
        document["Q"] = {"obj_map": ["a", "b"], "mor_map": {}, "q_components": {}}


@pytest.mark.parametrize(
    "damage",
    ["identities", "composition", "classes", "class members", "factorization", "replacement", "replacement map"],
)
def test_malformed_documents_are_invalid(arrow_model_document, damage):
    _break(arrow_model_document, damage)
    with pytest.raises(InstanceError):
        parse_instance(arrow_model_document)


def test_malformed_functor_maps_are_invalid(triv_z2plus):
    c = triv_z2plus.cat
    for document in ({"obj_map": ["bot", "*", "top"]}, {"obj_map": {x: x for x in c.objects}, "mor_map": [1]}):
        with pytest.raises(InstanceError):
            parse_functor(document, c, c)
