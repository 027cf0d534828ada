import json

import pytest

from HoCat.__main__ import main
from HoCat.database.database import serialize_category
from HoCat.engine import catalog

from conftest import FUNCTORS, INSTANCES


def run(capsys, *argv) -> tuple:
    code = main(list(argv))
    return code, capsys.readouterr().out


def instance(name: str) -> str:
    return str(INSTANCES / f"{name}.json")


def functor(name: str) -> str:
    return str(FUNCTORS / f"{name}.json")


def test_validate_model(capsys):
    code, out = run(capsys, "validate", "--instance", instance("triv_diamond"), "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["verdict"] == "pass"
    assert "whitehead" in report["results"]


def test_validate_partial_table(capsys, tmp_path):
    document = serialize_category(catalog.z2())
    document["composition"] = document["composition"][1:]
    path = tmp_path / "partial.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    code, out = run(capsys, "validate", "--instance", str(path))
    assert code == 2
    assert "INVALID" in out


def test_missing_instance_is_a_usage_error(capsys, tmp_path):
    code, _ = run(capsys, "validate", "--instance", str(tmp_path / "nothing.json"))
    assert code == 2


def test_build_localize_writes_the_report(capsys, tmp_path):
    output = tmp_path / "report.json"
    code, _ = run(capsys, "build", "localize", "--instance", instance("arrow_f"), "--output", str(output))
    assert code == 0
    report = json.loads(output.read_text(encoding="utf-8"))
    assert len(report["results"]["localization"]["morphisms"]) == 4


def test_build_ho(capsys):
    code, out = run(capsys, "build", "ho", "--instance", instance("collapse_diamond"), "--route", "both", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["results"]["homotopy category"]["morphisms"]) == 16


def test_build_needs_a_model(capsys):
    code, _ = run(capsys, "build", "hok", "--instance", instance("iso2"))
    assert code == 2


def test_compare_ks(capsys):
    code, out = run(
        capsys, "compare", "ks", "--instance", instance("triv_diamond"), "--functor", functor("identity_diamond"),
        "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["results"]["compare ks"]["ok"]


def test_derive_reports_the_precondition_counterexample(capsys):
    code, out = run(
        capsys, "derive", "k",
        "--instance", instance("collapse_diamond"),
        "--target-instance", instance("triv_diamond"),
        "--functor", functor("collapse_to_triv_diamond"),
        "--format", "json",
    )
    assert code == 1
    assert "bot->x" in json.loads(out)["counterexamples"]


def test_derive_both_routes(capsys):
    code, out = run(
        capsys, "derive", "k", "--route", "both",
        "--instance", instance("triv_z2plus"), "--functor", functor("collapse_z2plus"), "--format", "json",
    )
    assert code == 0
    results = json.loads(out)["results"]
    assert set(results) == {"K derived functor along ctilde", "K derived functor along q"}


def test_classify_localization(capsys):
    code, out = run(capsys, "classify", "--instance", instance("arrow_f"), "--battery-name", "tiny", "--format", "json")
    assert code == 0
    flags = json.loads(out)["results"]["witness"]["flags"]
    assert flags["strict"]["status"] == "verified"


def test_small_budget_is_refused(capsys):
    code, out = run(capsys, "build", "hok", "--instance", instance("triv_diamond"), "--budget", "1")
    assert code == 3
    assert "REFUSED" in out


@pytest.mark.parametrize("budget", ["0", "-5"])
def test_nonpositive_budget_is_invalid(capsys, budget):
    code, _ = run(capsys, "build", "hok", "--instance", instance("triv_diamond"), "--budget", budget)
    assert code == 2


@pytest.mark.parametrize("witness", ["ho", "hok"])
def test_classify_model_witnesses(capsys, witness):
    code, out = run(
        capsys, "classify", "--instance", instance("triv_diamond"), "--witness", witness,
        "--battery-name", "tiny", "--format", "json",
    )
    assert code == 0, out
    flags = json.loads(out)["results"]["witness"]["flags"]
    assert flags["weak"]["status"] == "verified"


def test_validate_explicit_model_file(capsys):
    code, out = run(capsys, "validate", "--instance", instance("collapse_diamond"), "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["results"]["universal objects"]["initial"] == {"object": "bot", "isomorphisms": {"bot": "id_bot"}}
    assert set(report["results"]["homotopy relations"]["left"].values()) == {"cylinder objects"}


def test_validate_reports_isomorphic_universal_objects(capsys):
    code, out = run(capsys, "validate", "--instance", instance("iso2"), "--format", "json")
    assert code == 0
    assert json.loads(out)["results"]["universal objects"]["terminal"]["isomorphisms"] == {"a": "id_a", "b": "u"}


def test_build_reports_the_homotopy_relation(capsys):
    code, out = run(capsys, "build", "ho", "--instance", instance("triv_z2plus"), "--format", "json")
    assert code == 0
    relations = json.loads(out)["results"]["homotopy relations"]
    assert relations["left"]["*"] == "cylinder spans"
    assert relations["right"]["*"] == "path spans"


def _damaged(document: dict, damage: str) -> dict:
    if damage == "identities":
        document["identities"] = list(document["identities"].values())
    elif damage == "composition":
        document["composition"].append(["id_bot", "id_bot", "id_bot"])
    elif damage == "classes":
        del document["classes"]["Fib"]
    elif damage == "factorization":
        document["fact_trivcof_fib"]["x->top"] = {"first": "x->top"}
    elif damage == "replacement":
        document["Q"]["q_components"] = "id_bot"
    return document


@pytest.mark.parametrize("damage", ["identities", "composition", "classes", "factorization", "replacement"])
def test_structurally_broken_instance_is_invalid(capsys, tmp_path, damage):
    document = json.loads((INSTANCES / "collapse_diamond.json").read_text(encoding="utf-8"))
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(_damaged(document, damage)), encoding="utf-8")
    code, out = run(capsys, "validate", "--instance", str(path))
    assert code == 2
    assert "INVALID" in out
