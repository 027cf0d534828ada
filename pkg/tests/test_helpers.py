import json

import pytest

from HoCat.config import HOCAT_CONFIG
from HoCat.engine.errors import BudgetExceeded, UsageError
from HoCat.engine_config import ConfigManager, get_config_manager
from HoCat.helpers.budget import Budget
from HoCat.helpers.functions import get_readable_bytes, get_readable_time
from HoCat.helpers.reports import Report, RunConfig, Verdict


@pytest.fixture
def engine_config(tmp_path):
    path = tmp_path / "engine.json"
    path.write_text(
        json.dumps({"batteries": {"mini": {"path": "batteries/default", "max_objects": 1}}, "limits": {}}),
        encoding="utf-8",
    )
    yield get_config_manager(str(path))
    get_config_manager(HOCAT_CONFIG)


def test_readable_time_and_bytes():
    assert get_readable_time(0.25) == "250ms"
    assert get_readable_time(3725) == "1h 2m 5s"
    assert get_readable_bytes(0) == "0 B"
    assert get_readable_bytes(3 * 1024 * 1024) == "3.0 MiB"


def test_budget():
    budget = Budget(3)
    budget.tick(2)
    assert budget.remaining == 1
    with pytest.raises(BudgetExceeded):
        budget.tick(2, where="test")
    assert Budget.ensure(budget) is budget
    assert Budget.ensure(5).limit == 5
    with pytest.raises(ValueError):
        Budget(0)


def test_verdicts():
    report = Report("build hok")
    assert report.verdict is Verdict.PASS
    report.refused = True
    assert report.exit_code == 3
    report.add("check", {"ok": False}, ok=False, counterexamples=["x"])
    assert report.verdict is Verdict.FAIL
    assert report.counterexamples == ["check: x"]
    report.invalid = True
    assert report.exit_code == 2
    assert json.loads(report.to_json())["verdict"] == "invalid"
    assert report.render_text().startswith("build hok: INVALID")


def test_run_config_validation(tmp_path):
    with pytest.raises(UsageError):
        RunConfig("build", budget=0).validate()
    with pytest.raises(UsageError):
        RunConfig("build", instance=str(tmp_path / "missing.json")).validate()
    with pytest.raises(UsageError):
        RunConfig("build").require("instance")


def test_engine_config_defaults_fill_in(engine_config):
    mini = engine_config.get_battery_config("mini")
    assert mini["name"] == "mini"
    assert mini["max_objects"] == 1
    assert mini["max_morphisms"] == 5
    assert engine_config.limits["zigzag_max_length"] == 12
    assert engine_config.get_battery_config("absent") is None


def test_engine_config_update_and_save(engine_config):
    engine_config.update_battery_config("extra", {"max_objects": 3})
    assert set(engine_config.get_all_batteries()) == {"mini", "extra"}
    assert engine_config.save_config()
    saved = json.loads(open(engine_config.config_path, encoding="utf-8").read())
    assert saved["batteries"]["extra"]["max_objects"] == 3


def test_corrupt_engine_config_uses_defaults(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    try:
        manager = ConfigManager(config_path=str(path))
        assert set(manager.get_all_batteries()) == {"default"}
    finally:
        get_config_manager(HOCAT_CONFIG)
