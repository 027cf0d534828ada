from pathlib import Path

from HoCat import hocat
from HoCat.config import PROJECT_ROOT, config_manager
from HoCat.database.database import WeakEquivalences, load_battery, load_instance
from HoCat.engine.errors import UsageError
from HoCat.engine.fincat import FinCategory
from HoCat.engine.hocat import build_ho, build_hok, check_ho_strict, check_hok_on_Mc, check_hok_weak
from HoCat.engine.localization import (
    CONDITIONS,
    L1,
    L2,
    Battery,
    FlagStatus,
    LocalizationWitness,
    classify as classify_witness,
    compare_localizations,
    extend_battery,
    identity_witness,
)
from HoCat.engine.model import ModelData
from HoCat.engine.rewriting import localize_by_rewriting
from HoCat.helpers.budget import Budget
from HoCat.helpers.decorators import report_errors
from HoCat.helpers.reports import Report, RunConfig

WITNESSES = ("ho", "hok", "identity", "localize")
# the notion each construction is known to satisfy
EXPECTED = {"ho": "strict", "hok": "weak", "identity": "strict", "localize": "strict"}


def battery_for(config: RunConfig) -> Battery:
    settings = config_manager.get_battery_config(config.battery_name)
    if settings is None:
        raise UsageError(f"no battery {config.battery_name!r} in {config_manager.config_path}")
    if config.battery or config.battery_name == "default":
        directory = config.battery_dir
    else:
        directory = Path(settings["path"])
        directory = str(directory if directory.is_absolute() else PROJECT_ROOT / directory)
    return load_battery(directory, settings["max_objects"], settings["max_morphisms"], name=config.battery_name)


def extended(battery: Battery, wit: LocalizationWitness) -> Battery:
    settings = config_manager.get_battery_config(battery.name) or {}
    return extend_battery(
        battery,
        wit,
        include_loc=settings.get("include_loc", True),
        include_base=settings.get("include_base", True),
        max_self_morphisms=settings.get("max_self_morphisms", 9),
    )


def default_witness(instance) -> str:
    if isinstance(instance, ModelData):
        return "ho"
    if isinstance(instance, WeakEquivalences):
        return "localize"
    return "identity"


@hocat.on_command(
    "classify",
    help="classify a localization witness as faint, weak, strong or strict",
    arguments=[(("--witness",), {"choices": WITNESSES, "help": "which witness to classify"})],
)
@report_errors
def classify(config: RunConfig, report: Report, budget: Budget) -> None:
    instance = load_instance(config.require("instance"))
    battery = battery_for(config)
    kind = config.witness or default_witness(instance)
    limits = config_manager.limits

    if kind in ("ho", "hok") and not isinstance(instance, ModelData):
        raise UsageError(f"--witness {kind} needs a model instance")

    if kind == "identity":
        c = instance if isinstance(instance, FinCategory) else instance.cat
        wit = identity_witness(c)
        wit = classify_witness(wit, extended(battery, wit), budget)
    elif kind == "localize":
        if isinstance(instance, FinCategory):
            raise UsageError("--witness localize needs an instance with weak equivalences W")
        loc, L = localize_by_rewriting(instance.cat, instance.W, budget, max_length=limits["zigzag_max_length"])
        wit = LocalizationWitness(instance.cat, instance.W, loc, L, name=loc.name)
        wit = classify_witness(wit, extended(battery, wit), budget)
    elif kind == "hok":
        hok = build_hok(instance, budget)
        members = extended(battery, hok.witness)
        wit, identities = check_hok_weak(instance, hok, members, budget, conditions=CONDITIONS)
        report.add_checks("HoK identities", identities)
        mc_wit, cofibrancy = check_hok_on_Mc(instance, hok, members, budget)
        weak = mc_wit.flag("weak")
        report.add(
            "HoK on cofibrant objects",
            mc_wit.to_dict(),
            ok=weak.status is not FlagStatus.REFUTED,
            counterexamples=[weak.counterexample] if weak.counterexample else [],
        )
        report.add_checks("cylinder cofibrancy", cofibrancy)
    else:
        ho = build_ho(instance, config.route, budget)
        wit, naturality = check_ho_strict(
            instance, ho, extended(battery, ho.witness), budget, max_family_objects=limits["nat_family_max_objects"]
        )
        report.add_checks("naturality through gamma", naturality)
        hok = build_hok(instance, budget)
        hok_wit = classify_witness(hok.witness, extended(battery, hok.witness), budget, conditions=(L1, L2))
        comparison = compare_localizations(wit, hok_wit, budget)
        report.add("comparison with HoK", comparison.to_dict())

    expected = EXPECTED[kind]
    flag = wit.flag(expected)
    report.add(
        "witness",
        wit.to_dict(),
        ok=flag.status is not FlagStatus.REFUTED,
        counterexamples=[f"{expected} refuted: {flag.counterexample}"] if flag.status is FlagStatus.REFUTED else [],
    )
