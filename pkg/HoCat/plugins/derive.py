from typing import List, Tuple

from HoCat import hocat
from HoCat.config import config_manager
from HoCat.database.database import load_functor, load_instance
from HoCat.engine.derived import (
    DerivedFunctorResult,
    compare_KF,
    compare_KS,
    derive_F,
    derive_K_quillen,
    derive_S,
    derive_right,
)
from HoCat.engine.fincat import Functor
from HoCat.engine.hocat import ROUTE_BOTH, ROUTE_CTILDE, ROUTE_Q
from HoCat.engine.model import ModelData
from HoCat.helpers.budget import Budget
from HoCat.helpers.decorators import report_errors
from HoCat.helpers.reports import Report, RunConfig
from HoCat.plugins.build import require_model

KINDS = ("k", "f", "s")
PAIRS = ("kf", "ks")


def load_setting(config: RunConfig) -> Tuple[Functor, ModelData, ModelData]:
    mdM = require_model(load_instance(config.require("instance")), config.command)
    mdN = mdM
    if config.target_instance:
        mdN = require_model(load_instance(config.target_instance), config.command)
    F = load_functor(config.require("functor"), mdM.cat, mdN.cat)
    return F, mdM, mdN


def add_result(report: Report, label: str, result: DerivedFunctorResult) -> None:
    counterexamples = list(result.checks.violations)
    if result.certificate is not None and result.certificate.failure:
        counterexamples.append(result.certificate.failure)
    data = result.to_dict()
    if "nu3_natural" in result.extras:
        data["nu3_natural"] = result.extras["nu3_natural"]
    report.add(label, data, ok=result.ok, counterexamples=counterexamples)


@hocat.on_command(
    "derive",
    help="left (or right) derived functor of a functor between model instances",
    choices=KINDS,
    arguments=[(("--side",), {"choices": ("left", "right"), "default": "left", "help": "left or right derived functor"})],
)
@report_errors
def derive(config: RunConfig, report: Report, budget: Budget) -> None:
    F, mdM, mdN = load_setting(config)
    max_length = config_manager.limits["zigzag_max_length"]

    runs: List[Tuple[str, dict]] = [("", {})]
    if config.choice == "k":
        routes = (ROUTE_CTILDE, ROUTE_Q) if config.route == ROUTE_BOTH else (config.route,)
        runs = [(route, {"route": route}) for route in routes]
    elif config.choice == "s":
        runs = [("", {"max_zigzag_length": max_length})]

    for suffix, options in runs:
        label = f"{config.choice.upper()} derived functor" + (f" along {suffix}" if suffix else "")
        if config.side == "right":
            result = derive_right(config.choice, F, mdM, mdN, budget, **options)
        elif config.choice == "k":
            result = derive_K_quillen(F, mdM, mdN, budget=budget, **options)
        elif config.choice == "f":
            result = derive_F(F, mdM, mdN, budget)
        else:
            result = derive_S(F, mdM, mdN, budget=budget, **options)
        add_result(report, label, result)


@hocat.on_command("compare", help="compare the K derived functor with the F or S one", choices=PAIRS)
@report_errors
def compare(config: RunConfig, report: Report, budget: Budget) -> None:
    F, mdM, mdN = load_setting(config)
    if config.choice == "kf":
        comparison = compare_KF(F, mdM, mdN, budget)
    else:
        comparison = compare_KS(F, mdM, mdN, budget, max_zigzag_length=config_manager.limits["zigzag_max_length"])
    report.add(
        f"compare {config.choice}",
        comparison.to_dict(),
        ok=comparison.ok,
        counterexamples=comparison.report.violations,
    )
