from HoCat import hocat
from HoCat.config import config_manager
from HoCat.database.database import WeakEquivalences, load_instance, serialize_category
from HoCat.engine.errors import UsageError
from HoCat.engine.hocat import build_ho, build_hok, gamma_iso_iff_we
from HoCat.engine.model import ModelData, homotopy_relations
from HoCat.engine.rewriting import localize_by_rewriting
from HoCat.helpers.budget import Budget
from HoCat.helpers.decorators import report_errors
from HoCat.helpers.reports import Report, RunConfig

BUILDS = ("hok", "ho", "localize")


def require_model(instance, command: str) -> ModelData:
    if not isinstance(instance, ModelData):
        raise UsageError(f"{command} needs a model instance")
    return instance


@hocat.on_command("build", help="build HoK, Ho or a localization by rewriting", choices=BUILDS)
@report_errors
def build(config: RunConfig, report: Report, budget: Budget) -> None:
    instance = load_instance(config.require("instance"))

    if config.choice == "localize":
        if not isinstance(instance, (WeakEquivalences, ModelData)):
            raise UsageError("localize needs an instance with weak equivalences W")
        max_length = config_manager.limits["zigzag_max_length"]
        loc, L = localize_by_rewriting(instance.cat, instance.W, budget, max_length=max_length)
        report.add("localization", serialize_category(loc))
        report.add("functor", L.describe())
        return

    md = require_model(instance, f"build {config.choice}")
    report.add("homotopy relations", homotopy_relations(md))
    if config.choice == "hok":
        hok = build_hok(md, budget)
        report.add("homotopy category", hok.to_dict(), ok=hok.checks.ok, counterexamples=hok.checks.violations)
    else:
        ho = build_ho(md, config.route, budget)
        report.add("homotopy category", ho.to_dict(), ok=ho.checks.ok, counterexamples=ho.checks.violations)
        report.add_checks("gamma detects W", gamma_iso_iff_we(ho))
