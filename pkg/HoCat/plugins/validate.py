from HoCat import hocat
from HoCat.database.database import WeakEquivalences, load_instance
from HoCat.engine.fincat import FinCategory, initial_object, terminal_object, validate_category
from HoCat.engine.model import (
    check_cylinder_cofibrancy,
    check_lifting_independence,
    check_trivfib_correspondence,
    check_whitehead,
    homotopy_relations,
    validate_model,
)
from HoCat.helpers.budget import Budget
from HoCat.helpers.decorators import report_errors
from HoCat.helpers.reports import Report, RunConfig


def universal_objects(c: FinCategory) -> dict:
    """Initial and terminal objects with the canonical isomorphisms between the choices."""
    found = {"initial": initial_object(c), "terminal": terminal_object(c)}
    return {kind: universal.describe(c) if universal else None for kind, universal in found.items()}


@hocat.on_command("validate", help="check category, model and replacement axioms of an instance")
@report_errors
def validate(config: RunConfig, report: Report, budget: Budget) -> None:
    instance = load_instance(config.require("instance"))
    c = instance if isinstance(instance, FinCategory) else instance.cat
    report.add("universal objects", universal_objects(c))

    if isinstance(instance, (FinCategory, WeakEquivalences)):
        report.add_checks("category", validate_category(c))
        return

    axioms = validate_model(instance, budget)
    report.add_checks("model", axioms)
    if not axioms.ok:
        return
    report.add("homotopy relations", homotopy_relations(instance))
    for label, check in (
        ("whitehead", check_whitehead),
        ("trivial fibration correspondence", check_trivfib_correspondence),
        ("lift independence", check_lifting_independence),
        ("cylinder cofibrancy", check_cylinder_cofibrancy),
    ):
        report.add_checks(label, check(instance))
