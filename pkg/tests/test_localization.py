import pytest

from HoCat.engine import catalog
from HoCat.engine.errors import EngineInconsistency, NotLocalization
from HoCat.engine.fincat import Functor, MorphismClass
from HoCat.engine.localization import (
    L1,
    L1P,
    L2,
    CheckResult,
    Flag,
    FlagStatus,
    LocalizationWitness,
    NOTIONS,
    check_implications,
    check_L1_faint,
    classify,
    compare_localizations,
    extend_battery,
    identity_witness,
    precomposition_report,
)
from HoCat.engine.rewriting import localize_by_rewriting


@pytest.fixture
def arrow_f():
    c = catalog.arrow()
    W = MorphismClass.of_names(c, ["f"])
    loc, L = localize_by_rewriting(c, W)
    return LocalizationWitness(c, W, loc, L)


def test_identity_witness_is_strict(small_battery):
    wit = classify(identity_witness(catalog.arrow()), small_battery)
    for notion in NOTIONS:
        assert wit.flags[notion].status is FlagStatus.VERIFIED, notion
    assert wit.to_dict()["battery"] == "small"


def test_collapsing_the_arrow_is_not_a_localization_at_identities():
    c, point = catalog.arrow(), catalog.point()
    L = Functor(c, point, (0, 0), (0, 0, 0), name="collapse")
    wit = LocalizationWitness(c, MorphismClass.identities_of(c), point, L)
    assert check_L1_faint(wit, point).holds
    result = check_L1_faint(wit, c)
    assert not result.holds
    assert result.counterexample


def test_witness_must_invert_W():
    c = catalog.arrow()
    with pytest.raises(NotLocalization):
        LocalizationWitness(c, MorphismClass.of_names(c, ["f"]), c, Functor(c, c, (0, 1), (0, 1, 2)))


def test_rewriting_gives_a_strict_localization(arrow_f, small_battery):
    wit = classify(arrow_f, small_battery)
    assert wit.flags["strict"].verified
    assert wit.flags["faint"].verified
    report = precomposition_report(wit, catalog.z2())
    assert report.equivalence
    assert report.bijective_on_objects


def test_partial_classification_leaves_unknowns(arrow_f, small_battery):
    wit = classify(arrow_f, small_battery, conditions=(L1, L2))
    assert wit.flags["faint"].verified
    assert wit.flags["strict"].status is FlagStatus.UNKNOWN
    assert wit.flags["weak"].status is FlagStatus.UNKNOWN


def test_compare_with_iso2(arrow_f, small_battery):
    c, iso2 = arrow_f.base, catalog.iso2()
    u = iso2.morphism_id("u")
    L = Functor(c, iso2, (0, 1), (0, 1, u), name="to_iso2")
    other = classify(LocalizationWitness(c, arrow_f.W, iso2, L), small_battery)
    first = classify(arrow_f, small_battery)
    comparison = compare_localizations(first, other)
    assert comparison.isomorphism
    assert comparison.unit.is_identity


def test_compare_needs_verified_flags(arrow_f):
    with pytest.raises(NotLocalization):
        compare_localizations(arrow_f, arrow_f)


def test_extend_battery(arrow_f, small_battery):
    extended = extend_battery(small_battery, arrow_f)
    assert extended.name == "small+loc"
    assert len(extended) == 4


def test_implications_are_enforced(arrow_f):
    arrow_f.flags["strict"] = Flag(FlagStatus.VERIFIED, "small")
    arrow_f.flags["weak"] = Flag(FlagStatus.REFUTED, "small", "arrow: no factorization")
    with pytest.raises(EngineInconsistency):
        check_implications(arrow_f)


@pytest.fixture
def collapsed_arrow():
    c, point = catalog.arrow(), catalog.point()
    W = MorphismClass.identities_of(c)
    collapse = LocalizationWitness(c, W, point, Functor(c, point, (0, 0), (0, 0, 0), name="collapse"))
    identity = identity_witness(c)
    for wit in (collapse, identity):
        wit.flags["strong"] = Flag(FlagStatus.VERIFIED, "tiny")
    return collapse, identity


def test_strong_comparison_outside_the_battery(collapsed_arrow):
    collapse, identity = collapsed_arrow
    with pytest.raises(NotLocalization, match="outside battery tiny"):
        compare_localizations(collapse, identity)


def test_strong_comparison_inside_the_battery(collapsed_arrow):
    collapse, identity = collapsed_arrow
    collapse.evidence[L1P] = [CheckResult(L1P, "arrow", holds=True)]
    with pytest.raises(EngineInconsistency):
        compare_localizations(collapse, identity)
