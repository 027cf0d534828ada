import pytest

from HoCat.engine import catalog
from HoCat.engine.errors import MissingQ, NoFactorization, UsageError
from HoCat.engine.fincat import Functor
from HoCat.engine.hocat import (
    ROUTE_BOTH,
    ROUTE_Q,
    build_ho,
    build_hok,
    check_gamma_functorial,
    check_hok_on_Mc,
    check_hok_weak,
    check_replacement_independence,
    evaluate_zigzag,
    factor_through,
    gamma_iso_iff_we,
    mc_witness,
)
from HoCat.engine.rewriting import Fwd, Inv, Zigzag


def test_hok_sizes(triv_diamond, collapse_diamond):
    hok = build_hok(triv_diamond)
    assert (hok.category.n_objects, hok.category.n_morphisms) == (4, 9)
    collapsed = build_hok(collapse_diamond)
    assert (collapsed.category.n_objects, collapsed.category.n_morphisms) == (1, 1)
    assert collapsed.to_dict()["hom_sizes"] == {"top->top": 1}


def test_ho_sizes(collapse_diamond, triv_z2plus):
    ho = build_ho(collapse_diamond)
    assert (ho.category.n_objects, ho.category.n_morphisms) == (4, 16)
    assert build_ho(triv_z2plus).category.n_morphisms == 7


@pytest.mark.parametrize("fixture", ["triv_diamond", "collapse_diamond", "triv_z2plus"])
def test_gamma_detects_weak_equivalences(fixture, request):
    md = request.getfixturevalue(fixture)
    ho = build_ho(md, route=ROUTE_BOTH)
    assert ho.checks.ok, ho.checks.violations
    assert check_gamma_functorial(ho).ok
    assert gamma_iso_iff_we(ho).ok


def test_q_route_needs_q(diamond):
    with pytest.raises(MissingQ):
        build_ho(catalog.triv_model(diamond), route=ROUTE_Q)


def test_gamma_factors_through_itself(collapse_diamond):
    ho = build_ho(collapse_diamond)
    G = factor_through(ho.witness, ho.functor)
    assert G.is_identity


def test_factor_through_needs_inversion(collapse_diamond):
    ho = build_ho(collapse_diamond)
    c = collapse_diamond.cat
    inclusion = Functor(c, c, tuple(range(c.n_objects)), tuple(range(c.n_morphisms)), name="id")
    with pytest.raises(NoFactorization):
        factor_through(ho.witness, inclusion)


def test_zigzag_evaluation(collapse_diamond):
    ho = build_ho(collapse_diamond)
    c, h = collapse_diamond.cat, ho.category
    bot_x = c.morphism_id("bot->x")
    back = evaluate_zigzag(ho, Zigzag(c.object_id("x"), c.object_id("x"), (Inv(bot_x), Fwd(bot_x))))
    assert h.is_identity(back)


def test_hok_is_a_weak_localization(triv_diamond, small_battery):
    hok = build_hok(triv_diamond)
    wit, report = check_hok_weak(triv_diamond, hok, small_battery)
    assert wit.flags["weak"].verified
    assert wit.flags["faint"].verified
    assert report.ok, report.violations


def test_hok_on_cofibrant_objects(collapse_diamond):
    hok = build_hok(collapse_diamond)
    wit = mc_witness(collapse_diamond, hok)
    assert wit.base.n_objects == 4
    assert wit.loc.n_objects == 1


def test_hok_is_weak_on_cofibrant_objects(collapse_diamond, small_battery):
    hok = build_hok(collapse_diamond)
    wit, cofibrancy = check_hok_on_Mc(collapse_diamond, hok, small_battery)
    assert wit.flags["weak"].verified
    assert cofibrancy.ok


def test_replacement_choice_does_not_matter(triv_diamond, diamond, small_battery):
    comparison, report = check_replacement_independence(triv_diamond, catalog.triv_model(diamond), small_battery)
    assert report.ok
    assert comparison.forward.obj_map == tuple(range(4))
    with pytest.raises(UsageError):
        check_replacement_independence(triv_diamond, catalog.collapse_model(diamond), small_battery)


def zigzag(c, start: str, end: str, steps: str) -> Zigzag:
    word = []
    for step in steps.split():
        kind, name = step[0], step[1:]
        word.append((Fwd if kind == "+" else Inv)(c.morphism_id(name)))
    return Zigzag(c.object_id(start), c.object_id(end), tuple(word))


@pytest.mark.parametrize(
    "fixture, start, end, first, second",
    [
        ("collapse_diamond", "x", "x", "+id_x", ""),
        ("collapse_diamond", "bot", "top", "+bot->x +x->top", "+bot->top"),
        ("collapse_diamond", "bot", "top", "+bot->x +x->top", "+bot->y +y->top"),
        ("collapse_diamond", "x", "y", "-bot->x +bot->y", "+x->top -y->top"),
        ("collapse_diamond", "top", "top", "-x->top +x->top", "-y->top +y->top"),
        ("triv_z2plus", "*", "*", "+s +s", ""),
        ("triv_z2plus", "*", "*", "-s", "+s"),
        ("triv_z2plus", "bot", "top", "+bot->* +s +*->top", "+bot->top"),
    ],
)
def test_equivalent_zigzags_evaluate_alike(request, fixture, start, end, first, second):
    md = request.getfixturevalue(fixture)
    ho = build_ho(md)
    assert evaluate_zigzag(ho, zigzag(md.cat, start, end, first)) == evaluate_zigzag(
        ho, zigzag(md.cat, start, end, second)
    )


def test_distinct_zigzags_evaluate_apart(triv_z2plus):
    ho = build_ho(triv_z2plus)
    c = triv_z2plus.cat
    assert evaluate_zigzag(ho, zigzag(c, "*", "*", "+s")) != evaluate_zigzag(ho, zigzag(c, "*", "*", ""))
