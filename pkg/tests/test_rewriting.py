import pytest

from HoCat.engine import catalog
from HoCat.engine.errors import BudgetExceeded, MalformedZigzag
from HoCat.engine.fincat import MorphismClass, validate_category, validate_functor
from HoCat.engine.rewriting import (
    Fwd,
    Inv,
    Zigzag,
    check_zigzag,
    complete_rewrite_system,
    localize_by_rewriting,
    normal_form,
)


def test_arrow_at_its_arrow():
    c = catalog.arrow()
    f = c.morphism_id("f")
    loc, L = localize_by_rewriting(c, MorphismClass.of_names(c, ["f"]))
    assert loc.n_morphisms == 4
    assert loc.name == "arrow[W^-1]"
    assert validate_category(loc).ok
    assert validate_functor(L).ok
    assert L.mor(f) in loc.inverses
    assert "f^-1" in loc.morphisms


def test_chain_at_first_step():
    c = catalog.chain(3)
    loc, L = localize_by_rewriting(c, MorphismClass.of_names(c, ["0->1"]))
    assert loc.n_morphisms == 7
    assert L.mor(c.morphism_id("0->1")) in loc.inverses
    assert L.mor(c.morphism_id("1->2")) not in loc.inverses


def test_localizing_at_identities_changes_nothing():
    c = catalog.z2()
    loc, L = localize_by_rewriting(c, MorphismClass.identities_of(c))
    assert loc.n_morphisms == c.n_morphisms
    assert loc.morphisms == c.morphisms
    assert L.mor_map == tuple(range(c.n_morphisms))


def test_cancelling_rules():
    c = catalog.arrow()
    f = c.morphism_id("f")
    system = complete_rewrite_system(c, MorphismClass.of_names(c, ["f"]))
    assert system.reduce((Fwd(f), Inv(f))) == ()
    assert system.reduce((Inv(f), Fwd(f))) == ()
    assert system.reduce((Fwd(c.identity(0)), Fwd(f))) == (Fwd(f),)


def test_malformed_zigzags():
    c = catalog.arrow()
    f = c.morphism_id("f")
    W = MorphismClass.identities_of(c)
    with pytest.raises(MalformedZigzag):
        check_zigzag(c, W, Zigzag(1, 0, (Inv(f),)))
    with pytest.raises(MalformedZigzag):
        check_zigzag(c, W, Zigzag(1, 1, (Fwd(f),)))
    check_zigzag(c, W, Zigzag(0, 1, (Fwd(f),)))


def test_budget_refuses():
    c = catalog.chain(3)
    with pytest.raises(BudgetExceeded):
        localize_by_rewriting(c, MorphismClass.of_names(c, ["0->1"]), budget=1)


def test_both_strategies_reach_the_same_normal_form():
    c = catalog.chain(3)
    W = MorphismClass.of_names(c, ["0->1"])
    system = complete_rewrite_system(c, W)
    w, g = c.morphism_id("0->1"), c.morphism_id("1->2")
    word = (Fwd(w), Inv(w), Fwd(w), Fwd(g))
    assert normal_form(word, system.rules, "leftmost") == normal_form(word, system.rules, "rightmost")
    assert system.is_irreducible(system.reduce(word))
