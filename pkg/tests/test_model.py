import pytest

from HoCat.engine import catalog
from HoCat.engine.errors import InvalidSquare, NoProduct
from HoCat.engine.fincat import MorphismClass
from HoCat.engine.model import (
    ModelData,
    Square,
    check_cylinder_cofibrancy,
    check_lifting_independence,
    check_trivfib_correspondence,
    check_whitehead,
    cofibrant_replace,
    fibrant_replace,
    homotopic,
    homotopy_classes,
    homotopy_relations,
    left_homotopy_partition,
    lift_FCf,
    local_cofibrant_replace,
    local_fibrant_replace,
    paths,
    right_homotopic,
    solve_lifting,
    validate_model,
)


def test_triv_and_collapse_are_models(triv_diamond, collapse_diamond, triv_z2plus):
    for md in (triv_diamond, collapse_diamond, triv_z2plus):
        report = validate_model(md)
        assert report.ok, report.violations


def test_corrupted_fibrations_fail(diamond):
    md = catalog.collapse_model(diamond)
    corrupted = ModelData(
        cat=md.cat,
        W=md.W,
        Cof=md.Cof,
        Fib=MorphismClass.everything(diamond),
        init=md.init,
        term=md.term,
        fact1=md.fact1,
        fact2=md.fact2,
        name="corrupted",
    )
    report = validate_model(corrupted)
    assert not report.ok


def test_model_checks_hold(triv_diamond, collapse_diamond):
    for md in (triv_diamond, collapse_diamond):
        for check in (check_whitehead, check_trivfib_correspondence, check_lifting_independence, check_cylinder_cofibrancy):
            report = check(md)
            assert report.ok, report.violations


def test_identity_replacement(triv_z2plus, triv_diamond):
    x = triv_diamond.cat.object_id("x")
    assert cofibrant_replace(triv_diamond, x) == (x, triv_diamond.cat.identity(x))
    star = triv_z2plus.cat.object_id("*")
    qx, q = cofibrant_replace(triv_z2plus, star)
    assert qx == star and triv_z2plus.cat.morphisms[q] == "s"
    # every object is cofibrant, so the local replacement does not move it
    assert local_cofibrant_replace(triv_z2plus, star) == (star, triv_z2plus.cat.identity(star))


def test_lifting(collapse_diamond):
    c = collapse_diamond.cat
    bot, x = c.object_id("bot"), c.object_id("x")
    # collapse: Fib are the isomorphisms, so lifting against id_x always works
    square = Square(top=c.morphism_id("bot->x"), left=c.morphism_id("bot->x"), bottom=c.identity(x), right=c.identity(x))
    assert solve_lifting(collapse_diamond, square) == c.identity(x)
    with pytest.raises(InvalidSquare):
        solve_lifting(collapse_diamond, Square(c.identity(bot), c.identity(bot), c.identity(x), c.identity(x)))


def test_homotopy_is_equality_in_triv(triv_z2plus):
    c = triv_z2plus.cat
    star = c.object_id("*")
    e, s = c.morphism_id("e"), c.morphism_id("s")
    assert not homotopic(triv_z2plus, e, s)
    assert homotopy_classes(triv_z2plus, star, star).classes == ((e,), (s,))


def test_opposite_model_round_trip(triv_z2plus):
    op = triv_z2plus.opposite
    assert op.opposite is triv_z2plus
    assert op.Cof.members == triv_z2plus.Fib.members
    assert op.init == triv_z2plus.term
    assert validate_model(op).ok


def test_path_objects(triv_diamond, triv_z2plus):
    top = triv_diamond.cat.object_id("top")
    found = paths(triv_diamond, top)
    assert [(p.Z, p.w) for p in found] == [(top, triv_diamond.cat.identity(top))]
    with pytest.raises(NoProduct):
        paths(triv_z2plus, triv_z2plus.cat.object_id("*"))


def test_fibrant_side_mirrors_the_cofibrant_side(collapse_diamond):
    c = collapse_diamond.cat
    x, top = c.object_id("x"), c.object_id("top")
    # only top is fibrant when Fib are the isomorphisms
    rx, r = fibrant_replace(collapse_diamond, x)
    assert rx == top and c.morphisms[r] == "x->top"
    assert local_fibrant_replace(collapse_diamond, top) == (top, c.identity(top))
    f = c.morphism_id("bot->x")
    assert c.cod[lift_FCf(collapse_diamond, f)] == top


def test_right_homotopy_in_the_diamond(triv_diamond):
    c = triv_diamond.cat
    f = c.morphism_id("bot->top")
    assert right_homotopic(triv_diamond, f, f)
    assert left_homotopy_partition(triv_diamond, c.object_id("bot"), c.object_id("top")).classes == ((f,),)


def test_homotopy_relations_name_the_fallback(collapse_diamond, triv_z2plus):
    relations = homotopy_relations(collapse_diamond)
    assert set(relations["left"].values()) == {"cylinder objects"}
    assert set(relations["right"].values()) == {"path objects"}
    relations = homotopy_relations(triv_z2plus)
    assert relations["left"]["*"] == "cylinder spans"
    assert relations["right"]["*"] == "path spans"
