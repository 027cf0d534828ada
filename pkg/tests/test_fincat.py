import pytest

from HoCat.engine import catalog
from HoCat.engine.fincat import (
    FinCategory,
    Functor,
    NatTransformation,
    constant_functor,
    enumerate_functors,
    enumerate_nat_transformations,
    find_coproduct,
    find_initial,
    find_product,
    find_terminal,
    full_subcategory,
    identity_functor,
    initial_object,
    inverse_transformation,
    natural_isomorphisms,
    opposite,
    terminal_object,
    validate_category,
    validate_functor,
    vertical_composite,
    whisker_left,
)


@pytest.mark.parametrize(
    "c",
    [*catalog.standard_categories(), catalog.chain(3), catalog.diamond(), catalog.z2_plus()],
    ids=lambda c: c.name,
)
def test_shipped_categories_are_valid(c):
    assert validate_category(c).ok


def test_partial_table_is_reported():
    c = catalog.idempotent()
    missing = FinCategory(c.name, c.objects, c.morphisms, c.dom, c.cod, c.identities, c.composition[1:])
    report = validate_category(missing)
    assert not report.ok
    assert any("missing composite" in v for v in report.violations)


def test_transformations_between_points_of_arrow():
    a = constant_functor(catalog.point(), catalog.arrow(), 0)
    b = constant_functor(catalog.point(), catalog.arrow(), 1)
    forward = list(enumerate_nat_transformations(a, b))
    assert len(forward) == 1
    assert catalog.arrow().morphisms[forward[0].component(0)] == "f"
    assert list(enumerate_nat_transformations(b, a)) == []


def test_endotransformations_of_identity():
    iso2 = catalog.iso2()
    assert len(list(enumerate_nat_transformations(identity_functor(iso2), identity_functor(iso2)))) == 1
    z2 = catalog.z2()
    found = list(enumerate_nat_transformations(identity_functor(z2), identity_functor(z2)))
    assert [z2.morphisms[alpha.component(0)] for alpha in found] == ["e", "s"]
    assert all(alpha.is_isomorphism for alpha in found)


def test_functor_counts():
    arrow = catalog.arrow()
    assert len(list(enumerate_functors(arrow, arrow))) == 3
    assert len(list(enumerate_functors(catalog.z2(), catalog.z2()))) == 2
    # Z2 has no non-trivial map into the idempotent monoid: s∘s = e forces s to an iso
    assert len(list(enumerate_functors(catalog.z2(), catalog.idempotent()))) == 1


def test_enumeration_order_is_canonical():
    arrow = catalog.arrow()
    maps = [F.obj_map for F in enumerate_functors(arrow, arrow)]
    assert maps == sorted(maps)


def test_functor_validation_catches_broken_composite():
    z2 = catalog.z2()
    idem = catalog.idempotent()
    F = Functor(z2, idem, (0,), (0, 1))
    report = validate_functor(F)
    assert not report.ok


def test_initial_terminal_and_coproducts(diamond):
    assert find_initial(diamond) == diamond.object_id("bot")
    assert find_terminal(diamond) == diamond.object_id("top")
    x, y = diamond.object_id("x"), diamond.object_id("y")
    assert find_coproduct(diamond, x, y).obj == diamond.object_id("top")
    assert find_product(diamond, x, y).obj == diamond.object_id("bot")
    assert find_initial(catalog.z2()) is None


def test_universal_objects_record_their_isomorphisms(diamond):
    iso2 = catalog.iso2()
    assert initial_object(iso2).describe(iso2) == {"object": "a", "isomorphisms": {"a": "id_a", "b": "u"}}
    assert terminal_object(iso2).describe(iso2) == {"object": "a", "isomorphisms": {"a": "id_a", "b": "u"}}
    assert terminal_object(diamond).describe(diamond) == {"object": "top", "isomorphisms": {"top": "id_top"}}
    assert initial_object(catalog.discrete(2)) is None


def test_opposite_is_an_involution(diamond):
    op = opposite(diamond)
    assert op.name == "diamond^op"
    assert op.dom == diamond.cod
    assert opposite(op) == diamond
    assert validate_category(op).ok


def test_full_subcategory(diamond):
    sub, inclusion = full_subcategory(diamond, [diamond.object_id("bot"), diamond.object_id("x")], name="bx")
    assert sub.objects == ("bot", "x")
    assert sub.n_morphisms == 3
    assert validate_functor(inclusion).ok


def test_whiskering_and_inverses():
    z2 = catalog.z2()
    identity = identity_functor(z2)
    s = next(alpha for alpha in natural_isomorphisms(identity, identity) if not alpha.is_identity)
    assert vertical_composite(s, s).is_identity
    assert inverse_transformation(s).components == s.components
    point_at = constant_functor(catalog.point(), z2, 0)
    whiskered = whisker_left(s, point_at)
    assert isinstance(whiskered, NatTransformation)
    assert whiskered.components == s.components
