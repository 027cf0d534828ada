import pytest

from HoCat.database.database import load_functor
from HoCat.engine import catalog, derived
from HoCat.engine.derived import (
    USE_Q,
    compare_KF,
    compare_KS,
    derive_F,
    derive_K_quillen,
    derive_right,
    derive_S,
    left_kan_extension,
    precondition_counterexample,
    relate_quasi_inverses,
    right_kan_extension,
)
from HoCat.engine.errors import PreconditionFailed, UsageError
from HoCat.engine.fincat import Functor, identity_functor
from HoCat.engine.hocat import ROUTE_Q

from conftest import FUNCTORS


@pytest.fixture
def pair_in_diamond(diamond):
    d2, point = catalog.discrete(2), catalog.point()
    P = Functor(d2, point, (0, 0), (0, 0), name="P")
    x, y = diamond.object_id("x"), diamond.object_id("y")
    F = Functor(d2, diamond, (x, y), (diamond.identity(x), diamond.identity(y)), name="xy")
    return P, F


@pytest.fixture
def collapse_z2plus(triv_z2plus):
    return load_functor(FUNCTORS / "collapse_z2plus.json", triv_z2plus.cat, triv_z2plus.cat)


def test_right_kan_extension_is_the_meet(pair_in_diamond, diamond):
    P, F = pair_in_diamond
    pair = right_kan_extension(P, F)
    assert pair is not None
    assert pair.ext.obj_map == (diamond.object_id("bot"),)
    assert [diamond.morphisms[m] for m in pair.counit.components] == ["bot->x", "bot->y"]
    assert pair.certificate.complete
    assert pair.to_dict()["side"] == "right"


def test_left_kan_extension_is_the_join(pair_in_diamond, diamond):
    P, F = pair_in_diamond
    pair = left_kan_extension(P, F)
    assert pair is not None
    assert pair.side == "left"
    assert pair.ext.obj_map == (diamond.object_id("top"),)
    assert [diamond.morphisms[m] for m in pair.counit.components] == ["x->top", "y->top"]


def test_kan_extension_along_identity():
    c = catalog.arrow()
    identity = identity_functor(c)
    pair = right_kan_extension(identity, identity)
    assert pair.ext.obj_map == (0, 1)
    assert pair.counit.is_isomorphism


def test_missing_limit_gives_none():
    d2, point, z2 = catalog.discrete(2), catalog.point(), catalog.z2()
    P = Functor(d2, point, (0, 0), (0, 0))
    F = Functor(d2, z2, (0, 0), (0, 0))
    assert right_kan_extension(P, F) is None


def test_precondition(collapse_diamond, triv_diamond):
    F = load_functor(FUNCTORS / "collapse_to_triv_diamond.json", collapse_diamond.cat, triv_diamond.cat)
    assert collapse_diamond.cat.morphisms[precondition_counterexample(F, collapse_diamond, triv_diamond)] == "bot->x"
    with pytest.raises(PreconditionFailed) as error:
        derive_K_quillen(F, collapse_diamond, triv_diamond)
    assert error.value.counterexample == "bot->x"
    assert error.value.exit_code == 1


def test_functor_must_match_the_models(triv_diamond, triv_z2plus):
    with pytest.raises(UsageError):
        derive_F(identity_functor(triv_diamond.cat), triv_z2plus, triv_z2plus)


@pytest.mark.parametrize("route", ["ctilde", ROUTE_Q])
def test_quillen_routes(triv_z2plus, collapse_z2plus, route):
    result = derive_K_quillen(collapse_z2plus, triv_z2plus, triv_z2plus, route=route)
    assert result.ok, result.checks.violations
    assert result.provenance["route"] == route
    assert result.certificate.rows


def test_faint_derived_functor(triv_z2plus, collapse_z2plus):
    result = derive_F(collapse_z2plus, triv_z2plus, triv_z2plus)
    assert result.ok
    assert result.transformation.is_isomorphism
    assert result.extras["nu3_natural"]
    assert result.checks.checks["NU3 natural"] == []


def test_faint_derived_functor_fails_without_natural_nu3(monkeypatch, triv_z2plus, collapse_z2plus):
    monkeypatch.setattr(derived, "is_natural", lambda *args: False)
    result = derive_F(collapse_z2plus, triv_z2plus, triv_z2plus)
    assert not result.ok
    assert any(v.startswith("NU3 natural") for v in result.checks.violations)


def test_K_and_F_agree(triv_z2plus, collapse_z2plus):
    comparison = compare_KF(collapse_z2plus, triv_z2plus, triv_z2plus)
    assert comparison.ok, comparison.report.violations
    assert set(comparison.results) == {"K", "F"}
    assert comparison.to_dict()["comparison"] == "kf"


def test_K_and_S_agree_on_the_diamond(triv_diamond):
    F = load_functor(FUNCTORS / "identity_diamond.json", triv_diamond.cat, triv_diamond.cat)
    comparison = compare_KS(F, triv_diamond, triv_diamond)
    assert comparison.ok, comparison.report.violations
    assert set(comparison.results) == {"K", "K_q", "S"}


def test_K_and_S_agree_through_a_nontrivial_Q(triv_z2plus):
    comparison = compare_KS(identity_functor(triv_z2plus.cat), triv_z2plus, triv_z2plus)
    assert comparison.ok, comparison.report.violations
    assert comparison.details["cross_route_iso"]["*"] == "[s]"


def test_strict_derived_functor(triv_z2plus, collapse_z2plus):
    result = derive_S(collapse_z2plus, triv_z2plus, triv_z2plus)
    assert result.ok, result.checks.violations
    assert result.provenance["quasi_inverse"] == "Ho(Q)"

    supplied = derive_S(collapse_z2plus, triv_z2plus, triv_z2plus, quasi_inverse=result.extras["ho_Q"])
    assert supplied.provenance["quasi_inverse"] == "supplied"
    assert supplied.functor == result.functor


def test_quasi_inverses_are_related_uniquely(triv_z2plus, collapse_z2plus):
    result = derive_S(collapse_z2plus, triv_z2plus, triv_z2plus, quasi_inverse=USE_Q)
    extras = result.extras
    iso, kappa = relate_quasi_inverses(
        extras["ho_F"], extras["ho_i"], extras["ho_Q"], extras["beta"], extras["ho_Q"], extras["beta"]
    )
    assert iso.is_identity
    assert kappa.is_identity


def test_right_derived_functor(triv_diamond):
    F = identity_functor(triv_diamond.cat)
    result = derive_right("k", F, triv_diamond, triv_diamond)
    assert result.ok
    assert result.provenance["side"].startswith("right")
    with pytest.raises(UsageError):
        derive_right("x", F, triv_diamond, triv_diamond)
