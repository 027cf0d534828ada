"""
Kan extensions and left derived functors of F: M -> N.

Three constructions are provided:

    K   the right Kan extension of γ_N∘F along γ_M (or of 𝓛_N∘F∘i along
        𝓛_M∘i over the Kan homotopy categories), certified as a
        universal pair by enumeration
    F   the faint factorization of 𝓛_N∘F∘i through HoK(M)
    S   Ho(F)∘𝓘 for a quasi-inverse 𝓘 of Ho(i): Ho(M_c) -> Ho(M)

Right derived functors and left Kan extensions are the left-hand
constructions run on the opposite categories.
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from HoCat.engine.errors import EngineInconsistency, MissingQ, NoFactorization, PreconditionFailed, UsageError
from HoCat.engine.fincat import (
    Functor,
    NatTransformation,
    ValidityReport,
    compose_functors,
    enumerate_functors,
    enumerate_nat_transformations,
    identity_functor,
    inverse_transformation,
    is_natural,
    natural_isomorphisms,
    opposite_functor,
    opposite_transformation,
    validate_functor,
    validate_transformation,
    vertical_composite,
    whisker_left,
    whisker_right,
)
from HoCat.engine.hocat import (
    ROUTE_CTILDE,
    ROUTE_Q,
    build_ho,
    build_hok,
    cofibrant_inclusion,
    factor_through,
    factor_through_gamma,
    mc_witness,
)
from HoCat.engine.localization import LocalizationWitness, describe_functor, find_faint_factorization
from HoCat.engine.model import (
    ModelData,
    Square,
    cofibrant_replace,
    lift_Cf,
    local_cofibrant_replace,
    solve_lifting,
)
from HoCat.engine.rewriting import localize_by_rewriting
from HoCat.helpers.budget import Budget
from HoCat.logging import LOGGER

logger = LOGGER(__name__)

USE_Q = "q"


@dataclass
class CertificateRow:
    extension: Functor
    zeta: Tuple[int, ...]
    zeta_prime: Tuple[int, ...]


@dataclass
class UniversalCertificate:
    """Every (F′, ζ) with the unique ζ′ it factors through, or the first failure."""

    rows: List[CertificateRow] = field(default_factory=list, repr=False)
    functors: int = 0
    complete: bool = True
    failure: Optional[str] = None

    def to_dict(self) -> dict:
        data = {"complete": self.complete, "functors": self.functors, "rows": len(self.rows)}
        if self.failure:
            data["failure"] = self.failure
        return data


@dataclass
class UniversalPair:
    along: Functor
    base: Functor
    ext: Functor
    counit: NatTransformation
    certificate: UniversalCertificate
    side: str = "right"

    def to_dict(self) -> dict:
        return {
            "side": self.side,
            "ext": self.ext.describe(),
            "counit" if self.side == "right" else "unit": self.counit.describe(),
            "certificate": self.certificate.to_dict(),
        }


def certify_universal_pair(
    P: Functor, F: Functor, ext: Functor, counit: NatTransformation, budget: Optional[Budget] = None
) -> UniversalCertificate:
    """
    For every F′: C′ -> D and every ζ: F′∘P => F there is exactly one
    ζ′: F′ => ext with counit∘(ζ′⋆P) = ζ.
    """
    budget = Budget.ensure(budget)
    certificate = UniversalCertificate()
    for F2 in enumerate_functors(P.target, F.target, budget):
        certificate.functors += 1
        preimages: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = {}
        for zeta2 in enumerate_nat_transformations(F2, ext, budget):
            zeta = vertical_composite(counit, whisker_left(zeta2, P))
            preimages.setdefault(zeta.components, []).append(zeta2.components)
        for zeta in enumerate_nat_transformations(compose_functors(F2, P), F, budget):
            found = preimages.get(zeta.components, [])
            if len(found) != 1:
                certificate.complete = False
                certificate.failure = (
                    f"{describe_functor(F2)} with components {list(zeta.components)} "
                    f"factors {len(found)} times through the extension"
                )
                return certificate
            certificate.rows.append(CertificateRow(F2, zeta.components, found[0]))
    return certificate


def _comma_index(P: Functor, c2: int) -> List[Tuple[int, int]]:
    """Objects (c, u: c′ -> Pc) of the comma category under c′."""
    C, C2 = P.source, P.target
    return [(c, u) for c in range(C.n_objects) for u in C2.hom(c2, P.obj(c))]


def _comma_arrows(P: Functor, index: Sequence[Tuple[int, int]]) -> List[Tuple[int, int, int]]:
    C, C2 = P.source, P.target
    position = {entry: k for k, entry in enumerate(index)}
    arrows = []
    for a, (c1, u1) in enumerate(index):
        for m in C.outgoing(c1):
            target = (C.cod[m], C2.comp[(P.mor(m), u1)])
            if target in position:
                arrows.append((a, position[target], m))
    return arrows


def _cones(F: Functor, index, arrows, budget: Budget) -> List[Tuple[int, Tuple[int, ...]]]:
    D = F.target
    found = []
    for apex in range(D.n_objects):
        for legs in product(*(D.hom(apex, F.obj(c)) for c, _ in index)):
            budget.tick(where="cone search")
            if all(D.comp[(F.mor(m), legs[a])] == legs[b] for a, b, m in arrows):
                found.append((apex, legs))
    return found


def _mediators(D, cone, other) -> List[int]:
    apex, legs = cone
    other_apex, other_legs = other
    return [
        h for h in D.hom(other_apex, apex)
        if all(D.comp[(leg, h)] == other_leg for leg, other_leg in zip(legs, other_legs))
    ]


def right_kan_extension(P: Functor, F: Functor, budget: Optional[Budget] = None) -> Optional[UniversalPair]:
    """
    Pointwise right Kan extension of F along P: at each c′ the least
    terminal cone over F on the comma category c′/P. The result is then
    certified as a universal pair; None when a limit is missing or the
    certificate fails.
    """
    budget = Budget.ensure(budget)
    if P.source != F.source:
        raise UsageError("Kan extension needs functors with a shared source")
    C, C2, D = P.source, P.target, F.target

    limits = []
    for c2 in range(C2.n_objects):
        index = _comma_index(P, c2)
        cones = _cones(F, index, _comma_arrows(P, index), budget)
        terminal = next((cone for cone in cones if all(len(_mediators(D, cone, other)) == 1 for other in cones)), None)
        if terminal is None:
            logger.debug(f"no limit of {F.name or 'F'} over {C2.objects[c2]}/{P.name or 'P'}")
            return None
        limits.append((index, terminal))

    mor_map = []
    for g in range(C2.n_morphisms):
        index_a, cone_a = limits[C2.dom[g]]
        index_b, cone_b = limits[C2.cod[g]]
        position_a = {entry: k for k, entry in enumerate(index_a)}
        induced = tuple(cone_a[1][position_a[(c, C2.comp[(u, g)])]] for c, u in index_b)
        mediators = _mediators(D, cone_b, (cone_a[0], induced))
        if len(mediators) != 1:
            raise EngineInconsistency("a terminal cone has no unique mediator")
        mor_map.append(mediators[0])
    ext = Functor(C2, D, tuple(cone[0] for _, cone in limits), tuple(mor_map), name=f"Ran_{P.name}({F.name})")
    if not validate_functor(ext).ok:
        raise EngineInconsistency("pointwise limits do not assemble into a functor")

    components = []
    for c in range(C.n_objects):
        index, (_, legs) = limits[P.obj(c)]
        components.append(legs[index.index((c, C2.identity(P.obj(c))))])
    counit = NatTransformation(compose_functors(ext, P), F, tuple(components))
    if not validate_transformation(counit).ok:
        raise EngineInconsistency("pointwise counit is not natural")

    certificate = certify_universal_pair(P, F, ext, counit, budget)
    if not certificate.complete:
        logger.warning(f"pointwise extension fails universality: {certificate.failure}")
        return None
    return UniversalPair(P, F, ext, counit, certificate)


def left_kan_extension(P: Functor, F: Functor, budget: Optional[Budget] = None) -> Optional[UniversalPair]:
    """Lan_P F as the opposite of Ran_{P^op} F^op; the pair then carries a unit F => ext∘P."""
    pair = right_kan_extension(opposite_functor(P), opposite_functor(F), budget)
    if pair is None:
        return None
    return UniversalPair(
        P, F, opposite_functor(pair.ext), opposite_transformation(pair.counit), pair.certificate, side="left"
    )


@dataclass
class DerivedFunctorResult:
    kind: str
    functor: Functor
    transformation: Optional[NatTransformation]
    provenance: Dict[str, str]
    certificate: Optional[UniversalCertificate] = None
    checks: ValidityReport = field(default_factory=lambda: ValidityReport(subject="derived functor"))
    extras: Dict[str, Any] = field(default_factory=dict, repr=False)

    @property
    def ok(self) -> bool:
        return self.checks.ok and (self.certificate is None or self.certificate.complete)

    def to_dict(self) -> dict:
        data = {
            "kind": self.kind,
            "functor": self.functor.describe(),
            "provenance": dict(self.provenance),
            "checks": self.checks.to_dict(),
        }
        if self.transformation is not None:
            data["transformation"] = self.transformation.describe()
        if self.certificate is not None:
            data["certificate"] = self.certificate.to_dict()
        return data


def precondition_counterexample(F: Functor, mdM: ModelData, mdN: ModelData) -> Optional[int]:
    """The least weak equivalence between cofibrant objects that F does not send into W_N."""
    c = mdM.cat
    for w in mdM.W:
        if mdM.is_cofibrant(c.dom[w]) and mdM.is_cofibrant(c.cod[w]) and F.mor(w) not in mdN.W:
            return w
    return None


def check_precondition(F: Functor, mdM: ModelData, mdN: ModelData) -> None:
    if F.source != mdM.cat or F.target != mdN.cat:
        raise UsageError(f"{F.name or 'functor'} does not run from {mdM.name} to {mdN.name}")
    w = precondition_counterexample(F, mdM, mdN)
    if w is not None:
        c = mdM.cat
        raise PreconditionFailed(
            f"{F.name or 'F'} sends the weak equivalence {c.describe(w)} between cofibrant objects "
            f"to {mdN.cat.morphisms[F.mor(w)]}, which is not a weak equivalence",
            counterexample=c.morphisms[w],
        )


def _check(report: ValidityReport, check: str, holds: bool, message: str) -> None:
    report.passed(check)
    if not holds:
        report.fail(check, message)


def derive_K_quillen(
    F: Functor, mdM: ModelData, mdN: ModelData, route: str = ROUTE_CTILDE, budget: Optional[Budget] = None
) -> DerivedFunctorResult:
    """
    𝕃ᴷF as the strict factorization of γ_N∘F∘C̃ (or γ_N∘F∘Q) through γ_M,
    with counit ε_X = γ_N F(c_X) (or γ_N F(q_X)), certified universal.
    """
    budget = Budget.ensure(budget)
    check_precondition(F, mdM, mdN)
    ho_M = build_ho(mdM, ROUTE_CTILDE, budget)
    ho_N = build_ho(mdN, ROUTE_CTILDE, budget)
    c = mdM.cat
    gammaF = compose_functors(ho_N.functor, F)

    if route == ROUTE_Q:
        if mdM.Q is None:
            raise MissingQ(f"{mdM.name} has no cofibrant replacement functor Q")
        replaced = [mdM.Q.functor.obj(x) for x in range(c.n_objects)]
        comparison = list(mdM.Q.transformation.components)
        H = compose_functors(gammaF, mdM.Q.functor)
    else:
        local = [local_cofibrant_replace(mdM, x) for x in range(c.n_objects)]
        replaced = [cx for cx, _ in local]
        comparison = [c_x for _, c_x in local]
        H = Functor(
            c,
            ho_N.category,
            tuple(F.obj(cx) for cx in replaced),
            tuple(gammaF.mor(lift_Cf(mdM, f)) for f in range(c.n_morphisms)),
            name="gamma_N∘F∘C~",
        )
        report = validate_functor(H)
        if not report.ok:
            raise NoFactorization(f"γ_N∘F∘C̃ is not a functor: {report.violations[0]}")

    G = factor_through_gamma(ho_M, H, budget)
    epsilon = NatTransformation(
        compose_functors(G, ho_M.functor), gammaF, tuple(gammaF.mor(m) for m in comparison)
    )
    checks = ValidityReport(subject=f"K derived functor of {F.name or 'F'}")
    checks.merge(validate_transformation(epsilon), prefix="counit ")
    if not checks.ok:
        raise EngineInconsistency(f"counit is not natural: {checks.violations[0]}")

    certificate = certify_universal_pair(ho_M.functor, gammaF, G, epsilon, budget)
    _check(checks, "universal pair", certificate.complete, certificate.failure or "")

    # the factorization of each (F′, ζ) is κ_X = ζ at the replacement of X after F′(γ c_X)⁻¹
    D, gamma_M = ho_N.category, ho_M.functor
    checks.passed("kappa")
    for row in certificate.rows:
        kappa = tuple(
            D.comp[(row.zeta[replaced[x]], D.inverses[row.extension.mor(gamma_M.mor(comparison[x]))])]
            for x in range(c.n_objects)
        )
        if kappa != row.zeta_prime:
            checks.fail("kappa", f"factorization of {describe_functor(row.extension)} differs from κ")
            break

    logger.info(f"K derived functor of {F.name or 'F'} along {route}: certificate with {len(certificate.rows)} rows")
    return DerivedFunctorResult(
        "K",
        G,
        epsilon,
        {"construction": "quillen", "route": route, "source": mdM.name, "target": mdN.name},
        certificate,
        checks,
        extras={"H": H, "ho_M": ho_M, "ho_N": ho_N},
    )


def derive_F(F: Functor, mdM: ModelData, mdN: ModelData, budget: Optional[Budget] = None) -> DerivedFunctorResult:
    """
    𝕃ᶠF with ι: 𝕃ᶠF∘𝓛_M∘i ≅ 𝓛_N∘F∘i, from the least faint factorization
    through (HoK(M), 𝓛_M∘i).
    """
    budget = Budget.ensure(budget)
    check_precondition(F, mdM, mdN)
    hok_M = build_hok(mdM, budget)
    hok_N = build_hok(mdN, budget)
    _, inclusion = cofibrant_inclusion(mdM)
    wit = mc_witness(mdM, hok_M)
    target = compose_functors(compose_functors(hok_N.functor, F), inclusion)

    found = find_faint_factorization(wit, target, budget)
    if found is None:
        raise NoFactorization(f"𝓛_N∘F∘i does not factor through {wit.name}")
    G, eta = found
    iota = inverse_transformation(eta)

    # 𝕃ᶠF∘𝓛_M => 𝓛_N∘F through the cofibrant replacements
    D, L_M, L_N = hok_N.category, hok_M.functor, hok_N.functor
    position = {x: k for k, x in enumerate(inclusion.obj_map)}
    components = []
    for x in range(mdM.cat.n_objects):
        qx, q_x = cofibrant_replace(mdM, x)
        back = D.inverses[G.mor(L_M.mor(q_x))]
        components.append(D.compose_all(L_N.mor(F.mor(q_x)), iota.component(position[qx]), back))
    nu3 = NatTransformation(compose_functors(G, L_M), compose_functors(L_N, F), tuple(components))
    nu3_natural = is_natural(nu3.source, nu3.target, nu3.components)

    checks = ValidityReport(subject=f"F derived functor of {F.name or 'F'}")
    checks.merge(validate_transformation(iota), prefix="iota ")
    _check(checks, "NU3 natural", nu3_natural, "the comparison 𝕃ᶠF∘𝓛_M => 𝓛_N∘F is not natural")
    logger.info(f"F derived functor of {F.name or 'F'}: NU3 transformation natural {nu3_natural}")
    return DerivedFunctorResult(
        "F",
        G,
        iota,
        {"construction": "faint factorization", "source": mdM.name, "target": mdN.name},
        None,
        checks,
        extras={"witness": wit, "target": target, "eta": eta, "nu3": nu3, "nu3_natural": nu3_natural},
    )


def derive_K_kan(
    F: Functor,
    mdM: ModelData,
    mdN: ModelData,
    budget: Optional[Budget] = None,
    faint: Optional[DerivedFunctorResult] = None,
) -> DerivedFunctorResult:
    """
    𝕃ᴷF over the Kan homotopy categories: the F derived pair certified as
    the right Kan extension of 𝓛_N∘F∘i along 𝓛_M∘i, and cross-checked
    against the pointwise extension up to a unique isomorphism.
    """
    budget = Budget.ensure(budget)
    faint = faint or derive_F(F, mdM, mdN, budget)
    wit: LocalizationWitness = faint.extras["witness"]
    target = faint.extras["target"]
    certificate = certify_universal_pair(wit.L, target, faint.functor, faint.transformation, budget)

    checks = ValidityReport(subject=f"K derived functor (Kan) of {F.name or 'F'}")
    _check(checks, "universal pair", certificate.complete, certificate.failure or "")
    pointwise = right_kan_extension(wit.L, target, budget)
    if pointwise is None:
        _check(checks, "pointwise", False, "the pointwise right Kan extension does not exist")
    else:
        matching = [
            theta for theta in enumerate_nat_transformations(faint.functor, pointwise.ext, budget)
            if vertical_composite(pointwise.counit, whisker_left(theta, wit.L)).components
            == faint.transformation.components
        ]
        _check(
            checks,
            "pointwise",
            len(matching) == 1 and matching[0].is_isomorphism,
            f"{len(matching)} comparisons with the pointwise extension",
        )
    return DerivedFunctorResult(
        "K",
        faint.functor,
        faint.transformation,
        {"construction": "kan", "source": mdM.name, "target": mdN.name},
        certificate,
        checks,
        extras=dict(faint.extras, pointwise=pointwise),
    )


def _restrict(F: Functor, sub_inclusion: Functor, name: str) -> Functor:
    """F: M -> M with image in M_c, read as a functor M -> M_c."""
    sub = sub_inclusion.source
    objects = {x: k for k, x in enumerate(sub_inclusion.obj_map)}
    morphisms = {m: k for k, m in enumerate(sub_inclusion.mor_map)}
    try:
        return Functor(
            F.source,
            sub,
            tuple(objects[y] for y in F.obj_map),
            tuple(morphisms[n] for n in F.mor_map),
            name=name,
        )
    except KeyError:
        raise UsageError(f"{name} leaves the cofibrant objects") from None


def _quasi_inverse_iso(
    ho_i: Functor, I: Functor, budget: Budget
) -> NatTransformation:
    found = next(natural_isomorphisms(compose_functors(ho_i, I), identity_functor(ho_i.target), budget), None)
    if found is None:
        raise NoFactorization("supplied functor is not a quasi-inverse of Ho(i)")
    return found


def derive_S(
    F: Functor,
    mdM: ModelData,
    mdN: ModelData,
    quasi_inverse: Union[str, Functor] = USE_Q,
    budget: Optional[Budget] = None,
    max_zigzag_length: int = 12,
) -> DerivedFunctorResult:
    """
    𝕃ˢF = Ho(F)∘𝓘, where Ho(M_c) is the localization of the cofibrant
    objects, Ho(F) the strict factorization of γ_N∘F∘i and 𝓘 either Ho(Q)
    or a supplied quasi-inverse of Ho(i).
    """
    budget = Budget.ensure(budget)
    check_precondition(F, mdM, mdN)
    use_q = isinstance(quasi_inverse, str)
    if use_q and mdM.Q is None:
        raise MissingQ(f"{mdM.name} has no cofibrant replacement functor Q")

    ho_M = build_ho(mdM, ROUTE_CTILDE, budget)
    ho_N = build_ho(mdN, ROUTE_CTILDE, budget)
    sub, inclusion = cofibrant_inclusion(mdM)
    W_c = mdM.W.pullback(inclusion)
    ho_c, gamma_c = localize_by_rewriting(sub, W_c, budget, max_length=max_zigzag_length)
    wit_c = LocalizationWitness(sub, W_c, ho_c, gamma_c, name=f"Ho({sub.name})")

    gammaF = compose_functors(ho_N.functor, F)
    ho_F = factor_through(wit_c, compose_functors(gammaF, inclusion), budget)
    ho_i = factor_through(wit_c, compose_functors(ho_M.functor, inclusion), budget)
    checks = ValidityReport(subject=f"S derived functor of {F.name or 'F'}")
    extras: Dict[str, Any] = {"ho_M": ho_M, "ho_N": ho_N, "ho_c": wit_c, "ho_F": ho_F, "ho_i": ho_i}

    transformation = None
    if use_q:
        Q, q = mdM.Q.functor, mdM.Q.transformation
        Q_c = _restrict(Q, inclusion, "Q")
        ho_Q = factor_through_gamma(ho_M, compose_functors(gamma_c, Q_c), budget)
        I = ho_Q
        beta = NatTransformation(
            compose_functors(ho_i, ho_Q),
            identity_functor(ho_M.category),
            tuple(ho_M.functor.mor(m) for m in q.components),
        )
        beta_c = NatTransformation(
            compose_functors(ho_Q, ho_i),
            identity_functor(ho_c),
            tuple(gamma_c.mor(_restrict_morphism(inclusion, q.component(x))) for x in inclusion.obj_map),
        )
        for label, iso in (("Ho(i)∘Ho(Q) ≅ id", beta), ("Ho(Q)∘Ho(i) ≅ id", beta_c)):
            _check(
                checks,
                label,
                validate_transformation(iso).ok and iso.is_isomorphism,
                "components of q do not form a natural isomorphism",
            )
        derived = compose_functors(ho_F, I)
        expected = compose_functors(gammaF, Q)
        _check(
            checks,
            "LQF∘γ_M = γ_N∘F∘Q",
            compose_functors(derived, ho_M.functor) == expected,
            "the composites differ",
        )
        _check(
            checks,
            "Ho(F)∘Ho(Q) = Ho(F∘Q)",
            compose_functors(ho_F, ho_Q) == factor_through_gamma(ho_M, expected, budget),
            "the factorizations differ",
        )
        transformation = NatTransformation(
            compose_functors(derived, ho_M.functor), gammaF, tuple(gammaF.mor(m) for m in q.components)
        )
        checks.merge(validate_transformation(transformation), prefix="NU2 ")
        extras["ho_Q"] = ho_Q
    else:
        I = quasi_inverse
        if I.source != ho_M.category or I.target != ho_c:
            raise UsageError("quasi-inverse must run from Ho(M) to Ho(M_c)")
        beta = _quasi_inverse_iso(ho_i, I, budget)
        derived = compose_functors(ho_F, I)
    extras.update(quasi_inverse=I, beta=beta)

    logger.info(f"S derived functor of {F.name or 'F'}: Ho(M_c) has {ho_c.n_morphisms} morphisms")
    return DerivedFunctorResult(
        "S",
        derived,
        transformation,
        {"construction": "strict", "quasi_inverse": "Ho(Q)" if use_q else "supplied", "source": mdM.name, "target": mdN.name},
        None,
        checks,
        extras=extras,
    )


def _restrict_morphism(inclusion: Functor, m: int) -> int:
    return inclusion.mor_map.index(m)


def relate_quasi_inverses(
    ho_F: Functor,
    ho_i: Functor,
    I: Functor,
    beta_I: NatTransformation,
    J: Functor,
    beta_J: NatTransformation,
    budget: Optional[Budget] = None,
) -> Tuple[NatTransformation, NatTransformation]:
    """
    The unique 𝔦: 𝓘 ≅ 𝓙 with Ho(i)⋆𝔦 = β_J⁻¹∘β_I, and κ = Ho(F)⋆𝔦
    relating Ho(F)∘𝓘 and Ho(F)∘𝓙.
    """
    budget = Budget.ensure(budget)
    expected = vertical_composite(inverse_transformation(beta_J), beta_I).components
    matching = [
        alpha for alpha in natural_isomorphisms(I, J, budget)
        if whisker_right(ho_i, alpha).components == expected
    ]
    if len(matching) != 1:
        raise EngineInconsistency(f"{len(matching)} isos relate the two quasi-inverses, expected one")
    return matching[0], whisker_right(ho_F, matching[0])


@dataclass
class DerivedComparison:
    name: str
    report: ValidityReport
    results: Dict[str, DerivedFunctorResult] = field(default_factory=dict, repr=False)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.report.ok and all(result.ok for result in self.results.values())

    def to_dict(self) -> dict:
        return {
            "comparison": self.name,
            "ok": self.ok,
            "checks": self.report.to_dict(),
            "results": {label: result.to_dict() for label, result in self.results.items()},
            "details": self.details,
        }


def compare_KF(F: Functor, mdM: ModelData, mdN: ModelData, budget: Optional[Budget] = None) -> DerivedComparison:
    """The certified K pair over HoK equals the F pair (𝕃ᶠF, ι) componentwise."""
    budget = Budget.ensure(budget)
    faint = derive_F(F, mdM, mdN, budget)
    kan = derive_K_kan(F, mdM, mdN, budget, faint=faint)
    report = ValidityReport(subject="K and F derived functors")
    _check(report, "same functor", kan.functor == faint.functor, "the extensions differ")
    _check(
        report,
        "same counit",
        kan.transformation.components == faint.transformation.components,
        "counit and ι differ",
    )
    _check(report, "certificate complete", kan.certificate.complete, kan.certificate.failure or "")
    return DerivedComparison(
        "kf",
        report,
        {"K": kan, "F": faint},
        {"certificate_rows": len(kan.certificate.rows), "certificate_functors": kan.certificate.functors},
    )


def cross_route_iso(
    F: Functor, mdM: ModelData, gamma_N: Functor, source: Functor, target: Functor
) -> NatTransformation:
    """
    𝔦_X = γ_N F(u_X) from the value at C̃X to the value at QX, where u_X
    lifts c_X through q_X under the initial object.
    """
    c = mdM.cat
    components = []
    for x in range(c.n_objects):
        cx, c_x = local_cofibrant_replace(mdM, x)
        qx, q_x = cofibrant_replace(mdM, x)
        square = Square(top=mdM.initial_map(qx), left=mdM.initial_map(cx), bottom=c_x, right=q_x)
        u = solve_lifting(mdM, square)
        if u is None:
            raise EngineInconsistency(f"no lift of c_{c.objects[x]} through q_{c.objects[x]}")
        components.append(gamma_N.mor(F.mor(u)))
    return NatTransformation(source, target, tuple(components))


def compare_KS(F: Functor, mdM: ModelData, mdN: ModelData, budget: Optional[Budget] = None, max_zigzag_length: int = 12) -> DerivedComparison:
    """
    𝕃ᴷF∘γ_M = γ_N∘F∘C̃ and 𝕃ˢ_QF∘γ_M = γ_N∘F∘Q on the nose; the C̃ and Q
    values agree up to the isomorphism 𝔦.
    """
    budget = Budget.ensure(budget)
    if mdM.Q is None:
        raise MissingQ(f"{mdM.name} has no cofibrant replacement functor Q")
    kan = derive_K_quillen(F, mdM, mdN, ROUTE_CTILDE, budget)
    kan_q = derive_K_quillen(F, mdM, mdN, ROUTE_Q, budget)
    strict = derive_S(F, mdM, mdN, USE_Q, budget, max_zigzag_length=max_zigzag_length)
    gamma_M = kan.extras["ho_M"].functor
    gamma_N = kan.extras["ho_N"].functor
    gammaF = compose_functors(gamma_N, F)
    through_q = compose_functors(gammaF, mdM.Q.functor)
    c = mdM.cat

    report = ValidityReport(subject="K and S derived functors")
    _check(report, "LKF∘γ_M = γ_N∘F∘C̃", compose_functors(kan.functor, gamma_M) == kan.extras["H"], "composites differ")
    _check(report, "LSF∘γ_M = γ_N∘F∘Q", compose_functors(strict.functor, gamma_M) == through_q, "composites differ")
    _check(report, "LKF∘γ_M = γ_N∘F∘Q along Q", compose_functors(kan_q.functor, gamma_M) == through_q, "composites differ")
    _check(report, "LKF = LSF along Q", kan_q.functor == strict.functor, "the functors differ")

    iso = cross_route_iso(F, mdM, gamma_N, kan.functor, strict.functor)
    _check(
        report,
        "C̃ and Q values isomorphic",
        validate_transformation(iso).ok and iso.is_isomorphism,
        "components γ_N F(u_X) do not form a natural isomorphism",
    )
    D = gamma_N.target
    compatible = tuple(D.comp[(e, i)] for e, i in zip(kan_q.transformation.components, iso.components))
    _check(report, "iso respects counits", compatible == kan.transformation.components, "ε along Q after 𝔦 is not ε along C̃")

    report.passed("values")
    for x in range(c.n_objects):
        cx, _ = local_cofibrant_replace(mdM, x)
        qx, _ = cofibrant_replace(mdM, x)
        if kan.functor.obj(x) != F.obj(cx) or strict.functor.obj(x) != F.obj(qx):
            report.fail("values", f"value at {c.objects[x]} is not F of its replacement")

    return DerivedComparison(
        "ks",
        report,
        {"K": kan, "K_q": kan_q, "S": strict},
        {"cross_route_iso": iso.describe(), "certificate_rows": len(kan.certificate.rows)},
    )


DERIVERS: Dict[str, Callable[..., DerivedFunctorResult]] = {
    "k": derive_K_quillen,
    "f": derive_F,
    "s": derive_S,
}


def derive_right(kind: str, F: Functor, mdM: ModelData, mdN: ModelData, budget: Optional[Budget] = None, **options) -> DerivedFunctorResult:
    """The right derived functor: the left construction on the opposite models."""
    if kind not in DERIVERS:
        raise UsageError(f"unknown derived functor kind {kind!r}")
    result = DERIVERS[kind](opposite_functor(F), mdM.opposite, mdN.opposite, budget=budget, **options)
    result.provenance["side"] = "right, computed in the opposite models"
    return result
