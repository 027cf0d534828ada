"""
Homotopy categories of a finite model.

HoK has the fibrant-cofibrant objects and homotopy classes of maps between
them, with 𝓛 sending X to F̃C̃X. Ho keeps every object and takes the maps
X -> Y to be the classes between the fibrant-cofibrant replacements of X
and Y, either through the local replacements (route "ctilde") or through
the replacement functors R and Q (route "q"). Zigzags are evaluated in
these concrete categories instead of being rewritten.
"""

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from HoCat.engine.errors import MissingQ, ModelInconsistency, NoFactorization, UsageError
from HoCat.engine.fincat import (
    FinCategory,
    Functor,
    ValidityReport,
    compose_functors,
    enumerate_functors,
    full_subcategory,
    is_natural,
    validate_functor,
)
from HoCat.engine.localization import (
    L1,
    L2,
    L2P,
    Battery,
    LocalizationComparison,
    LocalizationWitness,
    classify,
    compare_localizations,
    sends_W_to_isos,
)
from HoCat.engine.model import (
    ModelData,
    check_cylinder_cofibrancy,
    homotopy_classes,
    lift_FCf,
    lift_Ff,
    local_cofibrant_replace,
    local_fibrant_replace,
)
from HoCat.engine.partition import Partition
from HoCat.engine.rewriting import FWD, Zigzag, check_zigzag, composable_extensions
from HoCat.helpers.budget import Budget
from HoCat.logging import LOGGER

logger = LOGGER(__name__)

ROUTE_CTILDE = "ctilde"
ROUTE_Q = "q"
ROUTE_BOTH = "both"


@dataclass
class HomotopyCategory:
    """HoK or Ho of a model, with its localization functor (𝓛 or γ)."""

    kind: str
    md: ModelData
    category: FinCategory
    functor: Functor
    representatives: Tuple[int, ...]
    route: str = ROUTE_CTILDE
    checks: ValidityReport = field(default_factory=lambda: ValidityReport(subject="homotopy category"))

    @cached_property
    def witness(self) -> LocalizationWitness:
        label = "HoK" if self.kind == "hok" else "Ho"
        return LocalizationWitness(self.md.cat, self.md.W, self.category, self.functor, name=f"{label}({self.md.name})")

    def hom_sizes(self) -> Dict[str, int]:
        h = self.category
        return {
            f"{h.objects[x]}->{h.objects[y]}": len(h.hom(x, y))
            for x in range(h.n_objects)
            for y in range(h.n_objects)
        }

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "model": self.md.name,
            "route": self.route,
            "objects": list(self.category.objects),
            "morphisms": list(self.category.morphisms),
            "hom_sizes": self.hom_sizes(),
            "functor": self.functor.describe(),
            "checks": self.checks.to_dict(),
        }


@dataclass
class _ClassTable:
    category: FinCategory
    partitions: Dict[Tuple[int, int], Partition]
    index: Dict[Tuple[int, int, int], int]
    representatives: List[int]

    def morphism_of(self, x: int, y: int, m: int) -> int:
        """The morphism X -> Y of the quotient holding the class of m."""
        return self.index[(x, y, self.partitions[(x, y)].class_index(m))]


def _class_category(
    md: ModelData, objects: Sequence[int], rho: Sequence[int], name: str, budget: Budget
) -> _ClassTable:
    """
    Objects are `objects`; the maps X -> Y are the homotopy classes of
    Hom(rho X, rho Y), where every rho X is fibrant-cofibrant.
    """
    c = md.cat
    names, dom, cod, reps = [], [], [], []
    partitions: Dict[Tuple[int, int], Partition] = {}
    index: Dict[Tuple[int, int, int], int] = {}
    for i, x in enumerate(objects):
        for j, y in enumerate(objects):
            part = homotopy_classes(md, rho[i], rho[j])
            partitions[(i, j)] = part
            for k, cls in enumerate(part):
                rep = cls[0]
                index[(i, j, k)] = len(names)
                label = f"[{c.morphisms[rep]}]"
                if (rho[i], rho[j]) != (x, y):
                    label += f":{c.objects[x]}->{c.objects[y]}"
                names.append(label)
                dom.append(i)
                cod.append(j)
                reps.append(rep)

    composition = []
    for f in range(len(names)):
        a_cls = partitions[(dom[f], cod[f])].class_of(reps[f])
        for g in range(len(names)):
            if dom[g] != cod[f]:
                continue
            budget.tick(where="homotopy composition")
            b_cls = partitions[(dom[g], cod[g])].class_of(reps[g])
            target = partitions[(dom[f], cod[g])]
            hit = {target.class_index(c.comp[(b, a)]) for a in a_cls for b in b_cls}
            if len(hit) != 1:
                raise ModelInconsistency(
                    f"{name}: composite of [{c.morphisms[reps[g]]}] and [{c.morphisms[reps[f]]}] "
                    f"depends on the representatives"
                )
            composition.append((g, f, index[(dom[f], cod[g], hit.pop())]))

    identities = [
        index[(i, i, partitions[(i, i)].class_index(c.identity(rho[i])))] for i in range(len(objects))
    ]
    category = FinCategory(
        name=name,
        objects=tuple(c.objects[x] for x in objects),
        morphisms=tuple(names),
        dom=tuple(dom),
        cod=tuple(cod),
        identities=tuple(identities),
        composition=tuple(composition),
    )
    return _ClassTable(category, partitions, index, reps)


def _require_functor(F: Functor, what: str) -> None:
    report = validate_functor(F)
    if not report.ok:
        raise ModelInconsistency(f"{what} is not a functor: {report.violations[0]}")


def build_hok(md: ModelData, budget: Optional[Budget] = None) -> HomotopyCategory:
    """HoK(M) and 𝓛: M -> HoK(M), 𝓛X = F̃C̃X, 𝓛f = [F̃C̃f]."""
    budget = Budget.ensure(budget)
    c = md.cat
    fc = md.fc_objects
    position = {x: i for i, x in enumerate(fc)}
    table = _class_category(md, fc, fc, f"HoK({md.name})", budget)

    obj_map, mor_map = [], []
    for x in range(c.n_objects):
        obj_map.append(position[md.replacements.fc_replace(x)])
    for f in range(c.n_morphisms):
        lifted = lift_FCf(md, f)
        mor_map.append(table.morphism_of(obj_map[c.dom[f]], obj_map[c.cod[f]], lifted))
    functor = Functor(c, table.category, tuple(obj_map), tuple(mor_map), name=f"L_{md.name}")
    _require_functor(functor, "𝓛")

    hok = HomotopyCategory("hok", md, table.category, functor, tuple(table.representatives))
    logger.info(f"{md.name}: HoK has {len(fc)} objects and {table.category.n_morphisms} morphisms")
    return hok


def _replacement_route(md: ModelData, route: str) -> Tuple[List[int], List[int]]:
    """Fibrant-cofibrant image of every object and the matching image of every morphism."""
    c = md.cat
    if route == ROUTE_CTILDE:
        rho = [md.replacements.fc_replace(x) for x in range(c.n_objects)]
        return rho, [lift_FCf(md, f) for f in range(c.n_morphisms)]
    if md.Q is None:
        raise MissingQ(f"{md.name} has no cofibrant replacement functor Q")
    Q = md.Q.functor
    if md.R is not None:
        R = md.R.functor
        rho = [R.obj(Q.obj(x)) for x in range(c.n_objects)]
        return rho, [R.mor(Q.mor(f)) for f in range(c.n_morphisms)]
    rho = [local_fibrant_replace(md, Q.obj(x))[0] for x in range(c.n_objects)]
    return rho, [lift_Ff(md, Q.mor(f)) for f in range(c.n_morphisms)]


def _build_ho_route(md: ModelData, route: str, budget: Budget) -> HomotopyCategory:
    c = md.cat
    rho, lifted = _replacement_route(md, route)
    objects = list(range(c.n_objects))
    table = _class_category(md, objects, rho, f"Ho({md.name})", budget)
    mor_map = tuple(table.morphism_of(c.dom[f], c.cod[f], lifted[f]) for f in range(c.n_morphisms))
    gamma = Functor(c, table.category, tuple(objects), mor_map, name=f"gamma_{md.name}")
    _require_functor(gamma, "γ")
    return HomotopyCategory("ho", md, table.category, gamma, tuple(table.representatives), route=route)


def build_ho(md: ModelData, route: str = ROUTE_CTILDE, budget: Optional[Budget] = None) -> HomotopyCategory:
    """
    Ho(M) and γ. With route "both" the C̃ construction is returned and the
    Q construction is built beside it and compared.
    """
    budget = Budget.ensure(budget)
    if route not in (ROUTE_CTILDE, ROUTE_Q, ROUTE_BOTH):
        raise UsageError(f"unknown route {route!r}")
    if route == ROUTE_BOTH and md.Q is None:
        logger.warning(f"{md.name}: no Q given, building Ho along the local replacements only")
        route = ROUTE_CTILDE

    ho = _build_ho_route(md, ROUTE_Q if route == ROUTE_Q else ROUTE_CTILDE, budget)
    ho.checks.merge(check_gamma_functorial(ho))
    if route == ROUTE_BOTH:
        other = _build_ho_route(md, ROUTE_Q, budget)
        _, report = compare_routes(ho, other, budget)
        ho.checks.merge(report)
        ho.route = ROUTE_BOTH
    logger.info(f"{md.name}: Ho has {ho.category.n_objects} objects and {ho.category.n_morphisms} morphisms")
    return ho


def check_gamma_functorial(ho: HomotopyCategory) -> ValidityReport:
    report = ValidityReport(subject=f"gamma {ho.md.name}")
    report.merge(validate_functor(ho.functor), prefix="gamma ")
    report.passed("gamma inverts W")
    ok, bad = sends_W_to_isos(ho.functor, ho.md.W)
    if not ok:
        report.fail("gamma inverts W", f"γ({ho.md.cat.morphisms[bad]}) is not invertible")
    return report


def compare_routes(
    ho_ctilde: HomotopyCategory, ho_q: HomotopyCategory, budget: Optional[Budget] = None
) -> Tuple[Functor, ValidityReport]:
    """The strict factorization of γ_Q through γ_C̃ is an isomorphism fixing objects."""
    report = ValidityReport(subject="routes")
    report.passed("routes agree")
    comparison = factor_through(ho_ctilde.witness, ho_q.functor, budget)
    if list(comparison.obj_map) != list(range(ho_ctilde.category.n_objects)):
        report.fail("routes agree", "comparison moves objects")
    if sorted(comparison.mor_map) != list(range(ho_q.category.n_morphisms)):
        report.fail("routes agree", "comparison is not bijective on morphisms")
    return comparison, report


def gamma_iso_iff_we(ho: HomotopyCategory) -> ValidityReport:
    """γ(f) is invertible exactly when f is a weak equivalence."""
    md, c = ho.md, ho.md.cat
    report = ValidityReport(subject=f"gamma detects W in {md.name}")
    report.passed("gamma iso iff W")
    inverses = ho.category.inverses
    for f in range(c.n_morphisms):
        iso = ho.functor.mor(f) in inverses
        if iso != (f in md.W):
            report.fail("gamma iso iff W", f"{c.describe(f)}: weak equivalence {f in md.W}, γ invertible {iso}")
    return report


def evaluate_word(H: Functor, z: Zigzag) -> int:
    """Forward steps go to H(m), reversed steps to H(w)⁻¹; the word to their composite."""
    d = H.target
    value = d.identity(H.obj(z.start))
    for step in z.word:
        image = H.mor(step.mor)
        if step.kind != FWD:
            if image not in d.inverses:
                raise NoFactorization(f"{H.source.morphisms[step.mor]} is reversed but its image is not invertible")
            image = d.inverses[image]
        value = d.comp[(image, value)]
    return value


def evaluate_zigzag(ho: HomotopyCategory, z: Zigzag) -> int:
    check_zigzag(ho.md.cat, ho.md.W, z)
    return evaluate_word(ho.functor, z)


_presentations = LRUCache(maxsize=64)


@cached(_presentations, key=lambda wit, budget=None: hashkey(wit.base, wit.W.members, wit.loc, wit.L))
def zigzag_presentation(wit: LocalizationWitness, budget: Optional[Budget] = None) -> Dict[int, Zigzag]:
    """A shortest zigzag for every morphism of loc reachable from the image of L."""
    budget = Budget.ensure(budget)
    c, loc, L = wit.base, wit.loc, wit.L
    inverses = loc.inverses
    found: Dict[int, Zigzag] = {}
    for x in range(c.n_objects):
        start = Zigzag(x, x)
        value = loc.identity(L.obj(x))
        found.setdefault(value, start)
        seen = {(x, value)}
        queue = deque([(start, value)])
        while queue:
            z, value = queue.popleft()
            for step in composable_extensions(c, wit.W, z.end):
                budget.tick(where="zigzag presentation")
                image = L.mor(step.mor) if step.kind == FWD else inverses[L.mor(step.mor)]
                reached = loc.comp[(image, value)]
                longer = z.then(step, c)
                if (longer.end, reached) in seen:
                    continue
                seen.add((longer.end, reached))
                found.setdefault(reached, longer)
                queue.append((longer, reached))
    return found


def factor_through(wit: LocalizationWitness, H: Functor, budget: Optional[Budget] = None) -> Functor:
    """The functor G with G∘L = H on the nose, built on zigzags and then verified."""
    base, loc = wit.base, wit.loc
    if H.source != base:
        raise NoFactorization(f"{H.name or 'functor'} does not start at {base.name}")
    ok, bad = sends_W_to_isos(H, wit.W)
    if not ok:
        raise NoFactorization(
            f"{H.name or 'functor'} does not invert {base.morphisms[bad]}", counterexample=base.morphisms[bad]
        )
    presentation = zigzag_presentation(wit, budget)

    obj_map = []
    for y in range(loc.n_objects):
        images = {H.obj(x) for x in range(base.n_objects) if wit.L.obj(x) == y}
        if len(images) != 1:
            raise NoFactorization(f"object {loc.objects[y]} of {loc.name} has {len(images)} candidate images")
        obj_map.append(images.pop())
    mor_map = []
    for m in range(loc.n_morphisms):
        if m not in presentation:
            raise NoFactorization(f"{loc.morphisms[m]} is not a zigzag class of {base.name}")
        mor_map.append(evaluate_word(H, presentation[m]))

    name = f"{H.name}~" if H.name else ""
    G = Functor(loc, H.target, tuple(obj_map), tuple(mor_map), name=name)
    report = validate_functor(G)
    if not report.ok:
        raise NoFactorization(f"zigzag evaluation is not functorial: {report.violations[0]}")
    if compose_functors(G, wit.L) != H:
        raise NoFactorization("factorization does not restore the functor on the nose")
    return G


def factor_through_gamma(ho: HomotopyCategory, H: Functor, budget: Optional[Budget] = None) -> Functor:
    return factor_through(ho.witness, H, budget)


def check_hok_weak(
    md: ModelData,
    hok: HomotopyCategory,
    battery: Battery,
    budget: Optional[Budget] = None,
    conditions: Sequence[str] = (L1, L2, L2P),
) -> Tuple[LocalizationWitness, ValidityReport]:
    """Classify 𝓛 as a weak localization and check that 𝓛 kills the comparison maps."""
    budget = Budget.ensure(budget)
    c, L, h = md.cat, hok.functor, hok.category
    wit = classify(hok.witness, battery, budget, conditions=conditions)

    report = ValidityReport(subject=f"HoK identities {md.name}")
    for check in ("L(c_X) = [id]", "L(f_CX) = [id]", "L(f) = [f] on fibrant-cofibrant maps"):
        report.passed(check)
    for x in range(c.n_objects):
        cx, c_x = local_cofibrant_replace(md, x)
        _, f_cx = local_fibrant_replace(md, cx)
        if not h.is_identity(L.mor(c_x)):
            report.fail("L(c_X) = [id]", f"𝓛({c.morphisms[c_x]}) is {h.morphisms[L.mor(c_x)]}")
        if not h.is_identity(L.mor(f_cx)):
            report.fail("L(f_CX) = [id]", f"𝓛({c.morphisms[f_cx]}) is {h.morphisms[L.mor(f_cx)]}")
    fc = set(md.fc_objects)
    for f in range(c.n_morphisms):
        if c.dom[f] in fc and c.cod[f] in fc:
            representative = hok.representatives[L.mor(f)]
            if not homotopy_classes(md, c.dom[f], c.cod[f]).relates(f, representative):
                report.fail("L(f) = [f] on fibrant-cofibrant maps", f"𝓛({c.morphisms[f]}) is {h.morphisms[L.mor(f)]}")
    return wit, report


def cofibrant_inclusion(md: ModelData) -> Tuple[FinCategory, Functor]:
    """M_c and i: M_c -> M."""
    return full_subcategory(md.cat, md.cofibrant_objects, name=f"{md.cat.name}_c")


def mc_witness(md: ModelData, hok: HomotopyCategory) -> LocalizationWitness:
    """(HoK(M), 𝓛∘i) over the full subcategory of cofibrant objects."""
    sub, inclusion = cofibrant_inclusion(md)
    return LocalizationWitness(
        sub,
        md.W.pullback(inclusion),
        hok.category,
        compose_functors(hok.functor, inclusion),
        name=f"HoK({md.name}) on cofibrant objects",
    )


def check_hok_on_Mc(
    md: ModelData, hok: HomotopyCategory, battery: Battery, budget: Optional[Budget] = None
) -> Tuple[LocalizationWitness, ValidityReport]:
    wit = classify(mc_witness(md, hok), battery, budget, conditions=(L1, L2, L2P))
    return wit, check_cylinder_cofibrancy(md)


def check_ho_strict(
    md: ModelData,
    ho: HomotopyCategory,
    battery: Battery,
    budget: Optional[Budget] = None,
    max_family_objects: int = 3,
) -> Tuple[LocalizationWitness, ValidityReport]:
    """
    Classify γ on all four conditions, then compare naturality out of Ho
    with naturality after γ for every component family on the small
    battery members.
    """
    budget = Budget.ensure(budget)
    wit = classify(ho.witness, battery, budget)
    h, gamma = ho.category, ho.functor

    report = ValidityReport(subject=f"naturality through gamma {md.name}")
    report.passed("naturality through gamma")
    families = 0
    for d in battery:
        if d.n_objects > max_family_objects:
            continue
        functors = list(enumerate_functors(h, d, budget))
        for F, G in product(functors, repeat=2):
            Fg, Gg = compose_functors(F, gamma), compose_functors(G, gamma)
            for components in product(*(d.hom(F.obj(x), G.obj(x)) for x in range(h.n_objects))):
                budget.tick(where="component families")
                families += 1
                if is_natural(F, G, components) != is_natural(Fg, Gg, components):
                    report.fail(
                        "naturality through gamma",
                        f"components {[d.morphisms[m] for m in components]} on {d.name} disagree",
                    )
                    return wit, report
    logger.debug(f"{md.name}: compared naturality of {families} component families")
    return wit, report


def check_replacement_independence(
    md: ModelData, other: ModelData, battery: Battery, budget: Optional[Budget] = None
) -> Tuple[LocalizationComparison, ValidityReport]:
    """Two admissible replacement choices give HoK witnesses related by an identity-on-objects equivalence."""
    budget = Budget.ensure(budget)
    if md.cat != other.cat or md.W.members != other.W.members:
        raise UsageError("replacement choices must share the category and its weak equivalences")
    first = classify(build_hok(md, budget).witness, battery, budget, conditions=(L1, L2))
    second = classify(build_hok(other, budget).witness, battery, budget, conditions=(L1, L2))
    comparison = compare_localizations(first, second, budget)

    report = ValidityReport(subject=f"replacement independence {md.name}")
    report.passed("identity on objects")
    for functor in (comparison.forward, comparison.backward):
        if list(functor.obj_map) != list(range(functor.source.n_objects)):
            report.fail("identity on objects", f"comparison functor moves objects: {functor.describe()['objects']}")
    return comparison, report
