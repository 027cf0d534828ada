"""
The four localization notions, checked against a battery of finite test
categories.

A witness (loc, L) is tested on every battery member D with four
conditions:

    L1   every W-inverting F: base -> D is iso to G∘L for some G
    L2   that G is unique up to a unique iso compatible with the isos
    L2'  -∘L is fully faithful on Fun(loc, D)
    L1'  every W-inverting F equals G∘L for exactly one G

faint = L1 + L2, weak = L1 + L2', strong = L1', strict = L1' + L2'.
Verdicts are relative to the battery they were computed on.
"""

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from HoCat.engine.errors import EngineInconsistency, NotLocalization
from HoCat.engine.fincat import (
    FinCategory,
    Functor,
    MorphismClass,
    NatTransformation,
    compose_functors,
    enumerate_functors,
    enumerate_nat_transformations,
    identity_functor,
    identity_transformation,
    natural_isomorphisms,
    vertical_composite,
    whisker_left,
    whisker_right,
)
from HoCat.helpers.budget import Budget
from HoCat.logging import LOGGER

logger = LOGGER(__name__)

L1, L2, L2P, L1P = "L1", "L2", "L2'", "L1'"
CONDITIONS = (L1, L2, L2P, L1P)
NOTIONS = {
    "faint": (L1, L2),
    "weak": (L1, L2P),
    "strong": (L1P,),
    "strict": (L1P, L2P),
}
# (stronger, weaker)
IMPLICATIONS = (("strict", "strong"), ("strict", "weak"), ("weak", "faint"))


class FlagStatus(str, Enum):
    VERIFIED = "verified"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


@dataclass
class Flag:
    status: FlagStatus = FlagStatus.UNKNOWN
    battery: Optional[str] = None
    counterexample: Optional[str] = None

    @property
    def verified(self) -> bool:
        return self.status is FlagStatus.VERIFIED

    def to_dict(self) -> dict:
        data = {"status": self.status.value}
        if self.battery is not None:
            data["battery"] = self.battery
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample
        return data


@dataclass(frozen=True)
class Battery:
    name: str
    members: Tuple[FinCategory, ...]

    def __iter__(self) -> Iterator[FinCategory]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def names(self) -> List[str]:
        return [d.name for d in self.members]


@dataclass
class CheckResult:
    """Outcome of one condition on one battery member."""

    condition: str
    target: str
    holds: bool
    counterexample: Optional[str] = None
    count: int = 0
    items: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        data = {"target": self.target, "holds": self.holds, "count": self.count}
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample
        return data


@dataclass
class LocalizationWitness:
    base: FinCategory
    W: MorphismClass
    loc: FinCategory
    L: Functor
    name: str = ""
    flags: Dict[str, Flag] = field(default_factory=lambda: {notion: Flag() for notion in NOTIONS})
    evidence: Dict[str, List[CheckResult]] = field(default_factory=dict)

    def __post_init__(self):
        if self.L.source != self.base or self.L.target != self.loc:
            raise NotLocalization(f"{self.name or 'witness'}: L does not run from the base to the localization")
        ok, bad = sends_W_to_isos(self.L, self.W)
        if not ok:
            raise NotLocalization(
                f"{self.name or 'witness'}: L does not invert {self.base.morphisms[bad]}",
                counterexample=self.base.morphisms[bad],
            )
        if not self.name:
            self.name = f"({self.loc.name}, {self.L.name or 'L'})"

    def flag(self, notion: str) -> Flag:
        return self.flags[notion]

    def to_dict(self) -> dict:
        counterexamples = [
            f"{notion}: {flag.counterexample}" for notion, flag in self.flags.items() if flag.counterexample
        ]
        batteries = {flag.battery for flag in self.flags.values() if flag.battery}
        return {
            "witness": self.name,
            "base": self.base.name,
            "loc": {"name": self.loc.name, "objects": self.loc.n_objects, "morphisms": self.loc.n_morphisms},
            "flags": {notion: flag.to_dict() for notion, flag in self.flags.items()},
            "battery": sorted(batteries)[0] if len(batteries) == 1 else sorted(batteries),
            "evidence": {
                condition: [result.to_dict() for result in results]
                for condition, results in self.evidence.items()
            },
            "counterexamples": counterexamples,
        }


def sends_W_to_isos(F: Functor, W: MorphismClass) -> Tuple[bool, Optional[int]]:
    """(True, None), or (False, least w in W whose image is not invertible)."""
    inverses = F.target.inverses
    for w in W:
        if F.mor(w) not in inverses:
            return False, w
    return True, None


def inverting_functors(base: FinCategory, W: MorphismClass, d: FinCategory, budget: Optional[Budget] = None) -> Iterator[Functor]:
    """The objects of [base, d]_W."""
    for F in enumerate_functors(base, d, budget):
        if sends_W_to_isos(F, W)[0]:
            yield F


def describe_functor(F: Functor) -> str:
    s, t = F.source, F.target
    objects = ", ".join(f"{s.objects[x]}->{t.objects[y]}" for x, y in enumerate(F.obj_map))
    morphisms = ", ".join(
        f"{s.morphisms[m]}->{t.morphisms[n]}" for m, n in enumerate(F.mor_map) if not s.is_identity(m)
    )
    return f"{s.name}->{t.name} [{objects}]" + (f" [{morphisms}]" if morphisms else "")


def factorizations(
    wit: LocalizationWitness, F: Functor, budget: Optional[Budget] = None
) -> Iterator[Tuple[Functor, NatTransformation]]:
    """Every (G, η) with η: F ≅ G∘L, in canonical order."""
    budget = Budget.ensure(budget)
    for G in enumerate_functors(wit.loc, F.target, budget):
        for eta in natural_isomorphisms(F, compose_functors(G, wit.L), budget):
            yield G, eta


def find_faint_factorization(
    wit: LocalizationWitness, F: Functor, budget: Optional[Budget] = None
) -> Optional[Tuple[Functor, NatTransformation]]:
    """The least (G, η: F ≅ G∘L), or None."""
    return next(factorizations(wit, F, budget), None)


def strict_factorizations(wit: LocalizationWitness, d: FinCategory, budget: Optional[Budget] = None) -> Dict[Functor, List[Functor]]:
    """Every G: loc -> d grouped by G∘L."""
    found: Dict[Functor, List[Functor]] = {}
    for G in enumerate_functors(wit.loc, d, budget):
        found.setdefault(compose_functors(G, wit.L), []).append(G)
    return found


def check_L1_faint(wit: LocalizationWitness, d: FinCategory, budget: Optional[Budget] = None) -> CheckResult:
    budget = Budget.ensure(budget)
    result = CheckResult(L1, d.name, holds=True)
    for F in inverting_functors(wit.base, wit.W, d, budget):
        found = find_faint_factorization(wit, F, budget)
        if found is None:
            result.holds = False
            result.counterexample = f"{describe_functor(F)} does not factor through {wit.loc.name}"
            break
        result.items.append((F, *found))
        result.count += 1
    return result


def _whisker_matches(epsilon: NatTransformation, L: Functor, eta: NatTransformation, eta2: NatTransformation) -> bool:
    return vertical_composite(whisker_left(epsilon, L), eta).components == eta2.components


def check_L2_faint(wit: LocalizationWitness, d: FinCategory, budget: Optional[Budget] = None) -> CheckResult:
    """
    Every factorization (G', η') is reached from the least one (G, η) by
    exactly one iso ε: G ≅ G' with (ε⋆L)∘η = η'. Uniqueness between any
    two factorizations follows by composing through the least one.
    """
    budget = Budget.ensure(budget)
    result = CheckResult(L2, d.name, holds=True)
    for F in inverting_functors(wit.base, wit.W, d, budget):
        pairs = factorizations(wit, F, budget)
        least = next(pairs, None)
        if least is None:
            continue
        G, eta = least
        for G2, eta2 in [least, *pairs]:
            budget.tick(where="L2 comparison")
            matching = [
                epsilon for epsilon in natural_isomorphisms(G, G2, budget)
                if _whisker_matches(epsilon, wit.L, eta, eta2)
            ]
            result.count += 1
            if len(matching) != 1:
                result.holds = False
                result.counterexample = (
                    f"{len(matching)} comparison isos between factorizations of {describe_functor(F)}"
                )
                return result
    return result


def check_L2prime(wit: LocalizationWitness, d: FinCategory, budget: Optional[Budget] = None) -> CheckResult:
    """ζ ↦ ζ⋆L is a bijection Nat(F, G) -> Nat(F∘L, G∘L) for all F, G: loc -> d."""
    budget = Budget.ensure(budget)
    result = CheckResult(L2P, d.name, holds=True)
    functors = list(enumerate_functors(wit.loc, d, budget))
    for F in functors:
        FL = compose_functors(F, wit.L)
        for G in functors:
            GL = compose_functors(G, wit.L)
            images = Counter(
                whisker_left(zeta, wit.L).components for zeta in enumerate_nat_transformations(F, G, budget)
            )
            targets = {alpha.components for alpha in enumerate_nat_transformations(FL, GL, budget)}
            result.count += 1
            collided = [components for components, n in images.items() if n > 1]
            if collided:
                result.holds = False
                result.counterexample = (
                    f"whiskering is not injective on Nat({describe_functor(F)}, {describe_functor(G)}): "
                    f"{len(collided)} collisions"
                )
                return result
            missed = sorted(targets - set(images))
            if missed:
                result.holds = False
                result.counterexample = (
                    f"transformation with components {list(missed[0])} between "
                    f"{describe_functor(FL)} and {describe_functor(GL)} is not whiskered from loc"
                )
                return result
    return result


def check_L1prime_strong(wit: LocalizationWitness, d: FinCategory, budget: Optional[Budget] = None) -> CheckResult:
    budget = Budget.ensure(budget)
    result = CheckResult(L1P, d.name, holds=True)
    by_composite = strict_factorizations(wit, d, budget)
    for F in inverting_functors(wit.base, wit.W, d, budget):
        found = by_composite.get(F, [])
        if len(found) != 1:
            result.holds = False
            result.counterexample = f"{describe_functor(F)} has {len(found)} on-the-nose factorizations"
            return result
        result.items.append((F, found[0]))
        result.count += 1
    return result


CHECKERS = {
    L1: check_L1_faint,
    L2: check_L2_faint,
    L2P: check_L2prime,
    L1P: check_L1prime_strong,
}


def classify(
    wit: LocalizationWitness,
    battery: Battery,
    budget: Optional[Budget] = None,
    conditions: Sequence[str] = CONDITIONS,
) -> LocalizationWitness:
    """
    Fill the witness flags from the conditions over every battery member.
    Notions whose conditions were not all run stay unknown.
    """
    budget = Budget.ensure(budget)
    verdicts: Dict[str, Tuple[bool, Optional[str]]] = {}
    for condition in CONDITIONS:
        if condition not in conditions:
            continue
        results = []
        holds, counterexample = True, None
        for d in battery:
            result = CHECKERS[condition](wit, d, budget)
            logger.debug(f"{wit.name}: {condition} on {d.name} -> {result.holds}")
            results.append(result)
            if not result.holds and holds:
                holds, counterexample = False, f"{d.name}: {result.counterexample}"
        wit.evidence[condition] = results
        verdicts[condition] = (holds, counterexample)

    for notion, needed in NOTIONS.items():
        if not all(condition in verdicts for condition in needed):
            wit.flags[notion] = Flag()
            continue
        failed = [verdicts[condition][1] for condition in needed if not verdicts[condition][0]]
        if failed:
            wit.flags[notion] = Flag(FlagStatus.REFUTED, battery.name, failed[0])
        else:
            wit.flags[notion] = Flag(FlagStatus.VERIFIED, battery.name)

    check_implications(wit)
    logger.info(
        f"{wit.name} on battery {battery.name}: "
        + ", ".join(f"{notion} {flag.status.value}" for notion, flag in wit.flags.items())
    )
    return wit


def check_implications(wit: LocalizationWitness) -> None:
    for stronger, weaker in IMPLICATIONS:
        s, w = wit.flags[stronger], wit.flags[weaker]
        if s.verified and w.status is FlagStatus.REFUTED:
            message = f"{wit.name}: {stronger} verified but {weaker} refuted ({w.counterexample})"
            logger.critical(message)
            raise EngineInconsistency(message)


@dataclass
class PrecompositionReport:
    """How -∘L: Fun(loc, d) -> [base, d]_W behaves on one battery member."""

    target: str
    essentially_surjective: bool
    fully_faithful: bool
    bijective_on_objects: bool
    bijective_on_morphisms: bool
    quasi_inverse: Dict[Functor, Tuple[Functor, NatTransformation]] = field(default_factory=dict, repr=False)

    @property
    def equivalence(self) -> bool:
        return self.essentially_surjective and self.fully_faithful

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "essentially_surjective": self.essentially_surjective,
            "fully_faithful": self.fully_faithful,
            "bijective_on_objects": self.bijective_on_objects,
            "bijective_on_morphisms": self.bijective_on_morphisms,
            "quasi_inverse_size": len(self.quasi_inverse),
        }


def precomposition_report(wit: LocalizationWitness, d: FinCategory, budget: Optional[Budget] = None) -> PrecompositionReport:
    budget = Budget.ensure(budget)
    inverting = list(inverting_functors(wit.base, wit.W, d, budget))
    functors = list(enumerate_functors(wit.loc, d, budget))

    quasi_inverse = {}
    for F in inverting:
        found = find_faint_factorization(wit, F, budget)
        if found is not None:
            quasi_inverse[F] = found
    essentially_surjective = len(quasi_inverse) == len(inverting)
    fully_faithful = check_L2prime(wit, d, budget).holds

    composites = [compose_functors(G, wit.L) for G in functors]
    bijective_on_objects = set(composites) == set(inverting) and len(set(composites)) == len(composites)

    def total_morphisms(objects: Sequence[Functor]) -> int:
        return sum(
            1 for F in objects for G in objects for _ in enumerate_nat_transformations(F, G, budget)
        )

    bijective_on_morphisms = (
        bijective_on_objects and fully_faithful and total_morphisms(functors) == total_morphisms(inverting)
    )
    return PrecompositionReport(
        d.name, essentially_surjective, fully_faithful, bijective_on_objects, bijective_on_morphisms, quasi_inverse
    )


def identity_witness(c: FinCategory, W: Optional[MorphismClass] = None) -> LocalizationWitness:
    """(c, id): the localization at the identities, or at any class of isomorphisms."""
    W = W or MorphismClass.identities_of(c)
    return LocalizationWitness(c, W, c, identity_functor(c), name=f"identity({c.name})")


def extend_battery(
    battery: Battery,
    wit: LocalizationWitness,
    include_loc: bool = True,
    include_base: bool = True,
    max_self_morphisms: int = 9,
) -> Battery:
    """Add loc and base themselves when they are small enough to enumerate against."""
    members = list(battery.members)
    added = []
    for label, c, wanted in (("loc", wit.loc, include_loc), ("base", wit.base, include_base)):
        if not wanted or c.n_morphisms > max_self_morphisms or c in members:
            continue
        members.append(c)
        added.append(label)
    if not added:
        return battery
    return Battery(f"{battery.name}+{'+'.join(added)}", tuple(members))


@dataclass
class LocalizationComparison:
    forward: Functor  # loc1 -> loc2
    backward: Functor  # loc2 -> loc1
    eta_forward: NatTransformation  # L2 ≅ forward∘L1
    eta_backward: NatTransformation  # L1 ≅ backward∘L2
    unit: NatTransformation  # id_loc1 ≅ backward∘forward
    counit: NatTransformation  # id_loc2 ≅ forward∘backward
    isomorphism: bool

    def to_dict(self) -> dict:
        return {
            "forward": self.forward.describe(),
            "backward": self.backward.describe(),
            "eta_forward": self.eta_forward.describe(),
            "eta_backward": self.eta_backward.describe(),
            "unit": self.unit.describe(),
            "counit": self.counit.describe(),
            "isomorphism_of_categories": self.isomorphism,
        }


def _require_faint(wit: LocalizationWitness) -> None:
    if not any(wit.flags[notion].verified for notion in NOTIONS):
        raise NotLocalization(f"{wit.name} has no verified localization flag")


def _strict_or_faint(
    wit: LocalizationWitness, F: Functor, strict: bool, budget: Budget
) -> Tuple[Functor, NatTransformation]:
    if strict:
        found = strict_factorizations(wit, F.target, budget).get(F, [])
        if len(found) == 1:
            return found[0], identity_transformation(F)
        message = f"{wit.name} is strong but {describe_functor(F)} has {len(found)} factorizations"
        if F.target.name in {result.target for result in wit.evidence.get(L1P, [])}:
            raise EngineInconsistency(message)
        # the strong flag only speaks for the battery it was checked on
        raise NotLocalization(f"{message}; {F.target.name} lies outside battery {wit.flags['strong'].battery}")
    found = find_faint_factorization(wit, F, budget)
    if found is None:
        raise NotLocalization(f"{describe_functor(F)} does not factor through {wit.name}")
    return found


def _unique_compatible_iso(
    source: Functor, target: Functor, L: Functor, expected: NatTransformation, budget: Budget
) -> NatTransformation:
    matching = [
        alpha for alpha in natural_isomorphisms(source, target, budget)
        if whisker_left(alpha, L).components == expected.components
    ]
    if len(matching) != 1:
        raise EngineInconsistency(f"{len(matching)} isos satisfy the whiskering equation, expected exactly one")
    return matching[0]


def compare_localizations(
    w1: LocalizationWitness, w2: LocalizationWitness, budget: Optional[Budget] = None
) -> LocalizationComparison:
    """
    The comparison functors between two localizations of the same (base, W)
    and the isos relating their composites to the identities, each the
    unique one compatible with the factorization isos.
    """
    budget = Budget.ensure(budget)
    if w1.base != w2.base or w1.W.members != w2.W.members:
        raise NotLocalization("witnesses localize different (base, W)")
    _require_faint(w1)
    _require_faint(w2)
    strict = w1.flags["strong"].verified and w2.flags["strong"].verified

    forward, eta_forward = _strict_or_faint(w1, w2.L, strict, budget)
    backward, eta_backward = _strict_or_faint(w2, w1.L, strict, budget)

    # L1 ≅ backward∘L2 ≅ backward∘forward∘L1, and symmetrically
    around1 = vertical_composite(whisker_right(backward, eta_forward), eta_backward)
    around2 = vertical_composite(whisker_right(forward, eta_backward), eta_forward)
    round1 = compose_functors(backward, forward)
    round2 = compose_functors(forward, backward)
    unit = _unique_compatible_iso(identity_functor(w1.loc), round1, w1.L, around1, budget)
    counit = _unique_compatible_iso(identity_functor(w2.loc), round2, w2.L, around2, budget)

    isomorphism = round1.is_identity and round2.is_identity
    if strict and not isomorphism:
        raise EngineInconsistency("strong localizations compared to functors that are not mutually inverse")
    logger.info(
        f"compared {w1.name} and {w2.name}: "
        + ("isomorphism of categories" if isomorphism else "equivalence of categories")
    )
    return LocalizationComparison(forward, backward, eta_forward, eta_backward, unit, counit, isomorphism)

