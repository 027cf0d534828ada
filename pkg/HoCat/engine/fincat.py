"""
Explicit finite categories.

A category is stored with a total composition table, so equality of
morphisms is equality of integer ids. Objects and morphisms are dense
ids in file order; names are kept only for input and reports.
Everything that enumerates (functors, natural transformations, cocones)
walks candidates in increasing id order, so "the first one found" is the
canonical least one.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from HoCat.engine.errors import InstanceError
from HoCat.helpers.budget import Budget
from HoCat.logging import LOGGER

logger = LOGGER(__name__)

OP_SUFFIX = "^op"


@dataclass(frozen=True)
class FinCategory:
    name: str
    objects: Tuple[str, ...]
    morphisms: Tuple[str, ...]
    dom: Tuple[int, ...]
    cod: Tuple[int, ...]
    identities: Tuple[int, ...]
    composition: Tuple[Tuple[int, int, int], ...]  # (g, f, g∘f)

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "morphisms", tuple(self.morphisms))
        object.__setattr__(self, "dom", tuple(self.dom))
        object.__setattr__(self, "cod", tuple(self.cod))
        object.__setattr__(self, "identities", tuple(self.identities))
        object.__setattr__(
            self, "composition", tuple(sorted({tuple(entry) for entry in self.composition}))
        )

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash(
            (self.name, self.objects, self.morphisms, self.dom, self.cod, self.identities, self.composition)
        )

    def __repr__(self) -> str:
        return f"FinCategory({self.name!r}, objects={self.n_objects}, morphisms={self.n_morphisms})"

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.morphisms)

    @cached_property
    def comp(self) -> Dict[Tuple[int, int], int]:
        return {(g, f): gf for g, f, gf in self.composition}

    @cached_property
    def _homs(self) -> Dict[Tuple[int, int], Tuple[int, ...]]:
        homs: Dict[Tuple[int, int], List[int]] = {}
        for m, (x, y) in enumerate(zip(self.dom, self.cod)):
            homs.setdefault((x, y), []).append(m)
        return {key: tuple(value) for key, value in homs.items()}

    def hom(self, x: int, y: int) -> Tuple[int, ...]:
        return self._homs.get((x, y), ())

    def outgoing(self, x: int) -> Tuple[int, ...]:
        return tuple(m for m in range(self.n_morphisms) if self.dom[m] == x)

    def identity(self, x: int) -> int:
        return self.identities[x]

    @cached_property
    def _identity_set(self) -> FrozenSet[int]:
        return frozenset(self.identities)

    def is_identity(self, m: int) -> bool:
        return m in self._identity_set

    def compose(self, g: int, f: int) -> int:
        """Return g∘f."""
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise ValueError(
                f"{self.morphisms[g]} and {self.morphisms[f]} are not composable in {self.name}"
            ) from None

    def compose_all(self, *morphisms: int) -> int:
        """compose_all(h, g, f) is h∘g∘f."""
        result = morphisms[-1]
        for m in reversed(morphisms[:-1]):
            result = self.compose(m, result)
        return result

    @cached_property
    def _object_index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.objects)}

    @cached_property
    def _morphism_index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.morphisms)}

    def object_id(self, name: str) -> int:
        try:
            return self._object_index[name]
        except KeyError:
            raise InstanceError(f"unknown object {name!r} in {self.name}") from None

    def morphism_id(self, name: str) -> int:
        try:
            return self._morphism_index[name]
        except KeyError:
            raise InstanceError(f"unknown morphism {name!r} in {self.name}") from None

    def describe(self, m: int) -> str:
        return f"{self.morphisms[m]}: {self.objects[self.dom[m]]} -> {self.objects[self.cod[m]]}"

    @cached_property
    def inverses(self) -> Dict[int, int]:
        """Every isomorphism mapped to its (unique) inverse."""
        found = {}
        for m in range(self.n_morphisms):
            x, y = self.dom[m], self.cod[m]
            for n in self.hom(y, x):
                if self.comp[(n, m)] == self.identities[x] and self.comp[(m, n)] == self.identities[y]:
                    found[m] = n
                    break
        return found

    @cached_property
    def touching(self) -> Tuple[Tuple[Tuple[int, int, int], ...], ...]:
        """Composition entries grouped by every morphism occurring in them."""
        groups: List[List[Tuple[int, int, int]]] = [[] for _ in range(self.n_morphisms)]
        for entry in self.composition:
            for m in set(entry):
                groups[m].append(entry)
        return tuple(tuple(group) for group in groups)

    @cached_property
    def dual(self) -> "FinCategory":
        if self.name.endswith(OP_SUFFIX):
            name = self.name[: -len(OP_SUFFIX)]
        else:
            name = self.name + OP_SUFFIX
        op = FinCategory(
            name=name,
            objects=self.objects,
            morphisms=self.morphisms,
            dom=self.cod,
            cod=self.dom,
            identities=self.identities,
            composition=tuple((f, g, gf) for g, f, gf in self.composition),
        )
        op.__dict__["dual"] = self
        return op


@dataclass(frozen=True)
class MorphismClass:
    """A set of morphisms of one category (W, Cof, Fib and friends)."""

    parent: FinCategory
    members: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        stray = [m for m in self.members if not 0 <= m < self.parent.n_morphisms]
        if stray:
            raise InstanceError(f"class members {stray} are not morphisms of {self.parent.name}")

    def __contains__(self, m: int) -> bool:
        return m in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def names(self) -> List[str]:
        return [self.parent.morphisms[m] for m in self]

    def pullback(self, functor: "Functor") -> "MorphismClass":
        """Morphisms of functor.source sent into this class."""
        return MorphismClass(
            functor.source,
            frozenset(m for m in range(functor.source.n_morphisms) if functor.mor(m) in self.members),
        )

    def on_opposite(self) -> "MorphismClass":
        return MorphismClass(opposite(self.parent), self.members)

    @classmethod
    def identities_of(cls, c: FinCategory) -> "MorphismClass":
        return cls(c, frozenset(c.identities))

    @classmethod
    def isomorphisms_of(cls, c: FinCategory) -> "MorphismClass":
        return cls(c, frozenset(c.inverses))

    @classmethod
    def everything(cls, c: FinCategory) -> "MorphismClass":
        return cls(c, frozenset(range(c.n_morphisms)))

    @classmethod
    def of_names(cls, c: FinCategory, names: Iterable[str]) -> "MorphismClass":
        return cls(c, frozenset(c.morphism_id(name) for name in names))


@dataclass
class ValidityReport:
    """Itemized verdict: every check that ran, with the violations it found."""

    subject: str
    checks: Dict[str, List[str]] = field(default_factory=dict)

    def passed(self, check: str) -> None:
        self.checks.setdefault(check, [])

    def fail(self, check: str, message: str) -> None:
        self.checks.setdefault(check, []).append(message)

    @property
    def violations(self) -> List[str]:
        return [f"{check}: {message}" for check, messages in self.checks.items() for message in messages]

    @property
    def ok(self) -> bool:
        return not any(self.checks.values())

    def merge(self, other: "ValidityReport", prefix: str = "") -> "ValidityReport":
        for check, messages in other.checks.items():
            key = f"{prefix}{check}"
            self.checks.setdefault(key, []).extend(messages)
        return self

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checks": {
                check: {"ok": not messages, "violations": list(messages)}
                for check, messages in self.checks.items()
            },
        }


def validate_category(c: FinCategory) -> ValidityReport:
    report = ValidityReport(subject=f"category {c.name}")
    n_obj, n_mor = c.n_objects, c.n_morphisms

    report.passed("shape")
    if len(c.dom) != n_mor or len(c.cod) != n_mor:
        report.fail("shape", "dom/cod tables do not cover every morphism")
        return report
    for m in range(n_mor):
        if not (0 <= c.dom[m] < n_obj and 0 <= c.cod[m] < n_obj):
            report.fail("shape", f"{c.morphisms[m]} has endpoints outside the object set")
    if len(c.identities) != n_obj:
        report.fail("shape", "identity table does not cover every object")
    for x, i in enumerate(c.identities[:n_obj]):
        if not 0 <= i < n_mor or c.dom[i] != x or c.cod[i] != x:
            report.fail("shape", f"identity of {c.objects[x]} is not an endomorphism of it")
    if not report.ok:
        return report

    report.passed("composition")
    seen = set()
    for g, f, gf in c.composition:
        if not all(0 <= m < n_mor for m in (g, f, gf)):
            report.fail("composition", f"entry ({g}, {f}, {gf}) names unknown morphisms")
            continue
        if (g, f) in seen:
            report.fail("composition", f"{c.morphisms[g]}∘{c.morphisms[f]} is defined twice")
        seen.add((g, f))
        if c.cod[f] != c.dom[g]:
            report.fail("composition", f"{c.morphisms[g]}∘{c.morphisms[f]} is defined but not composable")
        elif c.dom[gf] != c.dom[f] or c.cod[gf] != c.cod[g]:
            report.fail("composition", f"{c.morphisms[g]}∘{c.morphisms[f]} has the wrong endpoints")
    for f in range(n_mor):
        for g in range(n_mor):
            if c.dom[g] == c.cod[f] and (g, f) not in seen:
                report.fail("composition", f"missing composite {c.morphisms[g]}∘{c.morphisms[f]}")
    if not report.ok:
        return report

    report.passed("identity")
    for f in range(n_mor):
        if c.comp[(c.identities[c.cod[f]], f)] != f or c.comp[(f, c.identities[c.dom[f]])] != f:
            report.fail("identity", f"identity law at {c.morphisms[f]}")

    report.passed("associativity")
    for f in range(n_mor):
        for g in c.outgoing(c.cod[f]):
            gf = c.comp[(g, f)]
            for h in c.outgoing(c.cod[g]):
                if c.comp[(h, gf)] != c.comp[(c.comp[(h, g)], f)]:
                    report.fail(
                        "associativity",
                        f"({c.morphisms[h]}∘{c.morphisms[g]})∘{c.morphisms[f]} "
                        f"differs from {c.morphisms[h]}∘({c.morphisms[g]}∘{c.morphisms[f]})",
                    )
    return report


def is_isomorphism(c: FinCategory, m: int) -> Tuple[bool, Optional[int]]:
    """Return (True, inverse) for an isomorphism, else (False, None)."""
    inverse = c.inverses.get(m)
    return inverse is not None, inverse


def opposite(c: FinCategory) -> FinCategory:
    return c.dual


@dataclass(frozen=True)
class Functor:
    source: FinCategory
    target: FinCategory
    obj_map: Tuple[int, ...]
    mor_map: Tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "obj_map", tuple(self.obj_map))
        object.__setattr__(self, "mor_map", tuple(self.mor_map))

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.source, self.target, self.obj_map, self.mor_map))

    def __repr__(self) -> str:
        label = self.name or "Functor"
        return f"<{label}: {self.source.name} -> {self.target.name} {self.obj_map}/{self.mor_map}>"

    def obj(self, x: int) -> int:
        return self.obj_map[x]

    def mor(self, m: int) -> int:
        return self.mor_map[m]

    @property
    def is_identity(self) -> bool:
        return (
            self.source == self.target
            and self.obj_map == tuple(range(self.source.n_objects))
            and self.mor_map == tuple(range(self.source.n_morphisms))
        )

    def describe(self) -> dict:
        s, t = self.source, self.target
        return {
            "source": s.name,
            "target": t.name,
            "objects": {s.objects[x]: t.objects[y] for x, y in enumerate(self.obj_map)},
            "morphisms": {s.morphisms[m]: t.morphisms[n] for m, n in enumerate(self.mor_map)},
        }


@dataclass(frozen=True)
class NatTransformation:
    source: Functor
    target: Functor
    components: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.source, self.target, self.components))

    def __repr__(self) -> str:
        return f"<NatTransformation {self.components}>"

    def component(self, x: int) -> int:
        return self.components[x]

    @property
    def is_identity(self) -> bool:
        d = self.source.target
        return self.source == self.target and all(d.is_identity(m) for m in self.components)

    @property
    def is_isomorphism(self) -> bool:
        inverses = self.source.target.inverses
        return all(m in inverses for m in self.components)

    def describe(self) -> dict:
        c, d = self.source.source, self.source.target
        return {c.objects[x]: d.morphisms[m] for x, m in enumerate(self.components)}


def validate_functor(F: Functor) -> ValidityReport:
    c, d = F.source, F.target
    report = ValidityReport(subject=f"functor {F.name or c.name + ' -> ' + d.name}")

    report.passed("shape")
    if len(F.obj_map) != c.n_objects or len(F.mor_map) != c.n_morphisms:
        report.fail("shape", "object or morphism map is not total")
        return report
    if not all(0 <= y < d.n_objects for y in F.obj_map) or not all(0 <= n < d.n_morphisms for n in F.mor_map):
        report.fail("shape", "map leaves the target category")
        return report

    report.passed("endpoints")
    for m in range(c.n_morphisms):
        n = F.mor(m)
        if d.dom[n] != F.obj(c.dom[m]) or d.cod[n] != F.obj(c.cod[m]):
            report.fail("endpoints", f"{c.morphisms[m]} is sent to {d.describe(n)}")
    if not report.ok:
        return report

    report.passed("identities")
    for x in range(c.n_objects):
        if F.mor(c.identity(x)) != d.identity(F.obj(x)):
            report.fail("identities", f"identity of {c.objects[x]} is not preserved")

    report.passed("composition")
    for g, f, gf in c.composition:
        if d.comp[(F.mor(g), F.mor(f))] != F.mor(gf):
            report.fail("composition", f"F({c.morphisms[g]}∘{c.morphisms[f]}) differs from the composite of images")
    return report


def validate_transformation(alpha: NatTransformation) -> ValidityReport:
    F, G = alpha.source, alpha.target
    c, d = F.source, F.target
    report = ValidityReport(subject="natural transformation")

    report.passed("parallel")
    if F.source != G.source or F.target != G.target:
        report.fail("parallel", "functors are not parallel")
        return report
    report.passed("components")
    if len(alpha.components) != c.n_objects:
        report.fail("components", "component family is not total")
        return report
    for x, m in enumerate(alpha.components):
        if not 0 <= m < d.n_morphisms or d.dom[m] != F.obj(x) or d.cod[m] != G.obj(x):
            report.fail("components", f"component at {c.objects[x]} has the wrong endpoints")
    if not report.ok:
        return report

    report.passed("naturality")
    for m in range(c.n_morphisms):
        x, y = c.dom[m], c.cod[m]
        if d.comp[(G.mor(m), alpha.component(x))] != d.comp[(alpha.component(y), F.mor(m))]:
            report.fail("naturality", f"naturality at {c.morphisms[m]}")
    return report


def is_natural(F: Functor, G: Functor, components: Sequence[int]) -> bool:
    c, d = F.source, F.target
    for m in range(c.n_morphisms):
        x, y = c.dom[m], c.cod[m]
        if d.comp[(G.mor(m), components[x])] != d.comp[(components[y], F.mor(m))]:
            return False
    return True


def enumerate_functors(c: FinCategory, d: FinCategory, budget: Optional[Budget] = None) -> Iterator[Functor]:
    """
    Every functor c -> d exactly once, lexicographically by object map and
    then by morphism map. Identities are forced and composites are checked
    as soon as all three members of a composition entry are assigned.
    """
    budget = Budget.ensure(budget)
    n_obj = c.n_objects
    obj_map: List[Optional[int]] = [None] * n_obj
    mor_map: List[Optional[int]] = [None] * c.n_morphisms
    free = [m for m in range(c.n_morphisms) if not c.is_identity(m)]

    # non-identity morphisms whose endpoints are both assigned once object i is
    closing: List[List[int]] = [[] for _ in range(n_obj)]
    for m in free:
        closing[max(c.dom[m], c.cod[m])].append(m)

    def consistent(m: int) -> bool:
        for g, f, gf in c.touching[m]:
            a, b, ab = mor_map[g], mor_map[f], mor_map[gf]
            if a is None or b is None or ab is None:
                continue
            if d.comp[(a, b)] != ab:
                return False
        return True

    def assign_morphisms(k: int) -> Iterator[Functor]:
        if k == len(free):
            yield Functor(c, d, tuple(obj_map), tuple(mor_map))
            return
        m = free[k]
        for candidate in d.hom(obj_map[c.dom[m]], obj_map[c.cod[m]]):
            budget.tick(where="functor enumeration")
            mor_map[m] = candidate
            if consistent(m):
                yield from assign_morphisms(k + 1)
        mor_map[m] = None

    def assign_objects(i: int) -> Iterator[Functor]:
        if i == n_obj:
            for x in range(n_obj):
                mor_map[c.identity(x)] = d.identity(obj_map[x])
            if all(consistent(c.identity(x)) for x in range(n_obj)):
                yield from assign_morphisms(0)
            for x in range(n_obj):
                mor_map[c.identity(x)] = None
            return
        for y in range(d.n_objects):
            budget.tick(where="functor enumeration")
            obj_map[i] = y
            if all(d.hom(obj_map[c.dom[m]], obj_map[c.cod[m]]) for m in closing[i]):
                yield from assign_objects(i + 1)
        obj_map[i] = None

    yield from assign_objects(0)


def enumerate_nat_transformations(
    F: Functor, G: Functor, budget: Optional[Budget] = None
) -> Iterator[NatTransformation]:
    """Every natural transformation F => G, lexicographically by components."""
    if F.source != G.source or F.target != G.target:
        raise ValueError("natural transformations need parallel functors")
    budget = Budget.ensure(budget)
    c, d = F.source, F.target
    n_obj = c.n_objects
    components: List[Optional[int]] = [None] * n_obj

    closing: List[List[int]] = [[] for _ in range(n_obj)]
    for m in range(c.n_morphisms):
        closing[max(c.dom[m], c.cod[m])].append(m)

    def square_commutes(m: int) -> bool:
        x, y = c.dom[m], c.cod[m]
        return d.comp[(G.mor(m), components[x])] == d.comp[(components[y], F.mor(m))]

    def assign(i: int) -> Iterator[NatTransformation]:
        if i == n_obj:
            yield NatTransformation(F, G, tuple(components))
            return
        for candidate in d.hom(F.obj(i), G.obj(i)):
            budget.tick(where="transformation enumeration")
            components[i] = candidate
            if all(square_commutes(m) for m in closing[i]):
                yield from assign(i + 1)
        components[i] = None

    yield from assign(0)


def natural_isomorphisms(F: Functor, G: Functor, budget: Optional[Budget] = None) -> Iterator[NatTransformation]:
    for alpha in enumerate_nat_transformations(F, G, budget):
        if alpha.is_isomorphism:
            yield alpha


def _universal_objects(c: FinCategory, outgoing: bool) -> List[int]:
    found = []
    for x in range(c.n_objects):
        if outgoing:
            unique = all(len(c.hom(x, y)) == 1 for y in range(c.n_objects))
        else:
            unique = all(len(c.hom(y, x)) == 1 for y in range(c.n_objects))
        if unique:
            found.append(x)
    return found


def initial_objects(c: FinCategory) -> List[int]:
    return _universal_objects(c, outgoing=True)


def terminal_objects(c: FinCategory) -> List[int]:
    return _universal_objects(c, outgoing=False)


def canonical_isomorphisms(c: FinCategory, objects: Sequence[int]) -> Dict[int, int]:
    """The unique isomorphism from the least of `objects` to each of them."""
    if not objects:
        return {}
    least = min(objects)
    return {x: c.hom(least, x)[0] for x in objects}


class UniversalObject(NamedTuple):
    """The least initial (or terminal) object and its canonical isomorphism to each of the others."""

    obj: int
    isomorphisms: Dict[int, int]

    def describe(self, c: FinCategory) -> dict:
        return {
            "object": c.objects[self.obj],
            "isomorphisms": {c.objects[x]: c.morphisms[m] for x, m in self.isomorphisms.items()},
        }


def initial_object(c: FinCategory) -> Optional[UniversalObject]:
    found = initial_objects(c)
    return UniversalObject(min(found), canonical_isomorphisms(c, found)) if found else None


def terminal_object(c: FinCategory) -> Optional[UniversalObject]:
    found = terminal_objects(c)
    return UniversalObject(min(found), canonical_isomorphisms(c, found)) if found else None


def find_initial(c: FinCategory) -> Optional[int]:
    found = initial_object(c)
    if found is not None and len(found.isomorphisms) > 1:
        logger.debug(f"{c.name}: initial objects identified along {found.describe(c)['isomorphisms']}")
    return found.obj if found else None


def find_terminal(c: FinCategory) -> Optional[int]:
    found = terminal_object(c)
    if found is not None and len(found.isomorphisms) > 1:
        logger.debug(f"{c.name}: terminal objects identified along {found.describe(c)['isomorphisms']}")
    return found.obj if found else None


class Coproduct(NamedTuple):
    """Apex with the two legs; for products the legs are the projections."""

    obj: int
    inj1: int
    inj2: int


def _mediators(c: FinCategory, cocone: Coproduct, g1: int, g2: int) -> List[int]:
    w = c.cod[g1]
    return [
        u for u in c.hom(cocone.obj, w)
        if c.comp[(u, cocone.inj1)] == g1 and c.comp[(u, cocone.inj2)] == g2
    ]


def is_coproduct(c: FinCategory, x: int, y: int, cocone: Coproduct, budget: Optional[Budget] = None) -> bool:
    budget = Budget.ensure(budget)
    for w in range(c.n_objects):
        for g1 in c.hom(x, w):
            for g2 in c.hom(y, w):
                budget.tick(where="coproduct check")
                if len(_mediators(c, cocone, g1, g2)) != 1:
                    return False
    return True


def find_coproduct(c: FinCategory, x: int, y: int, budget: Optional[Budget] = None) -> Optional[Coproduct]:
    budget = Budget.ensure(budget)
    for z in range(c.n_objects):
        for i1 in c.hom(x, z):
            for i2 in c.hom(y, z):
                candidate = Coproduct(z, i1, i2)
                if is_coproduct(c, x, y, candidate, budget):
                    return candidate
    return None


def find_product(c: FinCategory, x: int, y: int, budget: Optional[Budget] = None) -> Optional[Coproduct]:
    return find_coproduct(opposite(c), x, y, budget)


def mediator(c: FinCategory, cocone: Coproduct, g1: int, g2: int) -> int:
    """The unique u with u∘inj1 = g1 and u∘inj2 = g2."""
    found = _mediators(c, cocone, g1, g2)
    if len(found) != 1:
        raise ValueError(f"{len(found)} mediating morphisms for the cocone ({g1}, {g2})")
    return found[0]


def identity_functor(c: FinCategory) -> Functor:
    return Functor(c, c, tuple(range(c.n_objects)), tuple(range(c.n_morphisms)), name=f"id_{c.name}")


def constant_functor(c: FinCategory, d: FinCategory, y: int) -> Functor:
    return Functor(c, d, (y,) * c.n_objects, (d.identity(y),) * c.n_morphisms, name=f"const_{d.objects[y]}")


def compose_functors(G: Functor, F: Functor) -> Functor:
    """G∘F."""
    if F.target != G.source:
        raise ValueError(f"cannot compose {G!r} after {F!r}")
    name = f"{G.name}∘{F.name}" if G.name and F.name else ""
    return Functor(
        F.source,
        G.target,
        tuple(G.obj(y) for y in F.obj_map),
        tuple(G.mor(n) for n in F.mor_map),
        name=name,
    )


def opposite_functor(F: Functor) -> Functor:
    name = F.name + OP_SUFFIX if F.name else ""
    return Functor(opposite(F.source), opposite(F.target), F.obj_map, F.mor_map, name=name)


def identity_transformation(F: Functor) -> NatTransformation:
    d = F.target
    return NatTransformation(F, F, tuple(d.identity(y) for y in F.obj_map))


def vertical_composite(beta: NatTransformation, alpha: NatTransformation) -> NatTransformation:
    """beta∘alpha for alpha: F => G and beta: G => H."""
    if alpha.target != beta.source:
        raise ValueError("transformations are not composable")
    d = alpha.source.target
    return NatTransformation(
        alpha.source,
        beta.target,
        tuple(d.comp[(b, a)] for b, a in zip(beta.components, alpha.components)),
    )


def whisker_left(alpha: NatTransformation, K: Functor) -> NatTransformation:
    """alpha⋆K : F∘K => G∘K."""
    return NatTransformation(
        compose_functors(alpha.source, K),
        compose_functors(alpha.target, K),
        tuple(alpha.component(K.obj(b)) for b in range(K.source.n_objects)),
    )


def whisker_right(H: Functor, alpha: NatTransformation) -> NatTransformation:
    """H⋆alpha : H∘F => H∘G."""
    return NatTransformation(
        compose_functors(H, alpha.source),
        compose_functors(H, alpha.target),
        tuple(H.mor(m) for m in alpha.components),
    )


def inverse_transformation(alpha: NatTransformation) -> NatTransformation:
    inverses = alpha.source.target.inverses
    if not alpha.is_isomorphism:
        raise ValueError("transformation is not a natural isomorphism")
    return NatTransformation(alpha.target, alpha.source, tuple(inverses[m] for m in alpha.components))


def opposite_transformation(alpha: NatTransformation) -> NatTransformation:
    """alpha: F => G becomes G^op => F^op with the same components."""
    return NatTransformation(opposite_functor(alpha.target), opposite_functor(alpha.source), alpha.components)


def full_subcategory(c: FinCategory, objects: Iterable[int], name: str = "") -> Tuple[FinCategory, Functor]:
    """The full subcategory on `objects` (kept in id order) and its inclusion."""
    keep = sorted(set(objects))
    position = {x: i for i, x in enumerate(keep)}
    morphisms = [m for m in range(c.n_morphisms) if c.dom[m] in position and c.cod[m] in position]
    renumber = {m: i for i, m in enumerate(morphisms)}
    sub = FinCategory(
        name=name or f"{c.name}|{','.join(c.objects[x] for x in keep)}",
        objects=tuple(c.objects[x] for x in keep),
        morphisms=tuple(c.morphisms[m] for m in morphisms),
        dom=tuple(position[c.dom[m]] for m in morphisms),
        cod=tuple(position[c.cod[m]] for m in morphisms),
        identities=tuple(renumber[c.identity(x)] for x in keep),
        composition=tuple(
            (renumber[g], renumber[f], renumber[gf])
            for g, f, gf in c.composition
            if g in renumber and f in renumber
        ),
    )
    inclusion = Functor(sub, c, tuple(keep), tuple(morphisms), name=f"incl_{sub.name}")
    return sub, inclusion
