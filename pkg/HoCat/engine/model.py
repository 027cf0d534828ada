"""
Model-category data on a finite category.

ModelData carries the three classes, the initial and terminal objects and
the two factorizations chosen per morphism, plus optional replacement
functors. Everything on the right-hand side (fibrant replacement, path
objects, right homotopy) is the left-hand construction run on
`md.opposite`, where Cof and Fib, initial and terminal, the two
factorizations and Q and R trade places.
"""

from dataclasses import dataclass
from functools import cached_property
from operator import attrgetter
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Tuple

from cachetools import LRUCache, cachedmethod

from HoCat.engine.errors import (
    InvalidSquare,
    ModelInconsistency,
    NoCoproduct,
    NoProduct,
    NotFibrantCofibrant,
    UsageError,
)
from HoCat.engine.fincat import (
    Coproduct,
    FinCategory,
    Functor,
    MorphismClass,
    NatTransformation,
    ValidityReport,
    find_coproduct,
    identity_functor,
    initial_objects,
    mediator,
    opposite,
    opposite_functor,
    opposite_transformation,
    terminal_objects,
    validate_category,
    validate_functor,
    validate_transformation,
)
from HoCat.engine.partition import Partition, equivalence_counterexample, partition_of_relation
from HoCat.helpers.budget import Budget
from HoCat.logging import LOGGER

logger = LOGGER(__name__)


@dataclass(frozen=True)
class Replacement:
    """A replacement functor with its comparison map: q: Q => id, or r: id => R."""

    functor: Functor
    transformation: NatTransformation


@dataclass(frozen=True, eq=False)
class ModelData:
    cat: FinCategory
    W: MorphismClass
    Cof: MorphismClass
    Fib: MorphismClass
    init: int
    term: int
    fact1: Tuple[Tuple[int, int], ...]  # f = second∘first, first ∈ Cof, second ∈ Fib∩W
    fact2: Tuple[Tuple[int, int], ...]  # f = second∘first, first ∈ Cof∩W, second ∈ Fib
    Q: Optional[Replacement] = None
    R: Optional[Replacement] = None
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "fact1", tuple(tuple(pair) for pair in self.fact1))
        object.__setattr__(self, "fact2", tuple(tuple(pair) for pair in self.fact2))
        if not self.name:
            object.__setattr__(self, "name", self.cat.name)

    def __repr__(self) -> str:
        return f"ModelData({self.name!r})"

    @cached_property
    def triv_fib(self) -> FrozenSet[int]:
        return self.Fib.members & self.W.members

    @cached_property
    def triv_cof(self) -> FrozenSet[int]:
        return self.Cof.members & self.W.members

    def initial_map(self, x: int) -> int:
        return self.cat.hom(self.init, x)[0]

    def terminal_map(self, x: int) -> int:
        return self.cat.hom(x, self.term)[0]

    def is_cofibrant(self, x: int) -> bool:
        return self.initial_map(x) in self.Cof

    def is_fibrant(self, x: int) -> bool:
        return self.terminal_map(x) in self.Fib

    @cached_property
    def cofibrant_objects(self) -> Tuple[int, ...]:
        return tuple(x for x in range(self.cat.n_objects) if self.is_cofibrant(x))

    @cached_property
    def fc_objects(self) -> Tuple[int, ...]:
        return tuple(x for x in self.cofibrant_objects if self.is_fibrant(x))

    @cached_property
    def opposite(self) -> "ModelData":
        return opposite_model(self)

    @cached_property
    def replacements(self) -> "ReplacementTable":
        return ReplacementTable(self)

    @cached_property
    def homotopy(self) -> "HomotopyTable":
        return HomotopyTable(self)


def opposite_model(md: ModelData) -> ModelData:
    op_cat = opposite(md.cat)

    def swap(replacement: Optional[Replacement]) -> Optional[Replacement]:
        if replacement is None:
            return None
        return Replacement(
            opposite_functor(replacement.functor),
            opposite_transformation(replacement.transformation),
        )

    name = md.name[:-3] if md.name.endswith("^op") else md.name + "^op"
    op = ModelData(
        cat=op_cat,
        W=md.W.on_opposite(),
        Cof=md.Fib.on_opposite(),
        Fib=md.Cof.on_opposite(),
        init=md.term,
        term=md.init,
        # f = b'∘a' in md reads f = a'∘b' in the opposite, so b' now comes first
        fact1=tuple((second, first) for first, second in md.fact2),
        fact2=tuple((second, first) for first, second in md.fact1),
        Q=swap(md.R),
        R=swap(md.Q),
        name=name,
    )
    op.__dict__["opposite"] = md
    return op


class Square(NamedTuple):
    """A commutative square right∘top = bottom∘left."""

    top: int
    left: int
    bottom: int
    right: int


def all_fillers(c: FinCategory, square: Square) -> List[int]:
    return [
        h for h in c.hom(c.cod[square.left], c.dom[square.right])
        if c.comp[(h, square.left)] == square.top and c.comp[(square.right, h)] == square.bottom
    ]


def _commuting_squares(c: FinCategory, left: int, right: int):
    for top in c.hom(c.dom[left], c.dom[right]):
        for bottom in c.hom(c.cod[left], c.cod[right]):
            if c.comp[(right, top)] == c.comp[(bottom, left)]:
                yield Square(top, left, bottom, right)


def describe_square(c: FinCategory, square: Square) -> str:
    return (
        f"top {c.describe(square.top)}, left {c.describe(square.left)}, "
        f"bottom {c.describe(square.bottom)}, right {c.describe(square.right)}"
    )


def solve_lifting(md: ModelData, square: Square) -> Optional[int]:
    """The least filler of a lifting problem allowed by the model axioms."""
    c = md.cat
    top, left, bottom, right = square
    shape_ok = (
        c.dom[top] == c.dom[left]
        and c.cod[top] == c.dom[right]
        and c.cod[left] == c.dom[bottom]
        and c.cod[bottom] == c.cod[right]
    )
    if not shape_ok:
        raise InvalidSquare("the four morphisms do not form a square")
    if c.comp[(right, top)] != c.comp[(bottom, left)]:
        raise InvalidSquare("square does not commute")
    allowed = (left in md.Cof and right in md.triv_fib) or (left in md.triv_cof and right in md.Fib)
    if not allowed:
        raise InvalidSquare("left leg must be a (trivial) cofibration against a trivial fibration (fibration)")

    fillers = all_fillers(c, square)
    if not fillers:
        logger.error(f"{md.name}: lifting problem without filler ({describe_square(c, square)})")
        return None
    return fillers[0]


def validate_model(md: ModelData, budget: Optional[Budget] = None) -> ValidityReport:
    budget = Budget.ensure(budget)
    c = md.cat
    report = ValidityReport(subject=f"model {md.name}")
    report.merge(validate_category(c))
    if not report.ok:
        return report

    report.passed("initial/terminal")
    if md.init not in initial_objects(c):
        report.fail("initial/terminal", f"{c.objects[md.init]} is not initial")
    if md.term not in terminal_objects(c):
        report.fail("initial/terminal", f"{c.objects[md.term]} is not terminal")

    report.passed("classes")
    for label, cls in (("W", md.W), ("Cof", md.Cof), ("Fib", md.Fib)):
        if cls.parent != c:
            report.fail("classes", f"{label} belongs to another category")
        for m in c.inverses:
            if m not in cls:
                report.fail("classes", f"isomorphism {c.morphisms[m]} is missing from {label}")
    if not report.ok:
        return report

    report.passed("two-out-of-three")
    for f in range(c.n_morphisms):
        for g in c.outgoing(c.cod[f]):
            budget.tick(where="two-out-of-three")
            flags = (f in md.W, g in md.W, c.comp[(g, f)] in md.W)
            if sum(flags) == 2:
                report.fail(
                    "two-out-of-three",
                    f"{c.morphisms[f]}, {c.morphisms[g]}, {c.morphisms[c.comp[(g, f)]]} membership {flags}",
                )

    for label, cls in (("W", md.W), ("Cof", md.Cof), ("Fib", md.Fib)):
        check = f"retracts of {label}"
        report.passed(check)
        witness = _retract_counterexample(c, cls, budget)
        if witness is not None:
            f, g = witness
            report.fail(check, f"{c.morphisms[f]} is a retract of {c.morphisms[g]} but not in {label}")

    for check, lefts, rights in (
        ("lifting Cof / Fib∩W", md.Cof.members, md.triv_fib),
        ("lifting Cof∩W / Fib", md.triv_cof, md.Fib.members),
    ):
        report.passed(check)
        square = _lifting_counterexample(c, lefts, rights, budget)
        if square is not None:
            report.fail(check, f"no filler for {describe_square(c, square)}")

    report.passed("factorizations")
    if len(md.fact1) != c.n_morphisms or len(md.fact2) != c.n_morphisms:
        report.fail("factorizations", "factorizations are not given for every morphism")
    else:
        for f in range(c.n_morphisms):
            first, second = md.fact1[f]
            if c.comp.get((second, first)) != f:
                report.fail("factorizations", f"Cof-TrivFib factorization of {c.morphisms[f]} does not compose to it")
            elif first not in md.Cof or second not in md.triv_fib:
                report.fail("factorizations", f"Cof-TrivFib factorization of {c.morphisms[f]} has legs in the wrong classes")
            first, second = md.fact2[f]
            if c.comp.get((second, first)) != f:
                report.fail("factorizations", f"TrivCof-Fib factorization of {c.morphisms[f]} does not compose to it")
            elif first not in md.triv_cof or second not in md.Fib:
                report.fail("factorizations", f"TrivCof-Fib factorization of {c.morphisms[f]} has legs in the wrong classes")

    report.passed("composition closure")
    for label, cls in (("Cof", md.Cof), ("Fib", md.Fib)):
        for g, f, gf in c.composition:
            if g in cls and f in cls and gf not in cls:
                report.fail("composition closure", f"{label} is not closed under {c.morphisms[g]}∘{c.morphisms[f]}")

    if md.Q is not None:
        report.merge(_validate_replacement(md, md.Q, cofibrant=True), prefix="Q ")
    if md.R is not None:
        report.merge(_validate_replacement(md, md.R, cofibrant=False), prefix="R ")
    return report


def _retract_counterexample(c: FinCategory, cls: MorphismClass, budget: Budget) -> Optional[Tuple[int, int]]:
    def sections(a: int, b: int):
        for i in c.hom(a, b):
            for r in c.hom(b, a):
                if c.comp[(r, i)] == c.identity(a):
                    yield i, r

    for f in range(c.n_morphisms):
        if f in cls:
            continue
        a, b = c.dom[f], c.cod[f]
        for g in cls:
            x, y = c.dom[g], c.cod[g]
            for i1, r1 in sections(a, x):
                for i2, r2 in sections(b, y):
                    budget.tick(where="retract check")
                    if c.comp[(g, i1)] == c.comp[(i2, f)] and c.comp[(f, r1)] == c.comp[(r2, g)]:
                        return f, g
    return None


def _lifting_counterexample(c: FinCategory, lefts, rights, budget: Budget) -> Optional[Square]:
    for left in sorted(lefts):
        for right in sorted(rights):
            for square in _commuting_squares(c, left, right):
                budget.tick(where="lifting check")
                if not all_fillers(c, square):
                    return square
    return None


def _validate_replacement(md: ModelData, replacement: Replacement, cofibrant: bool) -> ValidityReport:
    c = md.cat
    report = ValidityReport(subject="replacement")
    functor, transformation = replacement.functor, replacement.transformation
    report.merge(validate_functor(functor), prefix="functor ")
    if not report.ok:
        return report
    identity = identity_functor(c)
    expected = (functor, identity) if cofibrant else (identity, functor)
    report.passed("transformation")
    if (transformation.source, transformation.target) != expected:
        report.fail("transformation", "comparison map has the wrong source or target functor")
        return report
    report.merge(validate_transformation(transformation), prefix="transformation ")

    report.passed("objects")
    report.passed("components")
    for x in range(c.n_objects):
        image = functor.obj(x)
        component = transformation.component(x)
        if cofibrant:
            if not md.is_cofibrant(image):
                report.fail("objects", f"Q({c.objects[x]}) is not cofibrant")
            if component not in md.triv_fib:
                report.fail("components", f"q at {c.objects[x]} is not a trivial fibration")
        else:
            if not md.is_fibrant(image):
                report.fail("objects", f"R({c.objects[x]}) is not fibrant")
            if component not in md.triv_cof:
                report.fail("components", f"r at {c.objects[x]} is not a trivial cofibration")
    return report


class ReplacementTable:
    """Replacements and lifted maps of one model, computed once."""

    def __init__(self, md: ModelData):
        self.md = md
        self._cofibrant_lifts = LRUCache(maxsize=4096)
        self._fibrant_lifts = LRUCache(maxsize=4096)

    def cofibrant_replace(self, x: int) -> Tuple[int, int]:
        md = self.md
        if md.Q is not None:
            return md.Q.functor.obj(x), md.Q.transformation.component(x)
        first, second = md.fact1[md.initial_map(x)]
        return md.cat.cod[first], second

    def fibrant_replace(self, x: int) -> Tuple[int, int]:
        md = self.md
        if md.R is not None:
            return md.R.functor.obj(x), md.R.transformation.component(x)
        first, second = md.fact2[md.terminal_map(x)]
        return md.cat.cod[first], first

    def local_cofibrant_replace(self, x: int) -> Tuple[int, int]:
        if self.md.is_cofibrant(x):
            return x, self.md.cat.identity(x)
        return self.cofibrant_replace(x)

    def local_fibrant_replace(self, x: int) -> Tuple[int, int]:
        if self.md.is_fibrant(x):
            return x, self.md.cat.identity(x)
        return self.fibrant_replace(x)

    def fc_replace(self, x: int) -> int:
        cx, _ = self.local_cofibrant_replace(x)
        fcx, _ = self.local_fibrant_replace(cx)
        return fcx

    def cofibrant_square(self, f: int) -> Square:
        md, c = self.md, self.md.cat
        cx, c_x = self.local_cofibrant_replace(c.dom[f])
        cy, c_y = self.local_cofibrant_replace(c.cod[f])
        return Square(top=md.initial_map(cy), left=md.initial_map(cx), bottom=c.comp[(f, c_x)], right=c_y)

    def fibrant_square(self, g: int) -> Square:
        md, c = self.md, self.md.cat
        fa, f_a = self.local_fibrant_replace(c.dom[g])
        fb, f_b = self.local_fibrant_replace(c.cod[g])
        return Square(top=c.comp[(f_b, g)], left=f_a, bottom=md.terminal_map(fa), right=md.terminal_map(fb))

    @cachedmethod(attrgetter("_cofibrant_lifts"))
    def lift_Cf(self, f: int) -> int:
        filler = solve_lifting(self.md, self.cofibrant_square(f))
        if filler is None:
            raise ModelInconsistency(f"no cofibrant lift of {self.md.cat.describe(f)}")
        return filler

    @cachedmethod(attrgetter("_fibrant_lifts"))
    def lift_Ff(self, g: int) -> int:
        filler = solve_lifting(self.md, self.fibrant_square(g))
        if filler is None:
            raise ModelInconsistency(f"no fibrant lift of {self.md.cat.describe(g)}")
        return filler

    def lift_FCf(self, f: int) -> int:
        return self.lift_Ff(self.lift_Cf(f))


def cofibrant_replace(md: ModelData, x: int) -> Tuple[int, int]:
    """(QX, q_X): from Q when given, else from the Cof-TrivFib factorization of 0 -> X."""
    return md.replacements.cofibrant_replace(x)


def fibrant_replace(md: ModelData, x: int) -> Tuple[int, int]:
    """(RX, r_X): from R when given, else from the TrivCof-Fib factorization of X -> *."""
    return md.replacements.fibrant_replace(x)


def local_cofibrant_replace(md: ModelData, x: int) -> Tuple[int, int]:
    return md.replacements.local_cofibrant_replace(x)


def local_fibrant_replace(md: ModelData, x: int) -> Tuple[int, int]:
    return md.replacements.local_fibrant_replace(x)


def lift_Cf(md: ModelData, f: int) -> int:
    """C̃f: C̃X -> C̃Y with c_Y∘C̃f = f∘c_X."""
    return md.replacements.lift_Cf(f)


def lift_Ff(md: ModelData, g: int) -> int:
    """F̃g: F̃A -> F̃B with F̃g∘f_A = f_B∘g."""
    return md.replacements.lift_Ff(g)


def lift_FCf(md: ModelData, f: int) -> int:
    return md.replacements.lift_FCf(f)


class CylinderWitness(NamedTuple):
    X: int
    coproduct: Coproduct
    fold: int
    Z: int
    i: int
    w: int


class CylinderSpan(NamedTuple):
    """A cylinder without a coproduct: sections i1, i2 of a weak equivalence w."""

    X: int
    Z: int
    i1: int
    i2: int
    w: int


def cylinders(md: ModelData, x: int) -> List[CylinderWitness]:
    """Every factorization of the fold map X⨿X -> X as a cofibration then a weak equivalence."""
    return md.homotopy.cylinders(x)


def paths(md: ModelData, y: int) -> List[CylinderWitness]:
    """Path objects of Y, as cylinders of Y in the opposite model."""
    try:
        return md.opposite.homotopy.cylinders(y)
    except NoCoproduct as error:
        raise NoProduct(str(error)) from None


def cylinder_spans(md: ModelData, x: int) -> List[CylinderSpan]:
    return md.homotopy.spans(x)


def jointly_cofibrant(md: ModelData, i1: int, i2: int) -> bool:
    """(i1, i2): X -> Z has the left lifting property against every trivial fibration."""
    c = md.cat
    x = c.dom[i1]
    for p in sorted(md.triv_fib):
        e, b = c.dom[p], c.cod[p]
        for bottom in c.hom(c.cod[i1], b):
            for a1 in c.hom(x, e):
                if c.comp[(p, a1)] != c.comp[(bottom, i1)]:
                    continue
                for a2 in c.hom(x, e):
                    if c.comp[(p, a2)] != c.comp[(bottom, i2)]:
                        continue
                    if not any(
                        c.comp[(h, i1)] == a1 and c.comp[(h, i2)] == a2 and c.comp[(p, h)] == bottom
                        for h in c.hom(c.cod[i1], e)
                    ):
                        return False
    return True


def left_homotopic(md: ModelData, f: int, g: int, fallback: bool = True) -> bool:
    """
    f ≃ g from the left: some cylinder admits H with H∘i∘φ1 = f and H∘i∘φ2 = g.
    Without X⨿X, fallback (on by default) switches to the coproduct-free
    cylinder spans; with fallback off NoCoproduct is raised instead.
    homotopy_relations reports which of the two each object uses.
    """
    c = md.cat
    if (c.dom[f], c.cod[f]) != (c.dom[g], c.cod[g]):
        raise ValueError("homotopy needs parallel morphisms")
    x, y = c.dom[f], c.cod[f]
    table = md.homotopy
    if table.coproduct(x) is not None:
        for cyl in table.cylinders(x):
            i1 = c.comp[(cyl.i, cyl.coproduct.inj1)]
            i2 = c.comp[(cyl.i, cyl.coproduct.inj2)]
            if any(c.comp[(h, i1)] == f and c.comp[(h, i2)] == g for h in c.hom(cyl.Z, y)):
                return True
        return False
    if not fallback:
        raise NoCoproduct(f"{c.objects[x]}⨿{c.objects[x]} does not exist in {c.name}")
    for span in table.spans(x):
        if any(c.comp[(h, span.i1)] == f and c.comp[(h, span.i2)] == g for h in c.hom(span.Z, y)):
            return True
    return False


def right_homotopic(md: ModelData, f: int, g: int, fallback: bool = True) -> bool:
    """Left homotopy in the opposite model, with the same fallback to spans when X×X is missing."""
    try:
        return left_homotopic(md.opposite, f, g, fallback=fallback)
    except NoCoproduct as error:
        raise NoProduct(str(error).replace("⨿", "×")) from None


def homotopic(md: ModelData, f: int, g: int) -> bool:
    return left_homotopic(md, f, g) and right_homotopic(md, f, g)


def homotopy_relations(md: ModelData) -> Dict[str, Dict[str, str]]:
    """
    Which relation left_homotopic and right_homotopic use at each object:
    cylinder (path) objects when X⨿X (X×X) exists, else the coproduct-free
    spans they fall back to by default.
    """
    c = md.cat
    return {
        "left": {
            c.objects[x]: "cylinder objects" if md.homotopy.coproduct(x) is not None else "cylinder spans"
            for x in range(c.n_objects)
        },
        "right": {
            c.objects[y]: "path objects" if md.opposite.homotopy.coproduct(y) is not None else "path spans"
            for y in range(c.n_objects)
        },
    }


class HomotopyTable:
    """Cylinders, homotopy relations and partitions of one model, computed on demand."""

    def __init__(self, md: ModelData):
        self.md = md
        self._coproducts = LRUCache(maxsize=1024)
        self._cylinders = LRUCache(maxsize=1024)
        self._spans = LRUCache(maxsize=1024)
        self._left = LRUCache(maxsize=4096)
        self._classes = LRUCache(maxsize=4096)

    @cachedmethod(attrgetter("_coproducts"))
    def coproduct(self, x: int) -> Optional[Coproduct]:
        return find_coproduct(self.md.cat, x, x)

    @cachedmethod(attrgetter("_cylinders"))
    def cylinders(self, x: int) -> List[CylinderWitness]:
        md, c = self.md, self.md.cat
        cop = self.coproduct(x)
        if cop is None:
            raise NoCoproduct(f"{c.objects[x]}⨿{c.objects[x]} does not exist in {c.name}")
        identity = c.identity(x)
        fold = mediator(c, cop, identity, identity)
        found = []
        for i in c.outgoing(cop.obj):
            if i not in md.Cof:
                continue
            z = c.cod[i]
            for w in c.hom(z, x):
                if w in md.W and c.comp[(w, i)] == fold:
                    found.append(CylinderWitness(x, cop, fold, z, i, w))
        return found

    @cachedmethod(attrgetter("_spans"))
    def spans(self, x: int) -> List[CylinderSpan]:
        md, c = self.md, self.md.cat
        identity = c.identity(x)
        found = []
        for z in range(c.n_objects):
            for w in c.hom(z, x):
                if w not in md.W:
                    continue
                sections = [i for i in c.hom(x, z) if c.comp[(w, i)] == identity]
                for i1 in sections:
                    for i2 in sections:
                        if jointly_cofibrant(md, i1, i2):
                            found.append(CylinderSpan(x, z, i1, i2, w))
        return found

    @cachedmethod(attrgetter("_left"))
    def left_relation(self, x: int, y: int) -> FrozenSet[Tuple[int, int]]:
        hom = self.md.cat.hom(x, y)
        return frozenset((f, g) for f in hom for g in hom if left_homotopic(self.md, f, g))

    def right_relation(self, x: int, y: int) -> FrozenSet[Tuple[int, int]]:
        return self.md.opposite.homotopy.left_relation(y, x)

    def left_partition(self, x: int, y: int) -> Partition:
        """Left homotopy classes of Hom(X, Y) for cofibrant X."""
        md = self.md
        if not md.is_cofibrant(x):
            raise UsageError(f"{md.cat.objects[x]} is not cofibrant")
        relation = self.left_relation(x, y)
        hom = md.cat.hom(x, y)
        problem = equivalence_counterexample(hom, lambda a, b: (a, b) in relation)
        if problem is not None:
            raise ModelInconsistency(f"left homotopy on Hom({md.cat.objects[x]}, {md.cat.objects[y]}) is {problem}")
        return partition_of_relation(hom, lambda a, b: (a, b) in relation)

    @cachedmethod(attrgetter("_classes"))
    def classes(self, x: int, y: int) -> Partition:
        md, c = self.md, self.md.cat
        for z in (x, y):
            if z not in md.fc_objects:
                raise NotFibrantCofibrant(f"{c.objects[z]} is not fibrant-cofibrant in {md.name}")
        left = self.left_relation(x, y)
        right = self.right_relation(x, y)
        if left != right:
            raise ModelInconsistency(
                f"left and right homotopy differ on Hom({c.objects[x]}, {c.objects[y]})"
            )
        hom = c.hom(x, y)
        problem = equivalence_counterexample(hom, lambda a, b: (a, b) in left)
        if problem is not None:
            raise ModelInconsistency(f"homotopy on Hom({c.objects[x]}, {c.objects[y]}) is {problem}")
        return partition_of_relation(hom, lambda a, b: (a, b) in left)


def homotopy_classes(md: ModelData, x: int, y: int) -> Partition:
    return md.homotopy.classes(x, y)


def left_homotopy_partition(md: ModelData, x: int, y: int) -> Partition:
    return md.homotopy.left_partition(x, y)


def check_whitehead(md: ModelData) -> ValidityReport:
    """Between fibrant-cofibrant objects: weak equivalence iff homotopy equivalence."""
    c = md.cat
    report = ValidityReport(subject=f"whitehead {md.name}")
    report.passed("whitehead")
    fc = md.fc_objects
    for x in fc:
        for y in fc:
            back_classes = md.homotopy.classes(x, x)
            forth_classes = md.homotopy.classes(y, y)
            for f in c.hom(x, y):
                equivalence = any(
                    back_classes.relates(c.comp[(g, f)], c.identity(x))
                    and forth_classes.relates(c.comp[(f, g)], c.identity(y))
                    for g in c.hom(y, x)
                )
                if equivalence != (f in md.W):
                    report.fail(
                        "whitehead",
                        f"{c.describe(f)}: weak equivalence {f in md.W}, homotopy equivalence {equivalence}",
                    )
    return report


def check_trivfib_correspondence(md: ModelData) -> ValidityReport:
    """For cofibrant X and a trivial fibration γ: Y -> Z, γ∘- is a bijection of left homotopy classes."""
    c = md.cat
    report = ValidityReport(subject=f"trivial fibration correspondence {md.name}")
    report.passed("bijection")
    for x in md.cofibrant_objects:
        for gamma in sorted(md.triv_fib):
            source = left_homotopy_partition(md, x, c.dom[gamma])
            target = left_homotopy_partition(md, x, c.cod[gamma])
            images = []
            for cls in source:
                hit = {target.class_index(c.comp[(gamma, h)]) for h in cls}
                if len(hit) != 1:
                    report.fail("bijection", f"{c.morphisms[gamma]}∘- is not well defined on Hom({c.objects[x]}, -)")
                images.extend(hit)
            if len(set(images)) != len(images) or len(set(images)) != len(target):
                report.fail(
                    "bijection",
                    f"{c.morphisms[gamma]}∘- is not bijective on classes out of {c.objects[x]}",
                )
    return report


def check_lifting_independence(md: ModelData) -> ValidityReport:
    """Any two lifts C̃f are left homotopic and any two lifts F̃C̃f homotopic."""
    c, table = md.cat, md.replacements
    report = ValidityReport(subject=f"lift independence {md.name}")
    report.passed("cofibrant lifts")
    report.passed("fibrant-cofibrant lifts")
    for f in range(c.n_morphisms):
        square = table.cofibrant_square(f)
        lifts = all_fillers(c, square)
        cx, cy = c.cod[square.left], c.dom[square.right]
        relation = md.homotopy.left_relation(cx, cy)
        if any((a, b) not in relation for a in lifts for b in lifts):
            report.fail("cofibrant lifts", f"lifts of {c.morphisms[f]} are not all left homotopic")

        doubled = set()
        for h in lifts:
            doubled.update(all_fillers(c, table.fibrant_square(h)))
        if doubled:
            fcx, fcy = table.fc_replace(c.dom[f]), table.fc_replace(c.cod[f])
            classes = md.homotopy.classes(fcx, fcy)
            if len({classes.class_index(h) for h in doubled}) != 1:
                report.fail("fibrant-cofibrant lifts", f"lifts of {c.morphisms[f]} fall into several classes")
    return report


def check_cylinder_cofibrancy(md: ModelData) -> ValidityReport:
    """Cylinders of cofibrant objects are cofibrant."""
    c = md.cat
    report = ValidityReport(subject=f"cylinder cofibrancy {md.name}")
    report.passed("cylinders")
    for x in md.cofibrant_objects:
        if md.homotopy.coproduct(x) is not None:
            objects = {cyl.Z for cyl in cylinders(md, x)}
            objects.add(md.homotopy.coproduct(x).obj)
        else:
            objects = {span.Z for span in cylinder_spans(md, x)}
        for z in sorted(objects):
            if not md.is_cofibrant(z):
                report.fail("cylinders", f"cylinder {c.objects[z]} of {c.objects[x]} is not cofibrant")
    return report
