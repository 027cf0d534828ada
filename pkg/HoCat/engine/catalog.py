"""
Named example categories and the two model structures every finite
category with initial and terminal objects carries.
"""

from dataclasses import replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from HoCat.engine.errors import InstanceError
from HoCat.engine.fincat import (
    FinCategory,
    MorphismClass,
    find_initial,
    find_terminal,
    identity_functor,
    identity_transformation,
)
from HoCat.engine.model import ModelData, Replacement

Generator = Tuple[str, str, str]  # (name, dom, cod)


def from_rules(
    name: str,
    objects: Sequence[str],
    generators: Sequence[Generator],
    compose: Callable[[str, str], str] = None,
) -> FinCategory:
    """
    Build a category from its objects, its non-identity morphisms and a rule
    giving g∘f by name. Identities are added first, named id_<object>
    unless a generator already claims that name.
    """
    identity_names = [f"id_{x}" for x in objects]
    morphisms: List[Tuple[str, str, str]] = [(i, x, x) for i, x in zip(identity_names, objects)]
    morphisms.extend(generators)
    names = [m[0] for m in morphisms]
    index = {n: i for i, n in enumerate(names)}
    obj_index = {x: i for i, x in enumerate(objects)}
    dom = [obj_index[m[1]] for m in morphisms]
    cod = [obj_index[m[2]] for m in morphisms]
    identities = list(range(len(objects)))

    composition = []
    for f in range(len(morphisms)):
        for g in range(len(morphisms)):
            if cod[f] != dom[g]:
                continue
            if g in identities:
                gf = f
            elif f in identities:
                gf = g
            else:
                if compose is None:
                    raise InstanceError(f"{name}: no rule for {names[g]}∘{names[f]}")
                gf = index[compose(names[g], names[f])]
            composition.append((g, f, gf))
    return FinCategory(name, tuple(objects), tuple(names), tuple(dom), tuple(cod), tuple(identities), tuple(composition))


def poset(name: str, objects: Sequence[str], below: Sequence[Tuple[str, str]]) -> FinCategory:
    """A poset from its strict order relation, which must already be transitive."""
    generators = [(f"{a}->{b}", a, b) for a, b in below]

    def compose(g: str, f: str) -> str:
        return f"{f.split('->')[0]}->{g.split('->')[1]}"

    return from_rules(name, objects, generators, compose)


def point() -> FinCategory:
    return from_rules("point", ["*"], [])


def discrete(n: int = 2) -> FinCategory:
    return from_rules(f"discrete{n}", [chr(ord("a") + i) for i in range(n)], [])


def arrow() -> FinCategory:
    return from_rules("arrow", ["a", "b"], [("f", "a", "b")])


def iso2() -> FinCategory:
    table = {("v", "u"): "id_a", ("u", "v"): "id_b"}
    return from_rules("iso2", ["a", "b"], [("u", "a", "b"), ("v", "b", "a")], lambda g, f: table[(g, f)])


def _one_object(name: str, identity: str, others: Sequence[str], table: Dict[Tuple[str, str], str]) -> FinCategory:
    names = [identity, *others]
    composition = []
    for f in names:
        for g in names:
            if g == identity:
                gf = f
            elif f == identity:
                gf = g
            else:
                gf = table[(g, f)]
            composition.append((names.index(g), names.index(f), names.index(gf)))
    n = len(names)
    return FinCategory(name, ("*",), tuple(names), (0,) * n, (0,) * n, (0,), tuple(composition))


def z2() -> FinCategory:
    """The group of order two: e and s with s∘s = e."""
    return _one_object("z2", "e", ["s"], {("s", "s"): "e"})


def idempotent() -> FinCategory:
    return _one_object("idempotent", "e", ["p"], {("p", "p"): "p"})


def parallel() -> FinCategory:
    return from_rules("parallel", ["a", "b"], [("f", "a", "b"), ("g", "a", "b")])


def chain(n: int = 3) -> FinCategory:
    objects = [str(i) for i in range(n)]
    return poset(f"chain{n}", objects, [(a, b) for i, a in enumerate(objects) for b in objects[i + 1:]])


def diamond() -> FinCategory:
    return poset(
        "diamond",
        ["bot", "x", "y", "top"],
        [("bot", "x"), ("bot", "y"), ("bot", "top"), ("x", "top"), ("y", "top")],
    )


def with_bounds(c: FinCategory, name: Optional[str] = None) -> FinCategory:
    """c with an initial object bot and a terminal object top freely added."""
    objects = ("bot", *c.objects, "top")
    names = ["id_bot", *c.morphisms, "id_top"]
    dom = [0, *(x + 1 for x in c.dom), len(objects) - 1]
    cod = [0, *(y + 1 for y in c.cod), len(objects) - 1]
    top = len(objects) - 1
    shift = 1
    from_bot, to_top = {}, {}
    for x in range(c.n_objects):
        from_bot[x + 1] = len(names)
        names.append(f"bot->{c.objects[x]}")
        dom.append(0)
        cod.append(x + 1)
    for x in range(c.n_objects):
        to_top[x + 1] = len(names)
        names.append(f"{c.objects[x]}->top")
        dom.append(x + 1)
        cod.append(top)
    bot_top = len(names)
    names.append("bot->top")
    dom.append(0)
    cod.append(top)
    from_bot[top] = bot_top
    to_top[0] = bot_top

    identities = [0, *(i + shift for i in c.identities), c.n_morphisms + 1]
    id_set = set(identities)
    inner = {(g + shift, f + shift): gf + shift for g, f, gf in c.composition}

    composition = []
    for f in range(len(names)):
        for g in range(len(names)):
            if cod[f] != dom[g]:
                continue
            if g in id_set:
                gf = f
            elif f in id_set:
                gf = g
            elif (g, f) in inner:
                gf = inner[(g, f)]
            elif dom[f] == 0:
                gf = bot_top if cod[g] == top else from_bot[cod[g]]
            else:
                gf = to_top[dom[f]]
            composition.append((g, f, gf))
    return FinCategory(
        name or f"{c.name}+", objects, tuple(names), tuple(dom), tuple(cod), tuple(identities), tuple(composition)
    )


def z2_plus() -> FinCategory:
    return with_bounds(z2())


def _bounds(c: FinCategory) -> Tuple[int, int]:
    init, term = find_initial(c), find_terminal(c)
    if init is None or term is None:
        raise InstanceError(f"{c.name} needs initial and terminal objects to carry a model structure")
    return init, term


def triv_model(c: FinCategory, name: Optional[str] = None) -> ModelData:
    """W = isomorphisms, every morphism a cofibration and a fibration."""
    init, term = _bounds(c)
    everything = MorphismClass.everything(c)
    return ModelData(
        cat=c,
        W=MorphismClass.isomorphisms_of(c),
        Cof=everything,
        Fib=everything,
        init=init,
        term=term,
        fact1=tuple((f, c.identity(c.cod[f])) for f in range(c.n_morphisms)),
        fact2=tuple((c.identity(c.dom[f]), f) for f in range(c.n_morphisms)),
        name=name or f"triv_{c.name}",
    )


def collapse_model(c: FinCategory, name: Optional[str] = None) -> ModelData:
    """W = everything, Cof = everything, Fib = isomorphisms."""
    init, term = _bounds(c)
    everything = MorphismClass.everything(c)
    split = tuple((f, c.identity(c.cod[f])) for f in range(c.n_morphisms))
    return ModelData(
        cat=c,
        W=everything,
        Cof=everything,
        Fib=MorphismClass.isomorphisms_of(c),
        init=init,
        term=term,
        fact1=split,
        fact2=split,
        name=name or f"collapse_{c.name}",
    )


def with_identity_replacement(md: ModelData) -> ModelData:
    """md with Q = id and q = id, valid whenever every object is cofibrant."""
    identity = identity_functor(md.cat)
    return replace(md, Q=Replacement(identity, identity_transformation(identity)))


def standard_categories() -> List[FinCategory]:
    """The shipped battery corpus, in file-name order."""
    return sorted(
        [point(), discrete(2), arrow(), iso2(), z2(), idempotent(), parallel()],
        key=lambda c: c.name,
    )
