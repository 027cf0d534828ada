"""
Instance, functor and battery documents.

A category document:

    {"name": "diamond",
     "objects": ["bot", "x", ...],
     "morphisms": [{"id": "id_bot", "dom": "bot", "cod": "bot"}, ...],
     "identities": {"bot": "id_bot", ...},
     "composition": [{"g": "x->top", "f": "bot->x", "gf": "bot->top"}, ...]}

A localization instance adds "W". A model instance adds either
"structure": "triv" | "collapse" or the full data

    "classes": {"W": [...], "Cof": [...], "Fib": [...]},
    "initial": obj, "terminal": obj,
    "fact_cof_trivfib": {mor: {"first": ..., "second": ...}},
    "fact_trivcof_fib": {...}

and optionally "Q" as {"obj_map", "mor_map", "q_components"} and "R" as
{"obj_map", "mor_map", "r_components"}. The older top-level keys "W",
"Cof", "Fib", "init", "term", "fact1", "fact2" (morphism -> [first, second])
and "objects"/"morphisms"/"components" inside Q and R are still read.
A functor document maps names: {"name", "obj_map", "mor_map"} (or
"objects", "morphisms"); identities may be left out.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from HoCat.database.JsonDb import JsonDb, check_corpus_dir
from HoCat.engine.catalog import collapse_model, triv_model
from HoCat.engine.errors import InstanceError
from HoCat.engine.fincat import (
    FinCategory,
    Functor,
    MorphismClass,
    NatTransformation,
    validate_category,
    validate_functor,
)
from HoCat.engine.localization import Battery
from HoCat.engine.model import ModelData, Replacement
from HoCat.logging import LOGGER

logger = LOGGER(__name__)

STRUCTURES = {"triv": triv_model, "collapse": collapse_model}
CLASS_KEYS = ("W", "Cof", "Fib")
MODEL_KEYS = ("initial", "terminal", "fact_cof_trivfib", "fact_trivcof_fib")
# older spellings, accepted on load
MODEL_ALIASES = {"init": "initial", "term": "terminal", "fact1": "fact_cof_trivfib", "fact2": "fact_trivcof_fib"}
COMPONENT_KEYS = {"Q": "q_components", "R": "r_components"}


@dataclass(frozen=True)
class WeakEquivalences:
    """A category with a class W and nothing else."""

    cat: FinCategory
    W: MorphismClass
    name: str = ""


Instance = Union[FinCategory, WeakEquivalences, ModelData]


def _require(document: dict, key: str, where: str):
    if key not in document:
        raise InstanceError(f"{where}: missing key {key!r}")
    return document[key]


def _mapping(value, what: str, where: str) -> dict:
    if not isinstance(value, dict):
        raise InstanceError(f"{where}: {what} must be an object, got {type(value).__name__}")
    return value


def _sequence(value, what: str, where: str) -> list:
    if not isinstance(value, list):
        raise InstanceError(f"{where}: {what} must be a list, got {type(value).__name__}")
    return value


def _lookup(table: Dict[str, int], name, what: str, where: str) -> int:
    try:
        return table[name]
    except (KeyError, TypeError):
        raise InstanceError(f"{where}: unknown {what} {name!r}") from None


def _object(c: FinCategory, name, where: str) -> int:
    if not isinstance(name, str):
        raise InstanceError(f"{where}: unknown object {name!r}")
    return c.object_id(name)


def _morphism(c: FinCategory, name, where: str) -> int:
    if not isinstance(name, str):
        raise InstanceError(f"{where}: unknown morphism {name!r}")
    return c.morphism_id(name)


def parse_category(document: dict, name: Optional[str] = None) -> FinCategory:
    where = name or document.get("name", "instance")
    objects = _sequence(_require(document, "objects", where), "objects", where)
    entries = _sequence(_require(document, "morphisms", where), "morphisms", where)
    if not all(isinstance(x, str) for x in objects):
        raise InstanceError(f"{where}: object names must be strings")
    if len(set(objects)) != len(objects):
        raise InstanceError(f"{where}: repeated object names")

    obj_index = {x: i for i, x in enumerate(objects)}
    morphisms, dom, cod = [], [], []
    for entry in entries:
        if not isinstance(entry, dict):
            raise InstanceError(f"{where}: morphism entries must be objects with id, dom and cod")
        morphism = _require(entry, "id", where)
        if not isinstance(morphism, str):
            raise InstanceError(f"{where}: morphism names must be strings, got {morphism!r}")
        morphisms.append(morphism)
        dom.append(_lookup(obj_index, _require(entry, "dom", where), "object", where))
        cod.append(_lookup(obj_index, _require(entry, "cod", where), "object", where))
    if len(set(morphisms)) != len(morphisms):
        raise InstanceError(f"{where}: repeated morphism names")
    mor_index = {m: i for i, m in enumerate(morphisms)}

    identity_names = _mapping(_require(document, "identities", where), "identities", where)
    identities = [_lookup(mor_index, identity_names.get(x), "identity", f"{where} at {x}") for x in objects]
    composition = []
    for entry in _sequence(_require(document, "composition", where), "composition", where):
        entry = _mapping(entry, "a composition entry", where)
        composition.append(
            tuple(_lookup(mor_index, entry.get(key), "morphism", where) for key in ("g", "f", "gf"))
        )

    c = FinCategory(
        name=name or document.get("name", "instance"),
        objects=tuple(objects),
        morphisms=tuple(morphisms),
        dom=tuple(dom),
        cod=tuple(cod),
        identities=tuple(identities),
        composition=tuple(composition),
    )
    # identity and associativity failures are reported by validate, a partial table is not a category at all
    report = validate_category(c)
    structural = [v for v in report.violations if v.startswith(("shape", "composition"))]
    if structural:
        raise InstanceError(f"{where}: {structural[0]}", counterexample=structural[0])
    return c


def _morphism_class(c: FinCategory, names, what: str, where: str) -> MorphismClass:
    names = _sequence(names, f"class {what}", where)
    return MorphismClass(c, frozenset(_morphism(c, m, f"{where} class {what}") for m in names))


def _factor_pair(pair, f: str, where: str) -> tuple:
    if isinstance(pair, dict) and "first" in pair and "second" in pair:
        return pair["first"], pair["second"]
    if isinstance(pair, list) and len(pair) == 2:
        return tuple(pair)
    raise InstanceError(f"{where}: factorization of {f} must be {{\"first\", \"second\"}}")


def _factorizations(c: FinCategory, table, key: str, where: str):
    table = _mapping(table, key, where)
    pairs = []
    for f in c.morphisms:
        first, second = _factor_pair(_lookup(table, f, f"{key} entry for", where), f, where)
        pairs.append((_morphism(c, first, where), _morphism(c, second, where)))
    return tuple(pairs)


def parse_functor(document: dict, source: FinCategory, target: FinCategory, name: Optional[str] = None) -> Functor:
    """Resolve a name map into a Functor and check that it is one."""
    where = name or (document.get("name", "functor") if isinstance(document, dict) else "functor")
    document = _mapping(document, "a functor", where)
    objects = document["obj_map"] if "obj_map" in document else _require(document, "objects", where)
    objects = _mapping(objects, "obj_map", where)
    morphisms = _mapping(document.get("mor_map", document.get("morphisms", {})), "mor_map", where)
    obj_map = tuple(
        _object(target, _lookup(objects, x, "object", where), where)
        for x in source.objects
    )
    mor_map = []
    for m in range(source.n_morphisms):
        image = morphisms.get(source.morphisms[m])
        if image is None and source.is_identity(m):
            mor_map.append(target.identity(obj_map[source.dom[m]]))
        else:
            mor_map.append(_morphism(target, image, where))
    F = Functor(source, target, obj_map, tuple(mor_map), name=document.get("name", name or ""))
    report = validate_functor(F)
    if not report.ok:
        raise InstanceError(f"{where}: {report.violations[0]}", counterexample=report.violations[0])
    return F


def _replacement(c: FinCategory, document, key: str, where: str) -> Tuple[Functor, Tuple[int, ...]]:
    document = _mapping(document, key, where)
    functor = parse_functor(document, c, c, name=where)
    components_key = COMPONENT_KEYS[key]
    components = document[components_key] if components_key in document else _require(document, "components", where)
    components = _mapping(components, components_key, where)
    transformation_components = tuple(
        _morphism(c, _lookup(components, x, "component at", where), where)
        for x in c.objects
    )
    return functor, transformation_components


def _model_value(document: dict, key: str, where: str):
    if key in document:
        return document[key]
    for alias, canonical in MODEL_ALIASES.items():
        if canonical == key and alias in document:
            return document[alias]
    raise InstanceError(f"{where}: missing key {key!r}")


def _classes(document: dict, where: str) -> dict:
    classes = dict(_mapping(document.get("classes", {}), "classes", where))
    for key in CLASS_KEYS:
        if key not in classes and key in document:
            classes[key] = document[key]
    return classes


def is_model_document(document: dict) -> bool:
    classes = document.get("classes")
    return (
        "structure" in document
        or any(key in document for key in (*MODEL_KEYS, *MODEL_ALIASES, "Cof", "Fib", "Q", "R"))
        or (isinstance(classes, dict) and any(key in classes for key in ("Cof", "Fib")))
    )


def parse_model(document: dict, c: FinCategory, name: str) -> ModelData:
    structure = document.get("structure")
    if structure is not None:
        if structure not in STRUCTURES:
            raise InstanceError(f"{name}: unknown structure {structure!r}, expected one of {sorted(STRUCTURES)}")
        md = STRUCTURES[structure](c, name=name)
    else:
        classes = _classes(document, name)
        for key in CLASS_KEYS:
            if key not in classes:
                raise InstanceError(f"{name}: missing class {key!r}")
        md = ModelData(
            cat=c,
            W=_morphism_class(c, classes["W"], "W", name),
            Cof=_morphism_class(c, classes["Cof"], "Cof", name),
            Fib=_morphism_class(c, classes["Fib"], "Fib", name),
            init=_object(c, _model_value(document, "initial", name), name),
            term=_object(c, _model_value(document, "terminal", name), name),
            fact1=_factorizations(c, _model_value(document, "fact_cof_trivfib", name), "fact_cof_trivfib", name),
            fact2=_factorizations(c, _model_value(document, "fact_trivcof_fib", name), "fact_trivcof_fib", name),
            name=name,
        )

    replacements = {}
    for key in ("Q", "R"):
        if key not in document:
            continue
        functor, components = _replacement(c, document[key], key, f"{name} {key}")
        source, target = (functor, _identity(c)) if key == "Q" else (_identity(c), functor)
        replacements[key] = Replacement(functor, NatTransformation(source, target, components))
        logger.debug(f"{name}: loaded {key} with components {components}")
    if replacements:
        md = ModelData(
            cat=md.cat, W=md.W, Cof=md.Cof, Fib=md.Fib, init=md.init, term=md.term,
            fact1=md.fact1, fact2=md.fact2, Q=replacements.get("Q"), R=replacements.get("R"), name=name,
        )
    return md


def _identity(c: FinCategory) -> Functor:
    return Functor(c, c, tuple(range(c.n_objects)), tuple(range(c.n_morphisms)), name=f"id_{c.name}")


def parse_instance(document: dict, name: Optional[str] = None) -> Instance:
    if not isinstance(document, dict):
        raise InstanceError(f"{name or 'instance'}: an instance must be a JSON object")
    name = name or document.get("name", "instance")
    c = parse_category(document, name=document.get("category", name))
    if is_model_document(document):
        return parse_model(document, c, name)
    classes = _classes(document, name)
    if "W" in classes:
        return WeakEquivalences(c, _morphism_class(c, classes["W"], "W", name), name)
    return c


def _split(path: Union[str, Path]):
    path = Path(path)
    return JsonDb(path.parent), path.stem


def load_instance(path: Union[str, Path]) -> Instance:
    db, document_id = _split(path)
    instance = parse_instance(db.read_document(document_id), name=None)
    logger.info(f"loaded instance {document_id} from {path}")
    return instance


def load_functor(path: Union[str, Path], source: FinCategory, target: FinCategory) -> Functor:
    db, document_id = _split(path)
    document = db.read_document(document_id)
    document.setdefault("name", document_id)
    return parse_functor(document, source, target)


def load_battery(
    directory: Union[str, Path],
    max_objects: Optional[int] = None,
    max_morphisms: Optional[int] = None,
    name: Optional[str] = None,
) -> Battery:
    """Every category document of a corpus directory, in file-name order, within the size limits."""
    check_corpus_dir(directory)
    db = JsonDb(directory)
    members: List[FinCategory] = []
    for document_id in db.get_all_id():
        c = parse_category(db.read_document(document_id), name=document_id)
        if max_objects is not None and c.n_objects > max_objects:
            logger.warning(f"battery member {document_id} has {c.n_objects} objects, skipping")
            continue
        if max_morphisms is not None and c.n_morphisms > max_morphisms:
            logger.warning(f"battery member {document_id} has {c.n_morphisms} morphisms, skipping")
            continue
        members.append(c)
    if not members:
        raise InstanceError(f"battery {directory} has no usable members")
    battery = Battery(name or Path(directory).name, tuple(members))
    logger.info(f"loaded battery {battery.name} with {len(battery)} members")
    return battery


def serialize_category(c: FinCategory) -> dict:
    return {
        "name": c.name,
        "objects": list(c.objects),
        "morphisms": [
            {"id": c.morphisms[m], "dom": c.objects[c.dom[m]], "cod": c.objects[c.cod[m]]}
            for m in range(c.n_morphisms)
        ],
        "identities": {c.objects[x]: c.morphisms[i] for x, i in enumerate(c.identities)},
        "composition": [
            {"g": c.morphisms[g], "f": c.morphisms[f], "gf": c.morphisms[gf]} for g, f, gf in c.composition
        ],
    }


def serialize_functor(F: Functor) -> dict:
    described = F.describe()
    return {"name": F.name, "obj_map": described["objects"], "mor_map": described["morphisms"]}


def _serialize_replacement(replacement: Replacement, key: str) -> dict:
    document = serialize_functor(replacement.functor)
    del document["name"]
    c = replacement.functor.source
    document[COMPONENT_KEYS[key]] = {
        c.objects[x]: c.morphisms[m] for x, m in enumerate(replacement.transformation.components)
    }
    return document


def _serialize_factorizations(c: FinCategory, pairs) -> dict:
    return {
        c.morphisms[f]: {"first": c.morphisms[first], "second": c.morphisms[second]}
        for f, (first, second) in enumerate(pairs)
    }


def serialize_instance(instance: Instance) -> dict:
    if isinstance(instance, FinCategory):
        return serialize_category(instance)
    document = serialize_category(instance.cat)
    document["name"] = instance.name
    if isinstance(instance, WeakEquivalences):
        document["W"] = instance.W.names()
        return document

    md, c = instance, instance.cat
    document["category"] = c.name
    document["classes"] = {"W": md.W.names(), "Cof": md.Cof.names(), "Fib": md.Fib.names()}
    document["initial"] = c.objects[md.init]
    document["terminal"] = c.objects[md.term]
    document["fact_cof_trivfib"] = _serialize_factorizations(c, md.fact1)
    document["fact_trivcof_fib"] = _serialize_factorizations(c, md.fact2)
    for key in ("Q", "R"):
        replacement = getattr(md, key)
        if replacement is not None:
            document[key] = _serialize_replacement(replacement, key)
    return document


def save_instance(path: Union[str, Path], instance: Instance) -> None:
    db, document_id = _split(path)
    db.delete_document(document_id)
    db.update_document(document_id, serialize_instance(instance))
