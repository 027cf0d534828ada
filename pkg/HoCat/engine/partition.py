from collections import defaultdict
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Optional, Sequence, Tuple


class Partition:
    """
    A finite equivalence relation stored by its classes.

    Classes are sorted tuples and the class list is sorted by least member,
    so two partitions of the same set compare equal exactly when they
    relate the same pairs. The least member of a class is its canonical
    representative.
    """

    def __init__(self, classes: Iterable[Iterable[Hashable]]):
        self.classes: Tuple[Tuple, ...] = tuple(sorted(tuple(sorted(c)) for c in classes))
        assert all(len(c) > 0 for c in self.classes)

        self.element_to_class: Dict[Hashable, int] = {}
        for i, c in enumerate(self.classes):
            for x in c:
                assert x not in self.element_to_class, f"{x!r} lies in two classes"
                self.element_to_class[x] = i

        self.isolated = tuple(c[0] for c in self.classes if len(c) == 1)
        self.nontriv_classes = tuple(c for c in self.classes if len(c) > 1)

    def __str__(self):
        items = ["(" + " ~ ".join(map(str, c)) + ")" for c in self.nontriv_classes]
        items.extend(str(x) for x in self.isolated)
        return ", ".join(items)

    def __repr__(self):
        return f"Partition({self})"

    def __eq__(self, other):
        return isinstance(other, Partition) and self.classes == other.classes

    def __hash__(self):
        return hash(self.classes)

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[Tuple]:
        return iter(self.classes)

    @property
    def elements(self) -> List:
        return sorted(self.element_to_class)

    @property
    def is_discrete(self) -> bool:
        return not self.nontriv_classes

    def class_index(self, x: Hashable) -> int:
        return self.element_to_class[x]

    def class_of(self, x: Hashable) -> Tuple:
        return self.classes[self.element_to_class[x]]

    def representative(self, x: Hashable) -> Hashable:
        return self.class_of(x)[0]

    def relates(self, a: Hashable, b: Hashable) -> bool:
        return self.element_to_class[a] == self.element_to_class[b]

    def __and__(self, other: "Partition") -> "Partition":
        refined: List[Sequence] = []
        for c in self.classes:
            split = defaultdict(list)
            for x in c:
                split[other.element_to_class[x]].append(x)
            refined.extend(split.values())
        return Partition(refined)

    @staticmethod
    def discrete(elements: Iterable[Hashable]) -> "Partition":
        return Partition([x] for x in elements)

    @staticmethod
    def generated_by(elements: Iterable[Hashable], pairs: Iterable[Tuple[Hashable, Hashable]]) -> "Partition":
        """The least equivalence relation on `elements` containing `pairs`."""
        elements = list(elements)
        graph: Dict[Hashable, List[Hashable]] = {x: [] for x in elements}
        for a, b in pairs:
            graph[a].append(b)
            graph[b].append(a)

        classes = []
        used = set()
        for main in elements:
            if main in used:
                continue
            c = []
            stack = [main]
            used.add(main)
            while stack:
                x = stack.pop()
                c.append(x)
                for y in graph[x]:
                    if y not in used:
                        used.add(y)
                        stack.append(y)
            classes.append(c)
        return Partition(classes)


def equivalence_counterexample(
    elements: Sequence[Hashable], related: Callable[[Hashable, Hashable], bool]
) -> Optional[str]:
    """First failure of reflexivity, symmetry or transitivity, or None."""
    for a in elements:
        if not related(a, a):
            return f"not reflexive at {a!r}"
    for a in elements:
        for b in elements:
            if related(a, b) and not related(b, a):
                return f"not symmetric at ({a!r}, {b!r})"
    for a in elements:
        for b in elements:
            if not related(a, b):
                continue
            for c in elements:
                if related(b, c) and not related(a, c):
                    return f"not transitive at ({a!r}, {b!r}, {c!r})"
    return None


def partition_of_relation(
    elements: Sequence[Hashable], related: Callable[[Hashable, Hashable], bool]
) -> Partition:
    """Classes of a relation already known to be an equivalence."""
    return Partition.generated_by(
        elements, ((a, b) for i, a in enumerate(elements) for b in elements[i + 1:] if related(a, b))
    )
