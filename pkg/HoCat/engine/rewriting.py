"""
Zigzags and the word problem for a localization.

A zigzag is a word in path order: each step is Fwd(m) or Inv(w), where
Inv(w) walks a weak equivalence backwards. The four identifications
(identities vanish, adjacent forward steps compose, w then w⁻¹ and w⁻¹
then w cancel) are oriented as rewrite rules and completed Knuth-Bendix
style under the shortlex order. When completion finishes, the irreducible
words are the morphisms of the localization.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

from HoCat.engine.errors import BudgetExceeded, MalformedZigzag, NonConfluent
from HoCat.engine.fincat import FinCategory, Functor, MorphismClass
from HoCat.helpers.budget import Budget
from HoCat.logging import LOGGER

logger = LOGGER(__name__)

FWD = "F"
INV = "I"

# two successive word lengths without a new irreducible word end the enumeration
STABLE_LEVELS = 2


class Step(NamedTuple):
    kind: str
    mor: int


def Fwd(m: int) -> Step:
    return Step(FWD, m)


def Inv(w: int) -> Step:
    return Step(INV, w)


Word = Tuple[Step, ...]
Rule = Tuple[Word, Word]


def step_source(c: FinCategory, step: Step) -> int:
    return c.dom[step.mor] if step.kind == FWD else c.cod[step.mor]


def step_target(c: FinCategory, step: Step) -> int:
    return c.cod[step.mor] if step.kind == FWD else c.dom[step.mor]


def step_name(c: FinCategory, step: Step) -> str:
    name = c.morphisms[step.mor]
    return name if step.kind == FWD else f"{name}^-1"


def word_name(c: FinCategory, word: Word) -> str:
    return ";".join(step_name(c, step) for step in word)


@dataclass(frozen=True)
class Zigzag:
    start: int
    end: int
    word: Word = ()

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(Step(*step) for step in self.word))

    def __len__(self) -> int:
        return len(self.word)

    def then(self, step: Step, c: FinCategory) -> "Zigzag":
        return Zigzag(self.start, step_target(c, step), self.word + (step,))


def check_zigzag(c: FinCategory, W: MorphismClass, z: Zigzag) -> None:
    """Raise MalformedZigzag unless z is a composable word over (c, W)."""
    position = z.start
    for step in z.word:
        if step.kind not in (FWD, INV) or not 0 <= step.mor < c.n_morphisms:
            raise MalformedZigzag(f"unknown step {step!r}")
        if step.kind == INV and step.mor not in W:
            raise MalformedZigzag(f"{c.morphisms[step.mor]} is reversed but is not a weak equivalence")
        if step_source(c, step) != position:
            raise MalformedZigzag(f"step {step_name(c, step)} does not start at {c.objects[position]}")
        position = step_target(c, step)
    if position != z.end:
        raise MalformedZigzag(f"word ends at {c.objects[position]}, not at {c.objects[z.end]}")


def shortlex_key(word: Word) -> Tuple[int, Word]:
    return len(word), word


def shortlex_ordered(a: Word, b: Word) -> Rule:
    if shortlex_key(a) > shortlex_key(b):
        return a, b
    return b, a


def _find(word: Word, pattern: Word, start: int = 0) -> int:
    n = len(pattern)
    for i in range(start, len(word) - n + 1):
        if word[i:i + n] == pattern:
            return i
    return -1


def _rfind(word: Word, pattern: Word) -> int:
    n = len(pattern)
    for i in range(len(word) - n, -1, -1):
        if word[i:i + n] == pattern:
            return i
    return -1


def contains(word: Word, pattern: Word) -> bool:
    return _find(word, pattern) >= 0


def replace_all(word: Word, left: Word, right: Word) -> Word:
    out: List[Step] = []
    i = 0
    n = len(left)
    while i <= len(word) - n:
        if word[i:i + n] == left:
            out.extend(right)
            i += n
        else:
            out.append(word[i])
            i += 1
    out.extend(word[i:])
    return tuple(out)


def reduced(word: Word, rules: Sequence[Rule]) -> Word:
    # every rule is shortlex-decreasing, so this terminates
    while True:
        before = word
        for left, right in rules:
            word = replace_all(word, left, right)
        if word == before:
            return word


def normal_form(word: Word, rules: Sequence[Rule], strategy: str = "leftmost") -> Word:
    """Rewrite one redex at a time, always the leftmost or always the rightmost."""
    while True:
        best: Optional[Tuple[int, Rule]] = None
        for rule in rules:
            i = _find(word, rule[0]) if strategy == "leftmost" else _rfind(word, rule[0])
            if i < 0:
                continue
            if best is None or (i < best[0] if strategy == "leftmost" else i > best[0]):
                best = (i, rule)
        if best is None:
            return word
        i, (left, right) = best
        word = word[:i] + right + word[i + len(left):]


def base_rules(c: FinCategory, W: MorphismClass) -> List[Rule]:
    """The four identifications as oriented rules on composable words."""
    rules: List[Rule] = []
    for i in c.identities:
        rules.append(((Fwd(i),), ()))
    for g, f, gf in c.composition:
        if c.is_identity(g) or c.is_identity(f):
            continue
        rules.append(((Fwd(f), Fwd(g)), (Fwd(gf),)))
    for w in W:
        rules.append(((Fwd(w), Inv(w)), ()))
        rules.append(((Inv(w), Fwd(w)), ()))
    return rules


@dataclass
class RewriteSystem:
    category: FinCategory
    W: MorphismClass
    rules: List[Rule] = field(default_factory=list)
    complete: bool = False

    def reduce(self, word: Word) -> Word:
        return reduced(word, self.rules)

    def is_irreducible(self, word: Word) -> bool:
        return not any(contains(word, left) for left, _ in self.rules)


def complete_rewrite_system(c: FinCategory, W: MorphismClass, budget: Optional[Budget] = None) -> RewriteSystem:
    """Knuth-Bendix completion of the identifications under shortlex."""
    budget = Budget.ensure(budget)
    rules0 = base_rules(c, W)

    rule_set: Set[Rule] = set()
    for left, right in rules0:
        if left != right:
            rule_set.add(shortlex_ordered(left, right))

    # rule_list[:num_reduced] never reduce each other
    rule_list = sorted(rule_set, key=lambda rule: (shortlex_key(rule[0]), shortlex_key(rule[1])))
    num_reduced = 0

    def replace_rule_at_index(i: int, new1: Word, new2: Word) -> None:
        nonlocal num_reduced
        rule_set.remove(rule_list[i])
        del rule_list[i]
        if i < num_reduced:
            num_reduced -= 1
        left, right = new_rule = shortlex_ordered(new1, new2)
        if left != right and new_rule not in rule_set:
            rule_set.add(new_rule)
            rule_list.append(new_rule)

    while True:
        budget.tick(where="completion")

        # inter-reduce: no left side occurs in another rule
        while num_reduced < len(rule_list):
            budget.tick(where="completion")
            left1, right1 = rule1 = rule_list[num_reduced]
            for i, rule2 in enumerate(rule_list[:num_reduced + 1]):
                left2, right2 = rule2
                if contains(right1, left2):
                    replace_rule_at_index(num_reduced, replace_all(right1, left2, right2), left1)
                    break
                if contains(right2, left1):
                    replace_rule_at_index(i, replace_all(right2, left1, right1), left2)
                    break
                if i == num_reduced:
                    continue
                if contains(left1, left2):
                    replace_rule_at_index(num_reduced, replace_all(left1, left2, right2), right1)
                    break
                if contains(left2, left1):
                    replace_rule_at_index(i, replace_all(left2, left1, right1), right2)
                    break
            else:
                num_reduced += 1

        # overlaps of a suffix of one left side with a prefix of another
        prefix_to_rules: Dict[Word, List[Rule]] = defaultdict(list)
        suffix_to_rules: Dict[Word, List[Rule]] = defaultdict(list)
        for rule in rule_list:
            left = rule[0]
            for i in range(1, len(left)):
                prefix_to_rules[left[:i]].append(rule)
                suffix_to_rules[left[i:]].append(rule)

        critical_pairs: List[Rule] = []
        for overlap in sorted(prefix_to_rules.keys() & suffix_to_rules.keys(), key=shortlex_key):
            for left1, right1 in prefix_to_rules[overlap]:
                tail = left1[len(overlap):]
                for left2, right2 in suffix_to_rules[overlap]:
                    budget.tick(where="critical pairs")
                    head = left2[:-len(overlap)]
                    crit1 = reduced(right2 + tail, rule_list)
                    crit2 = reduced(head + right1, rule_list)
                    if crit1 != crit2:
                        pair = shortlex_ordered(crit1, crit2)
                        if pair not in rule_set and pair not in critical_pairs:
                            logger.debug(f"{c.name}: critical pair {word_name(c, pair[0])} -> {word_name(c, pair[1])}")
                            critical_pairs.append(pair)

        if not critical_pairs:
            break
        for pair in critical_pairs:
            if pair not in rule_set:
                rule_set.add(pair)
                rule_list.append(pair)

    for left0, right0 in rules0:
        if reduced(left0, rule_list) != reduced(right0, rule_list):
            raise NonConfluent(f"{c.name}: completed rules lost the identification {word_name(c, left0)}")

    rules = sorted(rule_list, key=lambda rule: (shortlex_key(rule[0]), shortlex_key(rule[1])))
    logger.info(f"{c.name}: completion finished with {len(rules)} rules")
    return RewriteSystem(c, W, rules, complete=True)


def composable_extensions(c: FinCategory, W: MorphismClass, position: int) -> Iterator[Step]:
    for m in c.outgoing(position):
        yield Fwd(m)
    for w in W:
        if c.cod[w] == position:
            yield Inv(w)


def irreducible_words(
    system: RewriteSystem, budget: Optional[Budget] = None, max_length: int = 12
) -> Tuple[Dict[Tuple[int, int], List[Word]], int]:
    """
    Irreducible words per (start, end), enumerated by length until
    STABLE_LEVELS successive lengths produce nothing new. Returns the words
    and the length at which the enumeration stabilized.
    """
    budget = Budget.ensure(budget)
    c, W = system.category, system.W
    homs: Dict[Tuple[int, int], List[Word]] = defaultdict(list)
    level: List[Tuple[int, int, Word]] = []
    for x in range(c.n_objects):
        homs[(x, x)].append(())
        level.append((x, x, ()))

    length, quiet = 0, 0
    while quiet < STABLE_LEVELS:
        length += 1
        if length > max_length:
            raise BudgetExceeded(f"{c.name}: irreducible words still appear at length {max_length}")
        nxt = []
        for start, end, word in level:
            for step in composable_extensions(c, W, end):
                budget.tick(where="zigzag enumeration")
                candidate = word + (step,)
                if system.is_irreducible(candidate):
                    nxt.append((start, step_target(c, step), candidate))
        for start, end, word in nxt:
            homs[(start, end)].append(word)
        quiet = quiet + 1 if not nxt else 0
        level = nxt
    return dict(homs), length


def all_words(c: FinCategory, W: MorphismClass, max_length: int, budget: Optional[Budget] = None) -> Iterator[Zigzag]:
    """Every composable zigzag of length at most max_length, shortest first."""
    budget = Budget.ensure(budget)
    level = [Zigzag(x, x) for x in range(c.n_objects)]
    yield from level
    for _ in range(max_length):
        nxt = []
        for z in level:
            for step in composable_extensions(c, W, z.end):
                budget.tick(where="word enumeration")
                nxt.append(z.then(step, c))
        yield from nxt
        level = nxt


def check_confluence(system: RewriteSystem, max_length: int, budget: Optional[Budget] = None) -> None:
    """Leftmost and rightmost rewriting agree on every word up to max_length."""
    c = system.category
    for z in all_words(c, system.W, max_length, budget):
        left = normal_form(z.word, system.rules, "leftmost")
        right = normal_form(z.word, system.rules, "rightmost")
        if left != right:
            raise NonConfluent(
                f"{c.name}: {word_name(c, z.word)} has normal forms "
                f"{word_name(c, left) or 'ε'} and {word_name(c, right) or 'ε'}"
            )


def localize_by_rewriting(
    c: FinCategory, W: MorphismClass, budget: Optional[Budget] = None, max_length: int = 12
) -> Tuple[FinCategory, Functor]:
    """
    The localization c[W⁻¹] as a finite category of irreducible zigzags,
    with L sending m to the class of Fwd(m).
    """
    budget = Budget.ensure(budget)
    system = complete_rewrite_system(c, W, budget)
    homs, stable_length = irreducible_words(system, budget, max_length=max_length)
    check_confluence(system, stable_length, budget)

    words: List[Tuple[int, int, Word]] = []
    for x in range(c.n_objects):
        for y in range(c.n_objects):
            for word in sorted(homs.get((x, y), []), key=shortlex_key):
                words.append((x, y, word))
    # identities first, in object order
    words.sort(key=lambda entry: (len(entry[2]) > 0, shortlex_key(entry[2]), entry[0], entry[1]))
    index = {(x, y, word): i for i, (x, y, word) in enumerate(words)}

    def name_of(x: int, word: Word) -> str:
        if not word:
            return c.morphisms[c.identity(x)]
        return word_name(c, word)

    composition = []
    for f, (x, y, word_f) in enumerate(words):
        for g, (y2, z, word_g) in enumerate(words):
            if y2 != y:
                continue
            budget.tick(where="localized composition")
            composition.append((g, f, index[(x, z, system.reduce(word_f + word_g))]))

    loc = FinCategory(
        name=f"{c.name}[W^-1]",
        objects=c.objects,
        morphisms=tuple(name_of(x, word) for x, _, word in words),
        dom=tuple(x for x, _, _ in words),
        cod=tuple(y for _, y, _ in words),
        identities=tuple(index[(x, x, ())] for x in range(c.n_objects)),
        composition=tuple(composition),
    )
    L = Functor(
        c,
        loc,
        tuple(range(c.n_objects)),
        tuple(index[(c.dom[m], c.cod[m], system.reduce((Fwd(m),)))] for m in range(c.n_morphisms)),
        name=f"L_{c.name}",
    )
    logger.info(f"{c.name}: localized at {len(W)} morphisms, {loc.n_morphisms} morphisms after stabilizing at length {stable_length}")
    return loc, L
