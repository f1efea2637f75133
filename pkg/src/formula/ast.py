"""
Interaction formulas: negation-free boolean expressions over ``option=value``
and ``option in {...}`` atoms.

Negation is expressed as value-set complement (``e!=2`` is ``e in {0,1}``),
so every formula is monotone in its atoms.
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Mapping, Tuple, Union


@dataclass(frozen=True)
class Const:
    value: bool

    def evaluate(self, assignment: Mapping[str, str]) -> bool:
        return self.value

    def options(self) -> FrozenSet[str]:
        return frozenset()


@dataclass(frozen=True)
class Atom:
    """``option`` takes one of ``values``."""

    option: str
    values: FrozenSet[str]

    def evaluate(self, assignment: Mapping[str, str]) -> bool:
        return assignment[self.option] in self.values

    def options(self) -> FrozenSet[str]:
        return frozenset((self.option,))


@dataclass(frozen=True)
class And:
    children: Tuple["Interaction", ...]

    def evaluate(self, assignment: Mapping[str, str]) -> bool:
        return all(c.evaluate(assignment) for c in self.children)

    def options(self) -> FrozenSet[str]:
        return frozenset().union(*(c.options() for c in self.children))


@dataclass(frozen=True)
class Or:
    children: Tuple["Interaction", ...]

    def evaluate(self, assignment: Mapping[str, str]) -> bool:
        return any(c.evaluate(assignment) for c in self.children)

    def options(self) -> FrozenSet[str]:
        return frozenset().union(*(c.options() for c in self.children))


Interaction = Union[Const, Atom, And, Or]

TRUE = Const(True)
FALSE = Const(False)


def atom(option: str, *values: object) -> Atom:
    """Shorthand: ``atom("e", 0, 1)`` is ``e in {0,1}``."""
    return Atom(option, frozenset(str(v) for v in values))


def _flatten(items: Iterable[Interaction], kind: type) -> List[Interaction]:
    flat: List[Interaction] = []
    for item in items:
        children = item.children if isinstance(item, kind) else (item,)
        for child in children:
            if child not in flat:
                flat.append(child)
    return flat


def conjoin(items: Iterable[Interaction]) -> Interaction:
    """AND of ``items``, flattened, with TRUE dropped and FALSE absorbing."""
    flat = [c for c in _flatten(items, And) if c != TRUE]
    if FALSE in flat:
        return FALSE
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(tuple(flat))


def disjoin(items: Iterable[Interaction]) -> Interaction:
    """OR of ``items``, flattened, with FALSE dropped and TRUE absorbing."""
    flat = [c for c in _flatten(items, Or) if c != FALSE]
    if TRUE in flat:
        return TRUE
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return Or(tuple(flat))


def simplify(f: Interaction) -> Interaction:
    """Structural clean-up only: flatten nesting and fold constants."""
    if isinstance(f, And):
        return conjoin(simplify(c) for c in f.children)
    if isinstance(f, Or):
        return disjoin(simplify(c) for c in f.children)
    if isinstance(f, Atom) and not f.values:
        return FALSE
    return f
