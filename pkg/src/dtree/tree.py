"""
Decision tree structure, classification and path extraction.

An internal node is labelled with an option and has one child per domain
value (in domain order); a leaf carries a hit/miss class and the number of
training configurations that reached it.
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, List, Tuple, Union

from ..space import ConfigSpace, Configuration, Setting


class Label(str, Enum):
    """Leaf classification."""
    HIT = "hit"
    MISS = "miss"


@dataclass(frozen=True)
class Leaf:
    label: Label
    support: int
    path_id: int = -1


@dataclass(frozen=True)
class Internal:
    option: str
    children: Tuple[Tuple[str, "Node"], ...]

    def child(self, value: str) -> "Node":
        for edge, node in self.children:
            if edge == value:
                return node
        raise KeyError(f"no edge {self.option}={value}")


Node = Union[Leaf, Internal]


@dataclass(frozen=True)
class TreePath:
    """Root-to-leaf path: the conjunction of its edge settings."""

    settings: Tuple[Setting, ...]
    leaf_class: Label
    support: int
    path_id: int

    @property
    def length(self) -> int:
        return len(self.settings)

    def condition(self) -> dict:
        return {s.option: s.value for s in self.settings}

    def __str__(self) -> str:
        cond = " & ".join(str(s) for s in self.settings) or "true"
        return f"{cond} -> {self.leaf_class.value.upper()}({self.support})"


def _number(node: Node, counter: List[int]) -> Node:
    if isinstance(node, Leaf):
        counter[0] += 1
        return replace(node, path_id=counter[0] - 1)
    return Internal(
        node.option,
        tuple((value, _number(child, counter)) for value, child in node.children),
    )


class DecisionTree:
    """
    Immutable multi-way decision tree over a configuration space.

    Leaves are numbered in depth-first, domain-value order; that number is the
    path id used for deterministic tie-breaking.
    """

    def __init__(self, root: Node, space: ConfigSpace):
        self.space = space
        self.root = _number(root, [0])
        self._paths = self._collect(self.root, ())

    def _collect(self, node: Node, prefix: Tuple[Setting, ...]) -> List[TreePath]:
        if isinstance(node, Leaf):
            return [TreePath(prefix, node.label, node.support, node.path_id)]
        paths = []
        for value, child in node.children:
            paths.extend(self._collect(child, prefix + (Setting(node.option, value),)))
        return paths

    def classify(self, config: Configuration) -> Label:
        """Follow the configuration's values from the root to a leaf."""
        node = self.root
        while isinstance(node, Internal):
            node = node.child(self.space.value_of(config, node.option))
        return node.label

    def paths(self) -> List[TreePath]:
        """All root-to-leaf paths in path-id order."""
        return list(self._paths)

    def hit_paths(self) -> List[TreePath]:
        return [p for p in self._paths if p.leaf_class is Label.HIT]

    @property
    def total_support(self) -> int:
        return sum(p.support for p in self._paths)

    def dump(self) -> str:
        """
        Indented text form, one node per line.

        Edges print as ``option=value ->``; leaves as ``HIT(n)`` / ``MISS(n)``.
        """
        lines: List[str] = []

        def leaf_text(leaf: Leaf) -> str:
            return f"{leaf.label.value.upper()}({leaf.support})"

        def walk(node: Internal, depth: int) -> None:
            indent = "  " * depth
            for value, child in node.children:
                if isinstance(child, Leaf):
                    lines.append(f"{indent}{node.option}={value} -> {leaf_text(child)}")
                else:
                    lines.append(f"{indent}{node.option}={value} ->")
                    walk(child, depth + 1)

        if isinstance(self.root, Leaf):
            lines.append(leaf_text(self.root))
        else:
            walk(self.root, 0)
        return "\n".join(lines)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, DecisionTree)
            and self.root == other.root
            and self.space == other.space
        )

    def __hash__(self) -> int:
        return hash(self.root)

    def __repr__(self) -> str:
        return f"DecisionTree({len(self._paths)} paths)"


def test_tree(
    tree: DecisionTree,
    hits: Iterable[Configuration],
    misses: Iterable[Configuration],
) -> bool:
    """True iff every hit classifies HIT and every miss classifies MISS."""
    return all(tree.classify(c) is Label.HIT for c in hits) and all(
        tree.classify(c) is Label.MISS for c in misses
    )


# not a pytest test
test_tree.__test__ = False  # type: ignore[attr-defined]
