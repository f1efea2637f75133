"""Shape statistics of interactions: form class and length."""

from enum import Enum

from ..dtree import DecisionTree
from .ast import And, Atom, Const, Interaction, Or, conjoin, disjoin


class FormClass(str, Enum):
    """Syntactic family of a canonical interaction."""
    SINGLE = "single"
    CONJ = "conj"
    DISJ = "disj"
    MIXED = "mixed"


def classify_form(f: Interaction) -> FormClass:
    """
    Classify a canonical formula.

    single: true, false, or a formula over one option; conj: AND of
    single-value atoms; disj: OR of atoms (a value-set atom is a disjunction of
    equalities); mixed: anything else.
    """
    if isinstance(f, (Const, Atom)) or len(f.options()) <= 1:
        return FormClass.SINGLE
    if isinstance(f, And) and all(
        isinstance(c, Atom) and len(c.values) == 1 for c in f.children
    ):
        return FormClass.CONJ
    if isinstance(f, Or) and all(isinstance(c, Atom) for c in f.children):
        return FormClass.DISJ
    return FormClass.MIXED


def length(f: Interaction) -> int:
    """Number of distinct options in the formula (0 for true/false)."""
    return len(f.options())


def from_tree(tree: DecisionTree) -> Interaction:
    """
    Disjunction of the hit-path conditions.

    No hit path gives FALSE; a hit leaf at the root gives TRUE.
    """
    return disjoin(
        conjoin(Atom(s.option, frozenset((s.value,))) for s in path.settings)
        for path in tree.hit_paths()
    )
