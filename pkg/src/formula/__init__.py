"""Interaction formulas: syntax, semantics, canonical forms and statistics."""

from .ast import FALSE, TRUE, And, Atom, Const, Interaction, Or, atom, conjoin, disjoin
from .parser import parse_formula, render_formula
from .tables import (
    equivalent,
    first_model,
    project,
    satisfiable,
    space_table,
    truth_table,
    validate_formula,
)
from .minimize import canonicalize, canonicalize_with_status, minimize_table
from .forms import FormClass, classify_form, from_tree, length

__all__ = [
    "FALSE",
    "TRUE",
    "And",
    "Atom",
    "Const",
    "Interaction",
    "Or",
    "atom",
    "conjoin",
    "disjoin",
    "parse_formula",
    "render_formula",
    "equivalent",
    "first_model",
    "project",
    "satisfiable",
    "space_table",
    "truth_table",
    "validate_formula",
    "canonicalize",
    "canonicalize_with_status",
    "minimize_table",
    "FormClass",
    "classify_form",
    "from_tree",
    "length",
]
