"""
Vectorised truth tables over projected configuration spaces.

A table for options ``o1..ok`` is a boolean numpy array of shape
``(|dom o1|, ..., |dom ok|)``; cell ``[i1, ..., ik]`` holds the value of the
formula under ``o1 = dom(o1)[i1], ...``.
"""

from typing import Iterable, List, Optional, Sequence
import math

import numpy as np

from ..config import get_settings
from ..errors import FormulaError, FormulaTooLargeError
from ..space import ConfigSpace, OptionDef
from .ast import And, Atom, Const, Interaction, Or


def project(space: ConfigSpace, names: Iterable[str]) -> List[OptionDef]:
    """Options named in ``names``, in space order."""
    wanted = set(names)
    for name in wanted:
        if name not in space:
            raise FormulaError(f"unknown option {name!r}")
    return [o for o in space.options if o.name in wanted]


def check_cap(options: Sequence[OptionDef], cap: Optional[int] = None) -> None:
    cap = cap or get_settings().canonicalize_cap
    size = math.prod(o.size for o in options)
    if size > cap:
        raise FormulaTooLargeError(
            f"projected space over {len(options)} options has {size} assignments "
            f"(cap {cap})"
        )


def validate_formula(f: Interaction, space: ConfigSpace) -> None:
    """Raise FormulaError if ``f`` mentions unknown options or values."""
    if isinstance(f, Atom):
        if f.option not in space:
            raise FormulaError(f"unknown option {f.option!r}")
        unknown = sorted(f.values - set(space.option(f.option).domain))
        if unknown:
            raise FormulaError(
                f"value(s) {', '.join(unknown)} not in domain of {f.option!r}"
            )
    elif isinstance(f, (And, Or)):
        for child in f.children:
            validate_formula(child, space)


def truth_table(f: Interaction, options: Sequence[OptionDef]) -> np.ndarray:
    """
    Evaluate ``f`` on every assignment of ``options``.

    Args:
        f: Formula whose options are a subset of ``options``
        options: Projected options, defining the table axes

    Returns:
        Boolean array of shape ``tuple(o.size for o in options)``
    """
    shape = tuple(o.size for o in options)
    axes = {o.name: i for i, o in enumerate(options)}

    def build(node: Interaction) -> np.ndarray:
        if isinstance(node, Const):
            return np.full(shape, node.value, dtype=bool)
        if isinstance(node, Atom):
            if node.option not in axes:
                raise FormulaError(f"option {node.option!r} is outside the projection")
            i = axes[node.option]
            mask = np.array([v in node.values for v in options[i].domain], dtype=bool)
            view = [1] * len(shape)
            view[i] = shape[i]
            return np.broadcast_to(mask.reshape(view), shape)
        if isinstance(node, And):
            result = np.ones(shape, dtype=bool)
            for child in node.children:
                np.logical_and(result, build(child), out=result)
            return result
        if isinstance(node, Or):
            result = np.zeros(shape, dtype=bool)
            for child in node.children:
                np.logical_or(result, build(child), out=result)
            return result
        raise TypeError(f"not a formula: {node!r}")

    return np.array(build(f), dtype=bool)


def space_table(f: Interaction, space: ConfigSpace, cap: Optional[int] = None) -> np.ndarray:
    """Truth table of ``f`` over the whole space (cap applies)."""
    options = list(space.options)
    check_cap(options, cap)
    return truth_table(f, options)


def equivalent(
    f: Interaction,
    g: Interaction,
    space: ConfigSpace,
    cap: Optional[int] = None,
) -> bool:
    """
    Semantic equivalence over the projection onto the options of ``f`` and ``g``.

    Raises:
        FormulaTooLargeError: If the projected space exceeds ``cap``
    """
    if f == g:
        return True
    validate_formula(f, space)
    validate_formula(g, space)
    options = project(space, f.options() | g.options())
    check_cap(options, cap)
    return bool(np.array_equal(truth_table(f, options), truth_table(g, options)))


def satisfiable(f: Interaction, space: ConfigSpace, cap: Optional[int] = None) -> bool:
    return first_model(f, space, cap) is not None


def first_model(
    f: Interaction, space: ConfigSpace, cap: Optional[int] = None
) -> Optional[dict]:
    """
    The lexicographically first assignment of ``f``'s options satisfying it,
    or None when ``f`` is unsatisfiable.
    """
    validate_formula(f, space)
    options = project(space, f.options())
    check_cap(options, cap)
    table = truth_table(f, options)
    hits = np.argwhere(table)
    if len(hits) == 0:
        return None
    return {o.name: o.domain[int(j)] for o, j in zip(options, hits[0])}
