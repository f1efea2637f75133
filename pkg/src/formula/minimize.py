"""
Enumeration-based canonicalisation of interactions.

Formulas are turned into truth tables over the options they mention,
irrelevant options are projected away, and the remaining table is covered by
multi-valued prime implicants (cubes whose per-option value sets may be any
subset of the domain). Redundant primes are dropped and atoms shared by all
terms are factored out, so ``(s=0 & e=2 & u=1 & v=0) | (s=0 & e=2 & u=0 & v=1)``
becomes ``s=0 & e=2 & ((u=1 & v=0) | (u=0 & v=1))``.

The cover is greedy and therefore not guaranteed to be a globally minimal
DNF; equivalence, not syntax, is the correctness contract.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..errors import FormulaTooLargeError
from ..space import ConfigSpace, OptionDef
from .ast import FALSE, TRUE, Atom, Interaction, conjoin, disjoin, simplify
from .tables import check_cap, project, truth_table, validate_formula

Cube = List[List[int]]


def drop_irrelevant(
    table: np.ndarray, options: Sequence[OptionDef]
) -> Tuple[np.ndarray, List[OptionDef]]:
    """Remove axes along which the table is constant."""
    kept = list(options)
    for axis in reversed(range(table.ndim)):
        first = np.take(table, [0], axis=axis)
        if np.array_equal(np.broadcast_to(first, table.shape), table):
            table = np.take(table, 0, axis=axis)
            del kept[axis]
    return table, kept


def _is_implicant(table: np.ndarray, cube: Cube) -> bool:
    return bool(table[np.ix_(*cube)].all())


def _expand(table: np.ndarray, start: Sequence[int]) -> Cube:
    """
    Grow the minterm ``start`` into a prime implicant.

    First every option is tried as a don't-care, then single values are added
    to the options that could not be dropped. Later growth only shrinks the
    room for earlier options, so the result is prime.
    """
    cube: Cube = [[int(j)] for j in start]
    for axis, size in enumerate(table.shape):
        trial = list(cube)
        trial[axis] = list(range(size))
        if _is_implicant(table, trial):
            cube = trial
    for axis, size in enumerate(table.shape):
        if len(cube[axis]) == size:
            continue
        for j in range(size):
            if j in cube[axis]:
                continue
            trial = list(cube)
            trial[axis] = sorted(cube[axis] + [j])
            if _is_implicant(table, trial):
                cube = trial
    return cube


def prime_cover(table: np.ndarray) -> List[Cube]:
    """Greedy irredundant cover of the true cells of ``table`` by prime cubes."""
    covered = np.zeros(table.shape, dtype=bool)
    cubes: List[Cube] = []
    while True:
        remaining = np.argwhere(table & ~covered)
        if len(remaining) == 0:
            break
        cube = _expand(table, remaining[0])
        cubes.append(cube)
        covered[np.ix_(*cube)] = True

    counts = np.zeros(table.shape, dtype=np.int32)
    for cube in cubes:
        counts[np.ix_(*cube)] += 1

    def literals(cube: Cube) -> int:
        return sum(1 for axis, vals in enumerate(cube) if len(vals) < table.shape[axis])

    kept = list(cubes)
    for cube in sorted(cubes, key=literals, reverse=True):
        region = np.ix_(*cube)
        if counts[region].min() >= 2:
            counts[region] -= 1
            kept.remove(cube)
    return kept


def _factor(terms: List[List[Atom]]) -> Interaction:
    if len(terms) == 1:
        return conjoin(terms[0])
    common = [a for a in terms[0] if all(a in t for t in terms[1:])]
    if not common:
        return disjoin(conjoin(t) for t in terms)
    rest = [[a for a in t if a not in common] for t in terms]
    if any(not r for r in rest):
        return conjoin(common)
    return conjoin(common + [_factor(rest)])


def cubes_to_formula(cubes: List[Cube], options: Sequence[OptionDef]) -> Interaction:
    if not cubes:
        return FALSE
    terms = []
    for cube in sorted(cubes):
        term = [
            Atom(o.name, frozenset(o.domain[j] for j in vals))
            for o, vals in zip(options, cube)
            if len(vals) < o.size
        ]
        if not term:
            return TRUE
        terms.append(term)
    return _factor(terms)


def minimize_table(table: np.ndarray, options: Sequence[OptionDef]) -> Interaction:
    """
    Canonical formula for a truth table.

    Args:
        table: Boolean array with one axis per option
        options: Options of the axes, in space order

    Returns:
        TRUE, FALSE, or a factored DNF over the relevant options
    """
    table, options = drop_irrelevant(np.asarray(table, dtype=bool), options)
    if not table.any():
        return FALSE
    if table.all():
        return TRUE
    return cubes_to_formula(prime_cover(table), options)


def canonicalize_with_status(
    f: Interaction, space: ConfigSpace, cap: Optional[int] = None
) -> Tuple[Interaction, bool]:
    """
    Canonicalize ``f`` and report whether minimisation ran.

    Returns:
        ``(formula, True)`` normally; ``(structurally simplified f, False)``
        when the projected space is above the cap
    """
    validate_formula(f, space)
    options = project(space, f.options())
    try:
        check_cap(options, cap)
    except FormulaTooLargeError as e:
        logger.warning(f"Formula left unminimized: {e}")
        return simplify(f), False
    return minimize_table(truth_table(f, options), options), True


def canonicalize(f: Interaction, space: ConfigSpace, cap: Optional[int] = None) -> Interaction:
    """
    Semantically equivalent, deterministic, near-minimal form of ``f``.

    Formulas over more than ``cap`` projected assignments are only
    structurally simplified (a warning is logged).
    """
    return canonicalize_with_status(f, space, cap)[0]
