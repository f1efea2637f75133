"""
Small sets of configurations that jointly satisfy every interaction.

The greedy selection merges mutually compatible interactions, most shared
first, into one conjunction per configuration. The exact optimum is available
for enumerable spaces through a set cover over coverage signatures.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Mapping, Optional

import numpy as np
from loguru import logger

from ..formula import (
    FALSE,
    TRUE,
    Interaction,
    conjoin,
    equivalent,
    first_model,
    satisfiable,
    space_table,
)
from ..space import ConfigSpace, Configuration


@dataclass
class CoveringSelection:
    configs: List[Configuration]
    # locations whose interaction each configuration satisfies
    covers: List[List[str]] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.configs)


@dataclass
class _Group:
    formula: Interaction
    locations: List[str]
    order: int


def _group(interactions: Mapping[str, Interaction], space: ConfigSpace, cap: Optional[int]):
    groups: List[_Group] = []
    skipped: List[str] = []
    for location, formula in interactions.items():
        if formula == FALSE or not satisfiable(formula, space, cap):
            logger.warning(f"Interaction of {location} is unsatisfiable; skipped")
            skipped.append(location)
            continue
        for group in groups:
            if equivalent(group.formula, formula, space, cap):
                group.locations.append(location)
                break
        else:
            groups.append(_Group(formula, [location], len(groups)))
    groups.sort(key=lambda g: (-len(g.locations), g.order))
    return groups, skipped


def _complete(model: Dict[str, str], space: ConfigSpace) -> Configuration:
    """Fill options the model leaves open with their first domain value."""
    values = {o.name: model.get(o.name, o.domain[0]) for o in space.options}
    return space.config_from_mapping(values)


def min_covering_configs(
    interactions: Mapping[str, Interaction],
    space: ConfigSpace,
    cap: Optional[int] = None,
) -> CoveringSelection:
    """
    Greedy small configuration set satisfying every satisfiable interaction.

    Interactions are grouped by equivalence and ranked by how many locations
    share them. Each round conjoins, in rank order, every remaining group that
    keeps the conjunction satisfiable and emits the first satisfying
    configuration; groups it happens to satisfy are also retired.

    Args:
        interactions: Location -> interaction, in declaration order
        space: Configuration space
        cap: Enumeration cap for satisfiability checks

    Returns:
        CoveringSelection; FALSE or unsatisfiable interactions are listed in
        ``skipped``
    """
    groups, skipped = _group(interactions, space, cap)
    selection = CoveringSelection(configs=[], skipped=skipped)

    uncovered = list(groups)
    while uncovered:
        combined: Interaction = TRUE
        for group in uncovered:
            trial = conjoin([combined, group.formula])
            if satisfiable(trial, space, cap):
                combined = trial
        model = first_model(combined, space, cap) or {}
        config = _complete(model, space)
        assignment = space.assignment(config)

        selection.configs.append(config)
        selection.covers.append(
            [
                loc
                for loc, f in interactions.items()
                if loc not in skipped and f.evaluate(assignment)
            ]
        )
        uncovered = [g for g in uncovered if not g.formula.evaluate(assignment)]

    logger.info(
        f"{len(selection.configs)} configurations cover "
        f"{len(interactions) - len(skipped)} interactions"
    )
    return selection


def brute_force_min_cover(
    interactions: Mapping[str, Interaction],
    space: ConfigSpace,
    cap: Optional[int] = None,
) -> List[Configuration]:
    """
    Exact minimum configuration set satisfying every satisfiable interaction.

    Configurations are reduced to their distinct coverage signatures, dominated
    signatures are dropped, and covers of growing size are searched.
    """
    targets = {loc: f for loc, f in interactions.items() if f != FALSE}
    columns, names = [], []
    for location, formula in targets.items():
        table = space_table(formula, space, cap).reshape(-1)
        if table.any():
            columns.append(table)
            names.append(location)
    if not columns:
        return []
    if len(columns) > 62:
        raise ValueError("brute-force cover supports at most 62 interactions")

    matrix = np.stack(columns, axis=1)
    weights = np.left_shift(np.int64(1), np.arange(len(columns), dtype=np.int64))
    signatures = matrix.astype(np.int64) @ weights
    unique, first_index = np.unique(signatures, return_index=True)

    candidates = [(int(sig), int(idx)) for sig, idx in zip(unique, first_index) if sig]
    maximal = [
        (sig, idx)
        for sig, idx in candidates
        if not any(other != sig and other & sig == sig for other, _ in candidates)
    ]
    maximal.sort(key=lambda item: item[1])
    full = (1 << len(columns)) - 1

    shape = space.shape
    for size in range(1, len(maximal) + 1):
        for combo in combinations(maximal, size):
            union = 0
            for sig, _ in combo:
                union |= sig
            if union == full:
                return [space.config_at(np.unravel_index(idx, shape)) for _, idx in combo]
    raise AssertionError("maximal signatures always cover every target")
