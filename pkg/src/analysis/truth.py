"""
Ground truth by exhaustive enumeration, and comparison of inferred
interactions against it.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Union

import numpy as np
from loguru import logger

from ..config import get_settings
from ..errors import FormulaTooLargeError, GroundTruthTooLargeError, RunnerError
from ..formula import Interaction, equivalent, minimize_table
from ..runner import CoverageRunner
from ..space import ConfigSpace, Configuration, enumerate_all


@dataclass
class GroundTruth:
    """
    Exact covering sets and their canonical interactions.

    ``tables[loc]`` is a boolean array of shape ``space.shape``; entry
    ``[i1, ..., in]`` tells whether the configuration with those domain
    indices covers the location.
    """

    space: ConfigSpace
    tables: Dict[str, np.ndarray] = field(default_factory=dict)
    interactions: Dict[str, Interaction] = field(default_factory=dict)

    @property
    def locations(self) -> List[str]:
        return sorted(self.interactions)

    def covers(self, location: str, config: Configuration) -> bool:
        return bool(self.tables[location][self.space.indices_of(config)])

    def __len__(self) -> int:
        return len(self.interactions)


def ground_truth(
    space: ConfigSpace,
    runner: CoverageRunner,
    cap: Optional[int] = None,
) -> GroundTruth:
    """
    Run every configuration and characterise each covered location exactly.

    Args:
        space: Configuration space
        runner: Runner over ``space``
        cap: Largest space size to enumerate (default from settings)

    Returns:
        GroundTruth with one table and one interaction per covered location

    Raises:
        GroundTruthTooLargeError: If the space is larger than ``cap``
        RunnerError: If some configuration could not be executed
    """
    cap = cap if cap is not None else get_settings().ground_truth_cap
    if space.size > cap:
        raise GroundTruthTooLargeError(f"space has {space.size} configurations, cap is {cap}")

    logger.info(f"Enumerating all {space.size} configurations")
    configs = list(enumerate_all(space))
    coverage = runner.run_configs(configs)
    if len(coverage) != len(configs):
        missing = len(configs) - len(coverage)
        logger.error(f"{missing} configurations failed; ground truth would be incomplete")
        raise RunnerError(f"{missing} configurations failed during enumeration")

    locations = sorted(set().union(*coverage.values()))
    truth = GroundTruth(space)
    for location in locations:
        flat = np.fromiter(
            (location in coverage[c] for c in configs), dtype=bool, count=len(configs)
        )
        table = flat.reshape(space.shape)
        truth.tables[location] = table
        truth.interactions[location] = minimize_table(table, space.options)

    logger.success(f"Ground truth for {len(locations)} locations")
    return truth


@dataclass
class Comparison:
    exact: int
    total: int
    delta_cov: int
    mismatches: List[str]
    missing: List[str]
    extra: List[str]

    @property
    def perfect(self) -> bool:
        return self.exact == self.total and self.delta_cov == 0


def compare(
    inferred: Mapping[str, Interaction],
    truth: Union[GroundTruth, Mapping[str, Interaction]],
    space: ConfigSpace,
) -> Comparison:
    """
    Count inferred interactions semantically equal to the truth.

    Args:
        inferred: Location -> inferred interaction
        truth: GroundTruth or location -> true interaction
        space: Configuration space of both

    Returns:
        Comparison with the exact count, total truth locations and
        ``delta_cov = |inferred| - |truth|``
    """
    expected = truth.interactions if isinstance(truth, GroundTruth) else dict(truth)
    mismatches, missing = [], []
    for location in sorted(expected):
        if location not in inferred:
            missing.append(location)
            continue
        try:
            same = equivalent(inferred[location], expected[location], space)
        except FormulaTooLargeError as e:
            logger.warning(f"Cannot compare {location}: {e}")
            same = False
        if not same:
            mismatches.append(location)

    extra = sorted(set(inferred) - set(expected))
    exact = len(expected) - len(mismatches) - len(missing)
    return Comparison(
        exact=exact,
        total=len(expected),
        delta_cov=len(inferred) - len(expected),
        mismatches=mismatches,
        missing=missing,
        extra=extra,
    )
