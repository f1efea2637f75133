"""
Random-search baseline and multi-seed sweeps.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..dtree import build_tree
from ..engine import EngineParams, post_process, run_engine
from ..formula import Interaction
from ..runner import CoverageRunner
from ..space import ConfigSpace, random_configs
from ..space.covering import Seed
from .truth import compare

RunnerFactory = Callable[[], CoverageRunner]


def random_baseline(
    space: ConfigSpace,
    runner: CoverageRunner,
    n_configs: int,
    seed: Seed = None,
) -> Dict[str, Interaction]:
    """
    One tree per location from a single random sample, no refinement.

    Args:
        space: Configuration space
        runner: Runner over ``space``
        n_configs: Sample size (distinct configurations)
        seed: Int seed or shared Random

    Returns:
        Location -> canonical interaction for every location the sample covers
    """
    if n_configs < 1:
        raise ValueError("n_configs must be at least 1")

    sample = random_configs(space, n_configs, seed)
    coverage = runner.run_configs(sample)
    executed = [c for c in sample if c in coverage]
    locations = sorted(set().union(*coverage.values())) if coverage else []

    trees = {}
    for location in locations:
        hits = [c for c in executed if location in coverage[c]]
        misses = [c for c in executed if location not in coverage[c]]
        trees[location] = build_tree(hits, misses, space)
    logger.debug(f"Random baseline: {len(executed)} configs, {len(trees)} locations")
    return post_process(trees, space)


@dataclass
class SweepRun:
    seed: int
    configs: int
    executions: int
    locations: int
    exact: Optional[int] = None
    total: Optional[int] = None
    # (executions, exact) after every iteration
    series: List[Tuple[int, int]] = field(default_factory=list)


@dataclass
class SweepSummary:
    runs: List[SweepRun]
    median: Dict[str, float]
    siqr: Dict[str, float]


def median_siqr(values: Sequence[float]) -> Tuple[float, float]:
    """Median and semi-interquartile range."""
    if not values:
        return 0.0, 0.0
    data = np.asarray(values, dtype=float)
    q1, q2, q3 = np.percentile(data, [25, 50, 75])
    return float(q2), float((q3 - q1) / 2)


def seed_sweep(
    space: ConfigSpace,
    make_runner: RunnerFactory,
    params: EngineParams,
    seeds: Sequence[int],
    truth: Optional[Mapping[str, Interaction]] = None,
) -> SweepSummary:
    """
    Run the engine once per seed, each time with a fresh runner.

    Returns:
        Per-run figures plus median and SIQR of configs, executions,
        locations and (with truth) exact counts
    """
    runs = []
    for seed in seeds:
        state = run_engine(space, make_runner(), params.model_copy(update={"seed": seed}), truth)
        run = SweepRun(
            seed=seed,
            configs=len(state.cache),
            executions=state.log[-1].executions if state.log else 0,
            locations=len(state.formulas),
        )
        if truth is not None:
            result = compare(state.interactions, truth, space)
            run.exact, run.total = result.exact, result.total
            run.series = [(r.executions, r.exact or 0) for r in state.log]
        logger.info(
            f"Seed {seed}: {run.configs} configs, {run.locations} locations, exact {run.exact}"
        )
        runs.append(run)

    metrics = ["configs", "executions", "locations"] + (["exact"] if truth is not None else [])
    median, siqr = {}, {}
    for metric in metrics:
        median[metric], siqr[metric] = median_siqr([getattr(r, metric) for r in runs])
    return SweepSummary(runs, median, siqr)


def random_series(
    space: ConfigSpace,
    make_runner: RunnerFactory,
    checkpoints: Sequence[int],
    truth: Mapping[str, Interaction],
    seed: Seed = None,
) -> List[Tuple[int, int]]:
    """
    Exact-interaction count of the random baseline at each sample size.

    Args:
        space: Configuration space
        make_runner: Fresh-runner factory, one runner per checkpoint
        checkpoints: Sample sizes, usually an engine's convergence x-values
        truth: Location -> true interaction
        seed: Sampling seed shared across checkpoints

    Returns:
        ``(n_configs, exact)`` per checkpoint
    """
    series = []
    for n in checkpoints:
        if n < 1:
            series.append((n, 0))
            continue
        inferred = random_baseline(space, make_runner(), n, seed)
        series.append((n, compare(inferred, truth, space).exact))
    return series
