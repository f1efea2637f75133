"""
The iterative refinement loop.

Each iteration visits every covered location: the location's tree is rebuilt
when it is missing or misclassifies the current cache. Rebuilt trees, and in
explore mode every tree, then get configurations generated from their most
fragile paths (plus one random path in explore mode), which are executed.
The run stops after ``max_explore_iters`` consecutive iterations without a
rebuild, or when the execution budget is spent.
"""

from random import Random
from time import perf_counter
from typing import Dict, List, Mapping, Optional

from loguru import logger

from ..errors import ConfigurationError
from ..dtree import DecisionTree, TreePath, build_tree, rank_paths, test_tree
from ..formula import Interaction, canonicalize, equivalent, from_tree, render_formula
from ..runner import CoverageCache, CoverageRunner
from ..space import ConfigSpace, Configuration, covering_configs, one_way_covering
from ..space.covering import Seed, as_rng
from .params import EngineParams, IterationRecord, RunState


def select_paths(tree: DecisionTree, explore: bool, seed: Seed = None) -> List[TreePath]:
    """
    Paths to generate configurations from, in priority order.

    Exploit mode returns the ranked paths. Explore mode puts one uniformly
    chosen path first and follows it with the remaining ranked paths.
    """
    rng = as_rng(seed)
    ranked = rank_paths(tree, rng)
    if not explore:
        return ranked
    chosen = rng.choice(tree.paths())
    return [chosen] + [p for p in ranked if p.path_id != chosen.path_id]


def gen_new_configs(
    paths: List[TreePath],
    space: ConfigSpace,
    cache: CoverageCache,
    min_new: int,
    seed: Seed = None,
) -> List[Configuration]:
    """
    Uncached configurations satisfying the given path conditions.

    For each path in order, a 1-way covering array over the options the path
    leaves free is generated with the path's settings pinned. Stops after the
    first path that brings the total to ``min_new``.

    Args:
        paths: Paths in priority order
        space: Configuration space
        cache: Cache of executed configurations
        min_new: Number of fresh configurations wanted
        seed: Int seed or shared Random

    Returns:
        Distinct configurations not yet executed (possibly fewer than
        ``min_new`` when the path regions are exhausted)
    """
    rng = as_rng(seed)
    new: List[Configuration] = []
    seen = set()
    for path in paths:
        for config in covering_configs(space, rng, fixed=path.condition()):
            if config in seen or cache.known(config):
                continue
            seen.add(config)
            new.append(config)
        if len(new) >= min_new:
            break
    return new


def post_process(trees: Mapping[str, DecisionTree], space: ConfigSpace) -> Dict[str, Interaction]:
    """Canonical interaction of every tree, keyed by location in sorted order."""
    return {loc: canonicalize(from_tree(trees[loc]), space) for loc in sorted(trees)}


class _Engine:
    def __init__(
        self,
        space: ConfigSpace,
        runner: CoverageRunner,
        params: EngineParams,
        truth: Optional[Mapping[str, Interaction]],
    ):
        self.space = space
        self.runner = runner
        self.params = params
        self.truth = dict(truth) if truth is not None else None
        self.rng = Random(params.seed)
        self.state = RunState(space, params, runner.cache)
        self.start_executions = runner.cache.executions
        self.exact: Dict[str, bool] = {}

    # budget

    def remaining(self) -> Optional[int]:
        if self.params.config_budget is None:
            return None
        used = self.runner.cache.executions - self.start_executions
        return max(self.params.config_budget - used, 0)

    def run(self, configs: List[Configuration]) -> int:
        """Execute within the budget; returns the number submitted."""
        remaining = self.remaining()
        if remaining is not None:
            if len(configs) >= remaining:
                self.state.budget_exhausted = True
            configs = configs[:remaining]
        if configs:
            self.runner.run_configs(configs)
        return len(configs)

    # trees

    def rebuild(self, location: str, hits, misses) -> None:
        tree = build_tree(hits, misses, self.space)
        formula = canonicalize(from_tree(tree), self.space)
        self.state.trees[location] = tree
        self.state.formulas[location] = formula
        if self.truth is not None and location in self.truth:
            self.exact[location] = equivalent(formula, self.truth[location], self.space)

    def refresh(self, location: str) -> bool:
        """Rebuild the location's tree if absent or failing; True if rebuilt."""
        hits, misses = self.runner.cache.partition(location)
        tree = self.state.trees.get(location)
        if tree is not None and test_tree(tree, hits, misses):
            return False
        self.rebuild(location, hits, misses)
        return True

    def repair(self) -> List[str]:
        return [loc for loc in self.runner.cache.locations() if self.refresh(loc)]

    # loop

    def iterate(self, explore: bool) -> IterationRecord:
        rebuilt: List[str] = []
        submitted = 0
        processed = set()
        while True:
            pending = [loc for loc in self.runner.cache.locations() if loc not in processed]
            if not pending:
                break
            for location in pending:
                processed.add(location)
                if self.refresh(location):
                    rebuilt.append(location)
                elif not explore:
                    continue
                if self.state.budget_exhausted:
                    continue
                paths = select_paths(self.state.trees[location], explore, self.rng)
                new = gen_new_configs(
                    paths, self.space, self.runner.cache, self.params.min_new_configs, self.rng
                )
                submitted += self.run(new)
        logger.debug(
            f"Iteration {len(self.state.log) + 1} ({'explore' if explore else 'exploit'}): "
            f"{submitted} new configs, rebuilt {rebuilt or 'none'}"
        )
        return self.record(explore, submitted, rebuilt)

    def record(self, explore: bool, submitted: int, rebuilt: List[str]) -> IterationRecord:
        record = IterationRecord(
            iteration=len(self.state.log) + 1,
            mode="explore" if explore else "exploit",
            configs=len(self.runner.cache),
            executions=self.runner.cache.executions - self.start_executions,
            new_configs=submitted,
            rebuilt=sorted(rebuilt),
            fingerprints={
                loc: render_formula(f, self.space) for loc, f in sorted(self.state.formulas.items())
            },
        )
        if self.truth is not None:
            record.exact = sum(self.exact.get(loc, False) for loc in self.truth)
            record.total = len(self.truth)
        self.state.log.append(record)
        return record

    def execute(self) -> RunState:
        state = self.state
        params = self.params
        start = perf_counter()
        backend_start = self.runner.backend_time

        initial = list(params.initial_configs) + one_way_covering(self.space, self.rng)
        logger.info(
            f"Starting engine on {self.runner.backend.describe()} "
            f"({len(initial)} initial configs, seed {params.seed})"
        )
        self.run(list(dict.fromkeys(initial)))

        while state.explore_iters < params.max_explore_iters:
            state.explore_iters += 1
            explore = state.explore_iters > 1
            record = self.iterate(explore)

            if state.budget_exhausted:
                # rebuild trees broken by the last batch without generating more
                late = self.repair()
                record.rebuilt = sorted(set(record.rebuilt) | set(late))
                self.rewrite_last(record)
                logger.warning(f"Execution budget of {params.config_budget} exhausted")
                break

            if record.rebuilt:
                state.explore_iters = 0
            elif state.explore_iters >= params.max_explore_iters:
                late = self.repair()
                if late:
                    logger.debug(f"Final check rebuilt {late}; continuing")
                    record.rebuilt = sorted(late)
                    self.rewrite_last(record)
                    state.explore_iters = 0

        state.wall_time = perf_counter() - start
        state.backend_time = self.runner.backend_time - backend_start
        logger.success(
            f"Engine finished: {len(state.formulas)} locations, {len(self.runner.cache)} configs, "
            f"{state.iterations} iterations"
        )
        return state

    def rewrite_last(self, record: IterationRecord) -> None:
        """Refresh the last log line after late rebuilds."""
        self.state.log.pop()
        self.record(record.mode == "explore", record.new_configs, record.rebuilt)


def run_engine(
    space: ConfigSpace,
    runner: CoverageRunner,
    params: Optional[EngineParams] = None,
    truth: Optional[Mapping[str, Interaction]] = None,
) -> RunState:
    """
    Infer one interaction per covered location.

    Args:
        space: Configuration space
        runner: Runner whose backend matches ``space``
        params: Loop parameters (defaults from settings)
        truth: Known interactions; when given, the log records the number of
            exactly inferred locations after every iteration

    Returns:
        Final RunState with trees, canonical formulas and the iteration log

    Raises:
        RunnerError: Backend failure of a whole batch
    """
    if runner.space != space:
        raise ConfigurationError("runner backend and engine use different spaces")
    return _Engine(space, runner, params or EngineParams(), truth).execute()
