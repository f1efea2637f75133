#!/usr/bin/env python3
"""
Full-size acceptance checks.

Runs every acceptance check at full size and prints one
pass/fail line per check. The pytest suite covers the same ground at
reduced sizes; this script is for release checks and takes several minutes.

Usage:
    python scripts/check_acceptance.py [--only 1,3,9] [--seed N]
"""

import argparse
import json
import random
import statistics
import sys
import time
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from loguru import logger  # noqa: E402

from src.analysis import (  # noqa: E402
    brute_force_min_cover,
    compare,
    ground_truth,
    min_covering_configs,
    random_baseline,
)
from src.config import get_settings  # noqa: E402
from src.dtree import DecisionTree, Internal, Label, Leaf, build_tree, rank_paths  # noqa: E402
from src.dtree import test_tree as tree_passes  # noqa: E402
from src.engine import EngineParams, run_engine  # noqa: E402
from src.formula import (  # noqa: E402
    Atom,
    canonicalize,
    conjoin,
    disjoin,
    equivalent,
    from_tree,
    parse_formula,
    space_table,
)
from src.runner import (  # noqa: E402
    C50LIMIT_SPACE,
    FIG2_ANNOTATIONS,
    FIG2_SPACE,
    BuiltinBackend,
    CoverageRunner,
    SpecBackend,
    eval_builtin,
)
from src.space import enumerate_all, make_space, one_way_covering, random_configs  # noqa: E402

SEEDS = range(11)


def random_space(rng, max_options, max_size=None, max_domain=4):
    while True:
        domains = {
            f"o{i}": range(rng.randint(2, max_domain))
            for i in range(rng.randint(1, max_options))
        }
        space = make_space(domains)
        if max_size is None or space.size <= max_size:
            return space


def random_formula(rng, space, depth=2, max_width=3):
    if depth == 0 or rng.random() < 0.35:
        option = rng.choice(space.options)
        k = rng.randint(1, option.size - 1)
        return Atom(option.name, frozenset(rng.sample(option.domain, k)))
    children = [random_formula(rng, space, depth - 1) for _ in range(rng.randint(2, max_width))]
    return conjoin(children) if rng.random() < 0.6 else disjoin(children)


def random_program(rng):
    """Random spec program: 2-5 locations over a space of at most 8 options / 4096 configs."""
    space = random_space(rng, 8, max_size=4096)
    spec = {f"L{i}": random_formula(rng, space) for i in range(rng.randint(2, 5))}
    return space, spec


def fig2_truth():
    return {loc: parse_formula(text, FIG2_SPACE) for loc, text in FIG2_ANNOTATIONS.items()}


def check_fig2_end_to_end(seed):
    """Exact fig2 interactions in >= 9 of 11 seeds, median <= 800 executions."""
    truth = fig2_truth()
    exact_runs, executions, slowest = 0, [], 0.0
    for s in SEEDS:
        start = time.perf_counter()
        runner = CoverageRunner(BuiltinBackend("fig2"))
        state = run_engine(FIG2_SPACE, runner, EngineParams(seed=seed + s))
        slowest = max(slowest, time.perf_counter() - start)
        result = compare(state.interactions, truth, FIG2_SPACE)
        exact_runs += result.perfect
        executions.append(runner.cache.executions)
        logger.debug(f"  seed {seed + s}: exact {result.exact}/9, {executions[-1]} executions")

    median = statistics.median(executions)
    logger.info(f"  {exact_runs}/11 exact runs, median {median} executions, slowest {slowest:.1f}s")
    return exact_runs >= 9 and median <= 800 and slowest < 30


def check_c50limit(seed):
    """Exact tree from all 20 configs and from some 14-config subset."""
    expected = parse_formula("s=1 & t=1 & z in {1,2,3}", C50LIMIT_SPACE)
    configs = list(enumerate_all(C50LIMIT_SPACE))

    def exact_from(sample):
        hits = [c for c in sample if eval_builtin("c50limit", c)]
        misses = [c for c in sample if not eval_builtin("c50limit", c)]
        tree = build_tree(hits, misses, C50LIMIT_SPACE)
        return equivalent(from_tree(tree), expected, C50LIMIT_SPACE)

    if not exact_from(configs):
        return False
    rng = random.Random(seed)
    for attempt in range(20000):
        if exact_from(rng.sample(configs, 14)):
            logger.info(f"  14-config subset found after {attempt + 1} samples")
            return True
    return False


def check_training_accuracy(seed):
    """Trees classify their training data perfectly (1000 instances)."""
    rng = random.Random(seed)
    for _ in range(1000):
        space = random_space(rng, 6)
        f = random_formula(rng, space)
        sample = random_configs(space, rng.randint(1, min(space.size, 60)), rng)
        hits = [c for c in sample if f.evaluate(space.assignment(c))]
        misses = [c for c in sample if not f.evaluate(space.assignment(c))]
        if not tree_passes(build_tree(hits, misses, space), hits, misses):
            return False
    return True


def check_oracle_equivalence(seed):
    """Ground truth recovers the generating formulas (200 programs)."""
    rng = random.Random(seed)
    for _ in range(200):
        space, spec = random_program(rng)
        truth = ground_truth(space, CoverageRunner(SpecBackend(spec, space)))
        for loc, f in spec.items():
            if not space_table(f, space).any():
                continue
            if not equivalent(truth.interactions[loc], f, space):
                logger.error(f"  {loc}: truth differs from its generating formula")
                return False
    return True


def check_engine_vs_truth(seed):
    """>= 95 % exact (program, location) pairs, median < 60 % of the space."""
    rng = random.Random(seed)
    exact = total = 0
    fractions = []
    for i in range(200):
        space, spec = random_program(rng)
        truth = ground_truth(space, CoverageRunner(SpecBackend(spec, space)))
        runner = CoverageRunner(SpecBackend(spec, space))
        state = run_engine(space, runner, EngineParams(seed=seed + i))
        result = compare(state.interactions, truth, space)
        exact += result.exact
        total += result.total
        fractions.append(runner.cache.executions / space.size)

    share = exact / total if total else 1.0
    median = statistics.median(fractions)
    logger.info(f"  {exact}/{total} exact ({share:.1%}), median {median:.1%} of the space")
    return share >= 0.95 and median < 0.60


def check_dominance(seed):
    """Engine >= random baseline at equal budget in >= 9 of 11 seeds."""
    truth = fig2_truth()
    wins = 0
    for s in SEEDS:
        runner = CoverageRunner(BuiltinBackend("fig2"))
        state = run_engine(FIG2_SPACE, runner, EngineParams(seed=seed + s))
        engine_exact = compare(state.interactions, truth, FIG2_SPACE).exact
        baseline = random_baseline(
            FIG2_SPACE, CoverageRunner(BuiltinBackend("fig2")), runner.cache.executions, seed + s
        )
        wins += engine_exact >= compare(baseline, truth, FIG2_SPACE).exact
    logger.info(f"  engine >= random in {wins}/11 seeds")
    return wins >= 9


def check_covering_arrays(seed):
    """1-way covering arrays over 10,000 random spaces."""
    rng = random.Random(seed)
    for _ in range(10000):
        space = random_space(rng, 8, max_domain=7)
        configs = one_way_covering(space, rng)
        if len(configs) != max(space.shape):
            return False
        for i, option in enumerate(space.options):
            if {c.values[i] for c in configs} != set(option.domain):
                return False
    return True


def check_min_cover(seed):
    """Greedy covering configurations within +2 of the optimum on fig2."""
    truth = ground_truth(FIG2_SPACE, CoverageRunner(BuiltinBackend("fig2")))
    optimum = brute_force_min_cover(truth.interactions, FIG2_SPACE)
    greedy = min_covering_configs(truth.interactions, FIG2_SPACE)
    logger.info(f"  greedy {len(greedy)}, optimum {len(optimum)}")
    covered = set().union(*greedy.covers)
    return covered == set(truth.interactions) and len(greedy) <= len(optimum) + 2


def check_path_ranking(seed):
    """Five-path tree ranks its paths 2, 3, 4, 0, 1."""
    v_node = Internal("v", (("0", Leaf(Label.HIT, 1)), ("1", Leaf(Label.HIT, 1))))
    u_node = Internal("u", (("0", v_node), ("1", Leaf(Label.MISS, 2))))
    root = Internal("e", (("0", Leaf(Label.MISS, 2)), ("1", Leaf(Label.MISS, 2)), ("2", u_node)))
    tree = DecisionTree(root, FIG2_SPACE)
    for s in range(100):
        ids = [p.path_id for p in rank_paths(tree, seed + s)]
        if set(ids[:2]) != {2, 3} or ids[2:] != [4, 0, 1] and ids[2:] != [4, 1, 0]:
            return False
    return [p.path_id for p in rank_paths(tree)] == [2, 3, 4, 0, 1]


def check_canonicalization(seed):
    """Canonicalize preserves truth tables (10,000 formulas)."""
    rng = random.Random(seed)
    for _ in range(10000):
        space = random_space(rng, 6)
        f = random_formula(rng, space, depth=3)
        if not equivalent(f, canonicalize(f, space), space):
            return False
    return True


CHECKS = [
    ("fig2 end-to-end", check_fig2_end_to_end),
    ("c50limit exactness", check_c50limit),
    ("training accuracy", check_training_accuracy),
    ("oracle equivalence", check_oracle_equivalence),
    ("engine vs truth", check_engine_vs_truth),
    ("dominance over random", check_dominance),
    ("covering arrays", check_covering_arrays),
    ("minimal covering configurations", check_min_cover),
    ("path ranking", check_path_ranking),
    ("canonicalization soundness", check_canonicalization),
]


def main():
    """Run the selected checks."""
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    parser.add_argument("--only", help="Comma-separated check numbers")
    parser.add_argument("--seed", type=int, default=get_settings().seed)
    args = parser.parse_args()

    logger.remove()
    logger.add(sys.stderr, level=get_settings().log_level)

    selected = {int(n) for n in args.only.split(",")} if args.only else None
    outcome = {}
    for number, (name, check) in enumerate(CHECKS, start=1):
        if selected is not None and number not in selected:
            continue
        logger.info(f"[{number}] {name}...")
        start = time.perf_counter()
        try:
            passed = bool(check(args.seed))
        except Exception as e:
            logger.error(f"❌ [{number}] {name} raised: {e}")
            passed = False
        elapsed = time.perf_counter() - start
        if passed:
            logger.success(f"✅ [{number}] {name} ({elapsed:.1f}s)")
        else:
            logger.error(f"❌ [{number}] {name} ({elapsed:.1f}s)")
        outcome[number] = {"name": name, "passed": passed, "seconds": round(elapsed, 1)}

    path = get_settings().get_result_path("acceptance.json")
    path.write_text(json.dumps(outcome, indent=2) + "\n", encoding="utf-8")

    failed = [n for n, o in outcome.items() if not o["passed"]]
    logger.info("=" * 50)
    logger.info(f"Passed: {len(outcome) - len(failed)}/{len(outcome)} (written to {path})")
    return not failed


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
