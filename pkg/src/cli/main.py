"""
Command-line entry point.

Exit status: 0 on success, 1 on usage or input errors, 2 when a runner or
backend fails.
"""

import argparse
import sys
from typing import Dict, List, Optional, Sequence

from loguru import logger

from ..analysis import (
    compare,
    enabling_options,
    format_report,
    ground_truth,
    min_covering_configs,
    random_baseline,
    report,
    seed_sweep,
    summarize,
)
from ..analysis.covering import brute_force_min_cover
from ..config import LOG_LEVELS, get_settings
from ..engine import (
    EngineParams,
    load_result,
    make_result,
    result_from_state,
    run_engine,
    write_iteration_log,
    write_result,
    write_timing,
)
from ..errors import GenTreeError, ResultFileError, RunnerError
from ..formula import Interaction, equivalent, render_formula
from ..runner import CoverageRunner, create_backend, parse_runner_spec, rerun_diagnostic
from ..space import ConfigSpace, load_space, parse_config_file


class UsageError(Exception):
    """Bad command line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def configure_logging(level: str) -> None:
    logger.remove()
    logger.add(sys.stderr, level=level.upper())


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = _Parser(
        prog="gentree",
        description="Infer configuration interactions for program locations",
    )
    logopts = _Parser(add_help=False)
    logopts.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        default=settings.log_level,
        help="Log level",
    )

    common = _Parser(add_help=False, parents=[logopts])
    common.add_argument("--space", help="Space file (optional for builtin runners)")
    common.add_argument(
        "--runner",
        required=True,
        help="builtin:NAME, oracle:FILE, spec:FILE or cmd:TEMPLATE",
    )
    common.add_argument("--seed", type=int, default=settings.seed, help="Random seed")
    common.add_argument("--out", help="Result JSON path")
    common.add_argument("--jobs", type=int, default=settings.jobs, help="Parallel executions")

    engine = _Parser(add_help=False)
    engine.add_argument("--max-explore", type=int, default=settings.max_explore_iters)
    engine.add_argument("--min-new", type=int, default=settings.min_new_configs)
    engine.add_argument("--budget", type=int, help="Maximum backend executions")
    engine.add_argument("--initial-configs", help="File of configurations to start from")

    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    run = sub.add_parser("run", parents=[common, engine], help="Run the inference engine")
    run.add_argument("--truth", help="Truth result file; logs exact counts per iteration")
    run.add_argument("--csv", help="Iteration log CSV path")
    run.add_argument("--rerun", type=int, help="Re-execute cached configs K times")

    sub.add_parser("truth", parents=[common], help="Enumerate the space for ground truth")

    cmp = sub.add_parser(
        "compare", parents=[logopts], help="Compare inferred interactions with the truth"
    )
    cmp.add_argument("--inferred", required=True, help="Inferred result file")
    cmp.add_argument("--truth", required=True, help="Truth result file")

    baseline = sub.add_parser("baseline", parents=[common], help="Random-sampling baseline")
    baseline.add_argument("--configs", type=int, required=True, help="Sample size")

    mincov = sub.add_parser(
        "mincov", parents=[logopts], help="Small configuration set covering all interactions"
    )
    mincov.add_argument("--inferred", required=True, help="Result file with interactions")
    mincov.add_argument("--exact", action="store_true", help="Also compute the optimum")
    mincov.add_argument("--enabling", type=float, help="Report enabling options at threshold")

    demo = sub.add_parser(
        "demo", parents=[logopts], help="End-to-end run on the builtin fig2 program"
    )
    demo.add_argument("--seed", type=int, default=settings.seed)
    demo.add_argument("--out", help="Result JSON path")

    sweep = sub.add_parser("sweep", parents=[common, engine], help="Run the engine over seeds")
    sweep.add_argument("--seeds", type=int, default=11, help="Number of consecutive seeds")
    sweep.add_argument("--truth", help="Truth result file")
    sweep.add_argument(
        "--random", action="store_true", help="Pair every seed with a random baseline"
    )
    return parser


def _space_and_runner(args):
    """Space, backend and runner spec from --space and --runner."""
    space: Optional[ConfigSpace] = load_space(args.space) if args.space else None
    spec = parse_runner_spec(args.runner, get_settings().runner_timeout)
    backend = create_backend(spec, space)
    return backend.space, backend, spec


def _params(args, space: ConfigSpace) -> EngineParams:
    initial = ()
    if args.initial_configs:
        initial = tuple(parse_config_file(args.initial_configs, space))
    return EngineParams(
        max_explore_iters=args.max_explore,
        min_new_configs=args.min_new,
        seed=args.seed,
        config_budget=args.budget,
        initial_configs=initial,
    )


def _truth_map(path: Optional[str], space: ConfigSpace) -> Optional[Dict[str, Interaction]]:
    if not path:
        return None
    result = load_result(path)
    if result.config_space() != space:
        raise ResultFileError(f"truth file {path} was computed for a different space")
    return result.interactions(space)


def cmd_run(args) -> int:
    space, backend, spec = _space_and_runner(args)
    runner = CoverageRunner(backend, jobs=args.jobs)
    truth = _truth_map(args.truth, space)

    state = run_engine(space, runner, _params(args, space), truth)
    for location, formula in state.interactions.items():
        print(f"{location}: {render_formula(formula, space)}")
    print()
    print(format_report(report(state, truth)))

    if args.out:
        write_result(result_from_state(state, str(spec)), args.out)
        write_timing(state, args.out)
    if args.csv:
        write_iteration_log(state, args.csv)
    if args.rerun and backend.deterministic:
        logger.info(f"{backend.describe()} is deterministic; skipping rerun diagnostic")
    elif args.rerun:
        unstable = rerun_diagnostic(backend, runner.cache.configs(), args.rerun)
        for config, observed in unstable.items():
            seen = " / ".join(",".join(sorted(c)) or "-" for c in observed)
            print(f"unstable {config}: {seen}")
    return 0


def cmd_truth(args) -> int:
    space, backend, spec = _space_and_runner(args)
    truth = ground_truth(space, CoverageRunner(backend, jobs=args.jobs))
    for location in truth.locations:
        print(f"{location}: {render_formula(truth.interactions[location], space)}")
    print()
    print(format_report(summarize(truth.interactions, space)))
    if args.out:
        params = {"runner": str(spec)}
        write_result(make_result("truth", space, truth.interactions, params=params), args.out)
    return 0


def cmd_compare(args) -> int:
    inferred_file = load_result(args.inferred)
    truth_file = load_result(args.truth)
    space = inferred_file.config_space()
    if truth_file.space_fingerprint != inferred_file.space_fingerprint:
        raise ResultFileError("inferred and truth results come from different spaces")

    inferred = inferred_file.interactions(space)
    truth = truth_file.interactions(space)
    result = compare(inferred, truth, space)
    print(f"exact {result.exact}/{result.total}  delta cov {result.delta_cov}")
    for location in result.mismatches:
        print(
            f"  {location}: inferred {render_formula(inferred[location], space)}"
            f"  truth {render_formula(truth[location], space)}"
        )
    for location in result.missing:
        print(f"  {location}: not inferred")
    for location in result.extra:
        print(f"  {location}: not in truth")
    return 0


def cmd_baseline(args) -> int:
    space, backend, spec = _space_and_runner(args)
    runner = CoverageRunner(backend, jobs=args.jobs)
    inferred = random_baseline(space, runner, args.configs, args.seed)
    for location, formula in inferred.items():
        print(f"{location}: {render_formula(formula, space)}")
    if args.out:
        params = {"runner": str(spec), "configs": args.configs, "seed": args.seed}
        write_result(make_result("baseline", space, inferred, params=params), args.out)
    return 0


def cmd_mincov(args) -> int:
    result = load_result(args.inferred)
    space = result.config_space()
    interactions = result.interactions(space)

    selection = min_covering_configs(interactions, space)
    for config, covered in zip(selection.configs, selection.covers):
        print(f"{config}  # {' '.join(covered)}")
    for location in selection.skipped:
        print(f"# skipped unsatisfiable {location}")

    if args.exact:
        optimum = brute_force_min_cover(interactions, space)
        print(f"# greedy {len(selection)} configs, optimum {len(optimum)}")
    if args.enabling is not None:
        for setting, share in enabling_options(interactions, space, args.enabling):
            print(f"# enabling {setting} ({share:.0%})")
    return 0


def cmd_demo(args) -> int:
    spec = parse_runner_spec("builtin:fig2")
    backend = create_backend(spec)
    space = backend.space
    truth = ground_truth(space, CoverageRunner(backend))

    params = EngineParams(seed=args.seed)
    state = run_engine(space, CoverageRunner(backend), params, truth.interactions)
    for location, formula in state.interactions.items():
        expected = truth.interactions.get(location)
        same = expected is not None and equivalent(formula, expected, space)
        iteration, configs = state.found_at(location)
        print(
            f"{location}: {render_formula(formula, space)}"
            f"  [{'exact' if same else 'differs'}, iteration {iteration}, {configs} configs]"
        )
    print()
    print(format_report(report(state, truth)))
    if args.out:
        write_result(result_from_state(state, str(spec)), args.out)
        write_timing(state, args.out)
    return 0


def cmd_sweep(args) -> int:
    space, backend, spec = _space_and_runner(args)
    truth = _truth_map(args.truth, space)
    params = _params(args, space)
    seeds = list(range(args.seed, args.seed + args.seeds))

    def fresh() -> CoverageRunner:
        return CoverageRunner(create_backend(spec, space), jobs=args.jobs)

    summary = seed_sweep(space, fresh, params, seeds, truth)
    for run in summary.runs:
        exact = "" if run.exact is None else f"  exact {run.exact}/{run.total}"
        print(f"seed {run.seed}: {run.executions} executions, {run.locations} locations{exact}")
    for metric, value in summary.median.items():
        print(f"median {metric}: {value:g} (siqr {summary.siqr[metric]:g})")

    if args.random and truth is not None:
        wins: List[int] = []
        for run in summary.runs:
            inferred = random_baseline(space, fresh(), max(run.executions, 1), run.seed)
            baseline_exact = compare(inferred, truth, space).exact
            wins.append(int((run.exact or 0) >= baseline_exact))
            print(f"seed {run.seed}: engine {run.exact}  random {baseline_exact}")
        print(f"engine >= random in {sum(wins)}/{len(wins)} seeds")
    return 0


COMMANDS = {
    "run": cmd_run,
    "truth": cmd_truth,
    "compare": cmd_compare,
    "baseline": cmd_baseline,
    "mincov": cmd_mincov,
    "demo": cmd_demo,
    "sweep": cmd_sweep,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand.

    Args:
        argv: Arguments without the program name (default: ``sys.argv[1:]``)

    Returns:
        Process exit status
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print(f"gentree: error: {e}", file=sys.stderr)
        return 1
    except SystemExit as e:
        return int(e.code or 0)

    try:
        configure_logging(args.log_level)
        return COMMANDS[args.command](args)
    except RunnerError as e:
        logger.error(f"Runner failed: {e}")
        return 2
    except (GenTreeError, FileNotFoundError, ValueError) as e:
        logger.error(str(e))
        return 1


if __name__ == "__main__":
    sys.exit(main())
