"""Iterative refinement engine and its result files."""

from .params import EngineParams, IterationRecord, RunState
from .loop import gen_new_configs, post_process, run_engine, select_paths
from .results import (
    LocationResult,
    ResultFile,
    Totals,
    load_result,
    make_result,
    result_from_state,
    timing_path,
    write_iteration_log,
    write_result,
    write_timing,
)

__all__ = [
    "EngineParams",
    "IterationRecord",
    "RunState",
    "gen_new_configs",
    "post_process",
    "run_engine",
    "select_paths",
    "LocationResult",
    "ResultFile",
    "Totals",
    "load_result",
    "make_result",
    "result_from_state",
    "timing_path",
    "write_iteration_log",
    "write_result",
    "write_timing",
]
