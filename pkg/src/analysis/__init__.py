"""Ground truth, accuracy, baselines, covering selections and reports."""

from .truth import Comparison, GroundTruth, compare, ground_truth
from .baseline import (
    SweepRun,
    SweepSummary,
    median_siqr,
    random_baseline,
    random_series,
    seed_sweep,
)
from .covering import CoveringSelection, brute_force_min_cover, min_covering_configs
from .report import (
    RunReport,
    enabling_options,
    format_report,
    report,
    summarize,
    write_convergence_csv,
)

__all__ = [
    "Comparison",
    "GroundTruth",
    "compare",
    "ground_truth",
    "SweepRun",
    "SweepSummary",
    "median_siqr",
    "random_baseline",
    "random_series",
    "seed_sweep",
    "CoveringSelection",
    "brute_force_min_cover",
    "min_covering_configs",
    "RunReport",
    "enabling_options",
    "format_report",
    "report",
    "summarize",
    "write_convergence_csv",
]
