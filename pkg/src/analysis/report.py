"""
Run reports: interaction shape statistics, accuracy and convergence.
"""

import csv
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field

from ..engine import RunState
from ..formula import (
    FALSE,
    TRUE,
    Atom,
    FormClass,
    Interaction,
    classify_form,
    conjoin,
    length,
    render_formula,
    satisfiable,
)
from ..space import ConfigSpace, Setting
from .truth import GroundTruth, compare


def _form_counts(formulas: List[Interaction]) -> Dict[str, int]:
    counts = {form.value: 0 for form in FormClass}
    for f in formulas:
        counts[classify_form(f).value] += 1
    return counts


class RunReport(BaseModel):
    """Summary of one set of inferred interactions."""

    configs: int = 0
    executions: int = 0
    locations: int = 0
    time: float = 0.0
    forms: Dict[str, int] = Field(default_factory=lambda: {f.value: 0 for f in FormClass})
    distinct: int = 0
    distinct_forms: Dict[str, int] = Field(default_factory=lambda: {f.value: 0 for f in FormClass})
    max_length: int = 0
    median_length: float = 0.0
    exact: Optional[int] = None
    total: Optional[int] = None
    delta_cov: Optional[int] = None
    # (executions, exact) after every iteration
    convergence: List[Tuple[int, int]] = Field(default_factory=list)


def summarize(
    interactions: Mapping[str, Interaction],
    space: ConfigSpace,
    truth: Optional[Union[GroundTruth, Mapping[str, Interaction]]] = None,
) -> RunReport:
    """Form, length and (with truth) accuracy figures of a location map."""
    formulas = list(interactions.values())
    lengths = [length(f) for f in formulas]

    distinct: Dict[str, Interaction] = {}
    for f in formulas:
        distinct.setdefault(render_formula(f, space), f)

    summary = RunReport(
        locations=len(formulas),
        forms=_form_counts(formulas),
        distinct=len(distinct),
        distinct_forms=_form_counts(list(distinct.values())),
        max_length=max(lengths, default=0),
        median_length=float(np.median(lengths)) if lengths else 0.0,
    )
    if truth is not None:
        result = compare(interactions, truth, space)
        summary.exact = result.exact
        summary.total = result.total
        summary.delta_cov = result.delta_cov
    return summary


def report(
    state: RunState,
    truth: Optional[Union[GroundTruth, Mapping[str, Interaction]]] = None,
) -> RunReport:
    """
    Aggregate an engine run.

    Args:
        state: Finished engine state
        truth: Known interactions, for exact counts

    Returns:
        RunReport; the convergence series is present when the run logged
        exact counts
    """
    summary = summarize(state.interactions, state.space, truth)
    summary.configs = len(state.cache)
    summary.executions = state.log[-1].executions if state.log else 0
    summary.time = round(state.wall_time, 3)
    summary.convergence = [(r.executions, r.exact) for r in state.log if r.exact is not None]
    return summary


COLUMNS = [
    ("configs", "configs"),
    ("cov", "locations"),
    ("time", "time"),
    ("single", "single"),
    ("conj", "conj"),
    ("disj", "disj"),
    ("mix", "mixed"),
    ("max len", "max_length"),
    ("median len", "median_length"),
]


def format_report(summary: RunReport) -> str:
    """Aligned two-line text table."""
    values = {
        "configs": summary.configs,
        "locations": summary.locations,
        "time": f"{summary.time:.2f}",
        "max_length": summary.max_length,
        "median_length": f"{summary.median_length:g}",
        **summary.forms,
    }
    header = [title for title, _ in COLUMNS]
    row = [str(values[key]) for _, key in COLUMNS]
    if summary.exact is not None:
        header += ["exact", "delta cov"]
        row += [f"{summary.exact}/{summary.total}", str(summary.delta_cov)]

    widths = [max(len(h), len(v)) for h, v in zip(header, row)]
    lines = [
        "  ".join(h.rjust(w) for h, w in zip(header, widths)),
        "  ".join(v.rjust(w) for v, w in zip(row, widths)),
    ]
    return "\n".join(lines)


def write_convergence_csv(summary: RunReport, path: Path | str) -> Path:
    """``configs,exact,total`` per iteration."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["configs", "exact", "total"])
        for executions, exact in summary.convergence:
            writer.writerow([executions, exact, summary.total])
    logger.debug(f"Wrote convergence series to {path}")
    return path


def enabling_options(
    interactions: Mapping[str, Interaction],
    space: ConfigSpace,
    threshold: float = 0.5,
) -> List[Tuple[Setting, float]]:
    """
    Settings required by a large share of the non-trivial interactions.

    A setting ``o=v`` is required by an interaction when the interaction
    together with ``o != v`` is unsatisfiable.

    Args:
        interactions: Location -> interaction
        space: Configuration space
        threshold: Minimum share of non-trivial interactions

    Returns:
        ``(setting, share)`` pairs, highest share first, then space order
    """
    nontrivial = [f for f in interactions.values() if f not in (TRUE, FALSE)]
    if not nontrivial:
        return []

    counts: Dict[Tuple[int, int], int] = {}
    for f in nontrivial:
        for name in f.options():
            option = space.option(name)
            for j, value in enumerate(option.domain):
                negated = Atom(name, frozenset(v for v in option.domain if v != value))
                if not satisfiable(conjoin([f, negated]), space):
                    key = (space.index(name), j)
                    counts[key] = counts.get(key, 0) + 1

    ranked = []
    for (i, j), count in counts.items():
        share = count / len(nontrivial)
        if share >= threshold:
            option = space.options[i]
            ranked.append((-share, i, j, Setting(option.name, option.domain[j]), share))
    ranked.sort(key=lambda item: item[:3])
    return [(setting, share) for *_, setting, share in ranked]
