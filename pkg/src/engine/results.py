"""
Result files.

A result document holds the space, its fingerprint, the parameters and one
formula (optionally with tree dump and convergence point) per location. It is
byte-identical for identical inputs; timings go to a separate sidecar file.
"""

import csv
import json
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from loguru import logger
from pydantic import BaseModel, Field, ValidationError

from ..dtree import DecisionTree
from ..errors import FormulaError, ResultFileError, SpaceError
from ..formula import Interaction, parse_formula, render_formula
from ..space import ConfigSpace, parse_space, render_space
from .params import RunState


class LocationResult(BaseModel):
    formula: str
    tree: Optional[str] = None
    iteration_found: Optional[int] = None
    configs_at_found: Optional[int] = None


class Totals(BaseModel):
    configs: int = 0
    executions: int = 0
    iterations: int = 0
    budget_exhausted: bool = False


class ResultFile(BaseModel):
    """Serialized outcome of a run, truth, or baseline computation."""

    kind: str = "run"
    space: str
    space_fingerprint: str
    params: Dict[str, Any] = Field(default_factory=dict)
    locations: Dict[str, LocationResult] = Field(default_factory=dict)
    totals: Totals = Field(default_factory=Totals)

    def config_space(self) -> ConfigSpace:
        """
        Rebuild the space and check it against the stored fingerprint.

        Raises:
            ResultFileError: Unparseable space or fingerprint mismatch
        """
        try:
            space = parse_space(self.space)
        except SpaceError as e:
            raise ResultFileError(f"embedded space is invalid: {e}") from e
        if space.fingerprint != self.space_fingerprint:
            raise ResultFileError("space fingerprint does not match the embedded space")
        return space

    def interactions(self, space: Optional[ConfigSpace] = None) -> Dict[str, Interaction]:
        space = space or self.config_space()
        parsed = {}
        for location, entry in self.locations.items():
            try:
                parsed[location] = parse_formula(entry.formula, space)
            except FormulaError as e:
                raise ResultFileError(f"location {location}: {e}") from e
        return parsed


def make_result(
    kind: str,
    space: ConfigSpace,
    interactions: Mapping[str, Interaction],
    trees: Optional[Mapping[str, DecisionTree]] = None,
    params: Optional[Dict[str, Any]] = None,
    totals: Optional[Totals] = None,
    found: Optional[Mapping[str, tuple]] = None,
) -> ResultFile:
    locations = {}
    for location in sorted(interactions):
        entry = LocationResult(formula=render_formula(interactions[location], space))
        if trees is not None and location in trees:
            entry.tree = trees[location].dump()
        if found is not None and location in found:
            entry.iteration_found, entry.configs_at_found = found[location]
        locations[location] = entry
    return ResultFile(
        kind=kind,
        space=render_space(space),
        space_fingerprint=space.fingerprint,
        params=params or {},
        locations=locations,
        totals=totals or Totals(),
    )


def result_from_state(state: RunState, runner: str = "") -> ResultFile:
    """Result document of an engine run."""
    params = state.params.to_json()
    if runner:
        params["runner"] = runner
    totals = Totals(
        configs=len(state.cache),
        executions=state.log[-1].executions if state.log else state.cache.executions,
        iterations=state.iterations,
        budget_exhausted=state.budget_exhausted,
    )
    found = {loc: state.found_at(loc) for loc in state.formulas}
    return make_result("run", state.space, state.interactions, state.trees, params, totals, found)


def write_result(result: ResultFile, path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(result.model_dump(mode="json"), indent=2, sort_keys=True)
    path.write_text(text + "\n", encoding="utf-8")
    logger.info(f"Wrote {len(result.locations)} interactions to {path}")
    return path


def load_result(path: Path | str) -> ResultFile:
    """
    Read a result document.

    Raises:
        ResultFileError: Missing, unreadable or malformed file
    """
    path = Path(path)
    if not path.exists():
        raise ResultFileError(f"result file not found: {path}")
    try:
        return ResultFile.model_validate(json.loads(path.read_text(encoding="utf-8")))
    except json.JSONDecodeError as e:
        raise ResultFileError(f"{path}: invalid JSON: {e}") from e
    except ValidationError as e:
        raise ResultFileError(f"{path}: not a result file: {e.error_count()} problems") from e


def timing_path(path: Path | str) -> Path:
    return Path(path).with_suffix(".timing.json")


def write_timing(state: RunState, path: Path | str) -> Path:
    """Wall-clock, backend and search time next to the result file."""
    target = timing_path(path)
    target.write_text(
        json.dumps(
            {
                "wall_time": round(state.wall_time, 6),
                "backend_time": round(state.backend_time, 6),
                "search_time": round(state.search_time, 6),
            },
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )
    return target


LOG_FIELDS = [
    "iteration",
    "mode",
    "configs",
    "executions",
    "new_configs",
    "rebuilt",
    "exact",
    "total",
]


def write_iteration_log(state: RunState, path: Path | str) -> Path:
    """CSV with one row per iteration; ``rebuilt`` locations are ``;``-joined."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=LOG_FIELDS)
        writer.writeheader()
        for record in state.log:
            writer.writerow(
                {
                    "iteration": record.iteration,
                    "mode": record.mode,
                    "configs": record.configs,
                    "executions": record.executions,
                    "new_configs": record.new_configs,
                    "rebuilt": ";".join(record.rebuilt),
                    "exact": "" if record.exact is None else record.exact,
                    "total": "" if record.total is None else record.total,
                }
            )
    logger.debug(f"Wrote iteration log to {path}")
    return path
