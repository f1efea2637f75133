"""Engine parameters and per-run state."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from ..config import get_settings
from ..dtree import DecisionTree
from ..formula import Interaction
from ..runner import CoverageCache
from ..space import ConfigSpace, Configuration


class EngineParams(BaseModel):
    """
    Knobs of the refinement loop.

    Unset fields take their defaults from :class:`~src.config.Settings`.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    max_explore_iters: int = Field(default_factory=lambda: get_settings().max_explore_iters, ge=1)
    min_new_configs: int = Field(default_factory=lambda: get_settings().min_new_configs, ge=1)
    seed: int = Field(default_factory=lambda: get_settings().seed)
    config_budget: Optional[int] = Field(default=None, ge=1)
    initial_configs: Tuple[Configuration, ...] = ()

    def to_json(self) -> Dict[str, Any]:
        return {
            "max_explore_iters": self.max_explore_iters,
            "min_new_configs": self.min_new_configs,
            "seed": self.seed,
            "config_budget": self.config_budget,
            "initial_configs": [str(c) for c in self.initial_configs],
        }


@dataclass
class IterationRecord:
    """One line of the iteration log."""

    iteration: int
    mode: str
    configs: int
    executions: int
    new_configs: int
    rebuilt: List[str]
    # location -> rendered canonical formula after this iteration
    fingerprints: Dict[str, str]
    exact: Optional[int] = None
    total: Optional[int] = None


@dataclass
class RunState:
    space: ConfigSpace
    params: EngineParams
    cache: CoverageCache
    trees: Dict[str, DecisionTree] = field(default_factory=dict)
    formulas: Dict[str, Interaction] = field(default_factory=dict)
    log: List[IterationRecord] = field(default_factory=list)
    explore_iters: int = 0
    budget_exhausted: bool = False
    wall_time: float = 0.0
    backend_time: float = 0.0

    @property
    def iterations(self) -> int:
        return len(self.log)

    @property
    def interactions(self) -> Dict[str, Interaction]:
        """Final canonical interaction per location, sorted by location."""
        return {loc: self.formulas[loc] for loc in sorted(self.formulas)}

    @property
    def search_time(self) -> float:
        return max(self.wall_time - self.backend_time, 0.0)

    def found_at(self, location: str) -> Tuple[Optional[int], Optional[int]]:
        """
        Iteration and cached-config count from which the location's formula
        stayed unchanged to the end of the run.
        """
        final = None
        found: Optional[IterationRecord] = None
        for record in reversed(self.log):
            current = record.fingerprints.get(location)
            if final is None:
                final = current
            if current is None or current != final:
                break
            found = record
        if found is None:
            return None, None
        return found.iteration, found.configs
