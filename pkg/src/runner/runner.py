"""
Batch execution of configurations through a backend and the coverage cache.
"""

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from time import perf_counter
from typing import Dict, FrozenSet, Iterable, List, Literal, Optional, Tuple

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from ..config import get_settings
from ..errors import BackendError, BatchFailedError, ConfigurationError, RunnerError
from ..space import ConfigSpace, Configuration
from .backends import BuiltinBackend, CommandBackend, CoverageBackend, OracleBackend, SpecBackend
from .cache import CoverageCache

RunnerKind = Literal["builtin", "oracle", "cmd", "spec"]


class RunnerSpec(BaseModel):
    """Backend selector: ``builtin:NAME``, ``oracle:FILE``, ``spec:FILE`` or ``cmd:TEMPLATE``."""

    model_config = ConfigDict(frozen=True)

    kind: RunnerKind
    target: str = Field(min_length=1)
    timeout: Optional[float] = Field(default=None, gt=0)

    @classmethod
    def parse(cls, text: str, timeout: Optional[float] = None) -> "RunnerSpec":
        kind, sep, target = text.partition(":")
        if not sep or kind not in ("builtin", "oracle", "cmd", "spec"):
            raise ConfigurationError(
                f"runner must be builtin:NAME, oracle:FILE, spec:FILE or cmd:TEMPLATE, got {text!r}"
            )
        if not target.strip():
            raise ConfigurationError(f"runner {kind!r} needs a target")
        return cls(kind=kind, target=target.strip(), timeout=timeout)

    def __str__(self) -> str:
        return f"{self.kind}:{self.target}"


def parse_runner_spec(text: str, timeout: Optional[float] = None) -> RunnerSpec:
    return RunnerSpec.parse(text, timeout)


def create_backend(spec: RunnerSpec, space: Optional[ConfigSpace] = None) -> CoverageBackend:
    """
    Create a backend from a runner spec.

    Built-in programs carry their own space; every other kind needs one.

    Args:
        spec: Runner spec
        space: Active configuration space

    Returns:
        Backend ready to execute configurations

    Raises:
        RunnerError: Runner file missing
        ConfigurationError: No space for a file/command backend, or a space
            that does not match a built-in program
    """
    if spec.kind in ("oracle", "spec") and not Path(spec.target).exists():
        raise RunnerError(f"{spec.kind} file not found: {spec.target}")

    if spec.kind == "builtin":
        backend = BuiltinBackend(spec.target)
        if space is not None and space != backend.space:
            raise ConfigurationError(
                f"space does not match builtin program {spec.target!r}"
            )
        return backend

    if space is None:
        raise ConfigurationError(f"runner {spec.kind!r} needs a space file (--space)")

    if spec.kind == "oracle":
        return OracleBackend.from_file(spec.target, space)
    if spec.kind == "spec":
        return SpecBackend.from_file(spec.target, space)

    timeout = spec.timeout if spec.timeout is not None else get_settings().runner_timeout
    return CommandBackend(spec.target, space, timeout=timeout)


class CoverageRunner:
    """
    Runs configurations through a backend, caching every result.

    No configuration is executed twice, including ones that failed. Results are
    inserted into the cache in input order whatever the completion order of
    parallel executions.
    """

    def __init__(
        self,
        backend: CoverageBackend,
        cache: Optional[CoverageCache] = None,
        jobs: Optional[int] = None,
    ):
        self.backend = backend
        self.cache = cache if cache is not None else CoverageCache()
        self.jobs = jobs if jobs is not None else get_settings().jobs
        # seconds spent inside the backend
        self.backend_time = 0.0

    @property
    def space(self) -> ConfigSpace:
        return self.backend.space

    def _execute(
        self, config: Configuration
    ) -> Tuple[Optional[FrozenSet[str]], Optional[str], float]:
        start = perf_counter()
        try:
            return self.backend.execute(config), None, perf_counter() - start
        except BackendError as e:
            return None, str(e), perf_counter() - start

    def run_configs(self, configs: Iterable[Configuration]) -> Dict[Configuration, FrozenSet[str]]:
        """
        Coverage of each configuration, executing only unknown ones.

        Args:
            configs: Configurations over the backend's space

        Returns:
            Map from each input configuration to its coverage; configurations
            whose execution failed are absent

        Raises:
            ConfigurationError: A configuration does not fit the space
            BatchFailedError: Every newly executed configuration failed
        """
        ordered = list(dict.fromkeys(configs))
        for config in ordered:
            self.space.validate_config(config)

        pending = [c for c in ordered if not self.cache.known(c)]
        if pending:
            cached = len(ordered) - len(pending)
            logger.debug(f"Executing {len(pending)} configurations ({cached} cached)")
            if self.jobs > 1 and len(pending) > 1:
                with ThreadPoolExecutor(max_workers=min(self.jobs, len(pending))) as pool:
                    outcomes = list(pool.map(self._execute, pending))
            else:
                outcomes = [self._execute(c) for c in pending]

            self.cache.count_executions(len(pending))
            failed = 0
            for config, (coverage, error, elapsed) in zip(pending, outcomes):
                self.backend_time += elapsed
                if coverage is None:
                    failed += 1
                    logger.warning(f"Configuration failed: {error}")
                    self.cache.record_failure(config, error or "unknown error")
                else:
                    self.cache.insert(config, coverage)

            if failed == len(pending):
                logger.error(f"All {failed} configurations of the batch failed")
                raise BatchFailedError(
                    f"all {failed} configurations failed, last error: {outcomes[-1][1]}"
                )

        result = {}
        for config in ordered:
            coverage = self.cache.get(config)
            if coverage is not None:
                result[config] = coverage
        return result


def rerun_diagnostic(
    backend: CoverageBackend,
    configs: Iterable[Configuration],
    runs: int,
) -> Dict[Configuration, List[FrozenSet[str]]]:
    """
    Execute each configuration ``runs`` times, bypassing any cache.

    Args:
        backend: Backend to probe
        configs: Configurations to repeat
        runs: Executions per configuration (at least 2 to be useful)

    Returns:
        Configurations whose coverage differed between runs, with every
        observed coverage set in run order
    """
    if runs < 1:
        raise ValueError("runs must be at least 1")

    unstable: Dict[Configuration, List[FrozenSet[str]]] = {}
    for config in dict.fromkeys(configs):
        observed = []
        for _ in range(runs):
            try:
                observed.append(backend.execute(config))
            except BackendError as e:
                logger.warning(f"Rerun of {config} failed: {e}")
        if len(set(observed)) > 1:
            unstable[config] = observed

    logger.info(f"Rerun diagnostic: {len(unstable)} unstable configurations")
    return unstable
