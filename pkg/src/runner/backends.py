"""
Coverage backends.

A backend executes one configuration and returns the set of locations it
covers. Four kinds exist: built-in programs, spec files (``location: formula``
per line), oracle databases (``v1,...,vn -> loc1;loc2``) and external commands
that print ``COV <location>`` lines.
"""

import re
import shlex
import subprocess
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Dict, FrozenSet, List, Mapping, Optional

from loguru import logger

from ..errors import BackendError, ConfigurationError, FormulaError, OracleMissError, RunnerError
from ..formula import Interaction, parse_formula, validate_formula
from ..space import ConfigSpace, Configuration
from .builtins import get_builtin

COV_LINE = re.compile(r"^COV\s+(\S+)\s*$")
COV_PREFIX = re.compile(r"^COV(\s|$)")
PLACEHOLDER = re.compile(r"\{([A-Za-z_][A-Za-z0-9_]*)\}")


class CoverageBackend(ABC):
    """Executes single configurations over a fixed space."""

    #: same configuration always yields the same coverage
    deterministic = True

    def __init__(self, space: ConfigSpace):
        self.space = space

    @abstractmethod
    def execute(self, config: Configuration) -> FrozenSet[str]:
        """
        Coverage of one configuration.

        Raises:
            BackendError: The configuration could not be executed
        """

    def describe(self) -> str:
        return type(self).__name__


class BuiltinBackend(CoverageBackend):
    def __init__(self, name: str):
        self.builtin = get_builtin(name)
        super().__init__(self.builtin.space)

    def execute(self, config: Configuration) -> FrozenSet[str]:
        return self.builtin.program(self.space.assignment(config))

    def describe(self) -> str:
        return f"builtin:{self.builtin.name}"


def eval_spec(
    spec: Mapping[str, Interaction],
    config: Configuration,
    space: ConfigSpace,
) -> FrozenSet[str]:
    """
    Locations whose formula the configuration satisfies.

    Args:
        spec: Location -> interaction
        config: Configuration over ``space``
        space: Active configuration space

    Returns:
        Covered locations

    Raises:
        FormulaError: A formula mentions an option missing from the space
    """
    assignment = space.assignment(space.validate_config(config))
    covered = set()
    for location, formula in spec.items():
        try:
            if formula.evaluate(assignment):
                covered.add(location)
        except KeyError as e:
            raise FormulaError(f"location {location}: unknown option {e.args[0]!r}") from None
    return frozenset(covered)


def parse_spec_text(text: str, space: ConfigSpace) -> Dict[str, Interaction]:
    """
    Parse ``location: formula`` lines; ``#`` starts a comment.

    Raises:
        FormulaError: Bad line, duplicate location or invalid formula
    """
    spec: Dict[str, Interaction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        location, sep, body = line.partition(":")
        location = location.strip()
        if not sep or not location or any(ch.isspace() for ch in location):
            raise FormulaError(f"line {lineno}: expected 'location: formula'")
        if location in spec:
            raise FormulaError(f"line {lineno}: duplicate location {location!r}")
        try:
            formula = parse_formula(body, space)
        except FormulaError as e:
            raise FormulaError(f"line {lineno}: {e}") from e
        validate_formula(formula, space)
        spec[location] = formula
    return spec


class SpecBackend(CoverageBackend):
    """Coverage defined by one interaction formula per location."""

    def __init__(
        self, spec: Mapping[str, Interaction], space: ConfigSpace, source: str = "<spec>"
    ):
        super().__init__(space)
        for formula in spec.values():
            validate_formula(formula, space)
        self.spec = dict(spec)
        self.source = source

    @classmethod
    def from_file(cls, path: Path | str, space: ConfigSpace) -> "SpecBackend":
        path = Path(path)
        if not path.exists():
            raise RunnerError(f"spec file not found: {path}")
        spec = parse_spec_text(path.read_text(encoding="utf-8"), space)
        logger.debug(f"Loaded {len(spec)} location formulas from {path}")
        return cls(spec, space, source=str(path))

    def execute(self, config: Configuration) -> FrozenSet[str]:
        return eval_spec(self.spec, config, self.space)

    def describe(self) -> str:
        return f"spec:{self.source}"


def load_oracle(path: Path | str, space: ConfigSpace) -> Dict[Configuration, FrozenSet[str]]:
    """
    Read an oracle database.

    Each line is ``v1,...,vn -> loc1;loc2;...`` with values in space option
    order; the location list may be empty. Duplicate records keep the first.

    Raises:
        RunnerError: Missing file or malformed line
    """
    path = Path(path)
    if not path.exists():
        raise RunnerError(f"oracle database not found: {path}")

    records: Dict[Configuration, FrozenSet[str]] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lhs, sep, rhs = line.partition("->")
        if not sep:
            raise RunnerError(f"{path}:{lineno}: expected 'values -> locations'")
        try:
            config = space.parse_config(lhs)
        except ConfigurationError as e:
            raise RunnerError(f"{path}:{lineno}: {e}") from e
        coverage = frozenset(loc.strip() for loc in rhs.split(";") if loc.strip())
        if config in records:
            if records[config] != coverage:
                logger.warning(
                    f"{path}:{lineno}: conflicting record for {config}, keeping the first"
                )
            continue
        records[config] = coverage

    logger.debug(f"Loaded {len(records)} oracle records from {path}")
    return records


class OracleBackend(CoverageBackend):
    """Coverage looked up in a precomputed database."""

    def __init__(
        self,
        records: Mapping[Configuration, FrozenSet[str]],
        space: ConfigSpace,
        source: str = "<oracle>",
    ):
        super().__init__(space)
        self.records = dict(records)
        self.source = source

    @classmethod
    def from_file(cls, path: Path | str, space: ConfigSpace) -> "OracleBackend":
        return cls(load_oracle(path, space), space, source=str(path))

    def execute(self, config: Configuration) -> FrozenSet[str]:
        try:
            return self.records[config]
        except KeyError:
            raise OracleMissError(f"oracle {self.source} has no record for {config}") from None

    def describe(self) -> str:
        return f"oracle:{self.source}"


class CommandBackend(CoverageBackend):
    """
    Runs an external program once per configuration.

    The template is split shell-style into argv; ``{name}`` placeholders are
    replaced by the option values. Stdout lines ``COV <location>`` form the
    coverage set and must be UTF-8; any other line is ignored.
    """

    deterministic = False

    def __init__(self, template: str, space: ConfigSpace, timeout: Optional[float] = None):
        super().__init__(space)
        try:
            self.argv: List[str] = shlex.split(template)
        except ValueError as e:
            raise ConfigurationError(f"bad command template: {e}") from e
        if not self.argv:
            raise ConfigurationError("empty command template")
        for token in self.argv:
            for name in PLACEHOLDER.findall(token):
                if name not in space:
                    raise ConfigurationError(f"command template refers to unknown option {name!r}")
        self.template = template
        self.timeout = timeout

    def command_for(self, config: Configuration) -> List[str]:
        values = self.space.assignment(config)
        return [PLACEHOLDER.sub(lambda m: values[m.group(1)], token) for token in self.argv]

    def execute(self, config: Configuration) -> FrozenSet[str]:
        argv = self.command_for(config)
        try:
            proc = subprocess.run(argv, capture_output=True, timeout=self.timeout)
        except subprocess.TimeoutExpired:
            raise BackendError(f"{config}: timed out after {self.timeout}s") from None
        except OSError as e:
            raise BackendError(f"{config}: cannot execute {argv[0]}: {e}") from e

        if proc.returncode != 0:
            stderr = proc.stderr.decode("utf-8", errors="replace").strip().splitlines()
            detail = f": {stderr[-1]}" if stderr else ""
            raise BackendError(f"{config}: exit status {proc.returncode}{detail}")

        covered = set()
        for raw in proc.stdout.splitlines():
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError:
                line = raw.decode("utf-8", errors="replace")
                if COV_PREFIX.match(line):
                    raise BackendError(f"{config}: coverage line is not UTF-8: {line!r}") from None
                continue
            if COV_PREFIX.match(line):
                match = COV_LINE.match(line)
                if not match:
                    raise BackendError(f"{config}: unparseable coverage line {line!r}")
                covered.add(match.group(1))
        return frozenset(covered)

    def describe(self) -> str:
        return f"cmd:{self.template}"
