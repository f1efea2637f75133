"""Exception hierarchy shared by all GenTree modules."""

from typing import Optional


class GenTreeError(Exception):
    """Base class for every error raised by this package."""


class SpaceError(GenTreeError, ValueError):
    """Invalid space file or option definition."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigurationError(GenTreeError, ValueError):
    """A value assignment that does not fit the configuration space."""


class FormulaError(GenTreeError, ValueError):
    """Formula syntax error or reference to an unknown option/value."""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class FormulaTooLargeError(FormulaError):
    """The projected space of a formula is above the enumeration cap."""


class TreeError(GenTreeError, ValueError):
    """Decision trees cannot be built from the given sample."""


class RunnerError(GenTreeError, RuntimeError):
    """Coverage could not be obtained from a backend."""


class BackendError(RunnerError):
    """A single configuration failed to execute."""


class OracleMissError(BackendError, LookupError):
    """The oracle database has no record for a configuration."""


class BatchFailedError(RunnerError):
    """Every configuration of a batch failed."""


class GroundTruthTooLargeError(GenTreeError, ValueError):
    """The configuration space is too large to enumerate."""


class ResultFileError(GenTreeError, ValueError):
    """Malformed result file, or results from different spaces."""
