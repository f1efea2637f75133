"""Coverage runners: backends, the deduplicating cache and batch execution."""

from .cache import CoverageCache, CoverageSet
from .builtins import (
    BUILTINS,
    C50LIMIT_ANNOTATIONS,
    C50LIMIT_SPACE,
    FIG2_ANNOTATIONS,
    FIG2_SPACE,
    BuiltinProgram,
    eval_builtin,
    get_builtin,
)
from .backends import (
    BuiltinBackend,
    CommandBackend,
    CoverageBackend,
    OracleBackend,
    SpecBackend,
    eval_spec,
    load_oracle,
    parse_spec_text,
)
from .runner import (
    CoverageRunner,
    RunnerSpec,
    create_backend,
    parse_runner_spec,
    rerun_diagnostic,
)

__all__ = [
    "CoverageCache",
    "CoverageSet",
    "BUILTINS",
    "C50LIMIT_ANNOTATIONS",
    "C50LIMIT_SPACE",
    "FIG2_ANNOTATIONS",
    "FIG2_SPACE",
    "BuiltinProgram",
    "eval_builtin",
    "get_builtin",
    "BuiltinBackend",
    "CommandBackend",
    "CoverageBackend",
    "OracleBackend",
    "SpecBackend",
    "eval_spec",
    "load_oracle",
    "parse_spec_text",
    "CoverageRunner",
    "RunnerSpec",
    "create_backend",
    "parse_runner_spec",
    "rerun_diagnostic",
]
