"""
Configuration space model and the space-file format.

A space is an ordered list of options, each with a finite ordered domain of
opaque value tokens. Option order is significant: it fixes the value order of
every Configuration and the lexicographic enumeration order.
"""

from dataclasses import dataclass
from hashlib import sha256
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Tuple
import math
import re

from loguru import logger
from pydantic import BaseModel, ConfigDict, PrivateAttr, field_validator, model_validator

from ..errors import ConfigurationError, SpaceError

NAME_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
# Value tokens must survive the formula grammar unquoted.
VALUE_PATTERN = re.compile(r"^[^\s,#{}()&|=]+$")


@dataclass(frozen=True)
class Setting:
    """A single ``option=value`` setting."""

    option: str
    value: str

    def __str__(self) -> str:
        return f"{self.option}={self.value}"


@dataclass(frozen=True)
class Configuration:
    """A total assignment: one value token per option, in space option order."""

    values: Tuple[str, ...]

    def __str__(self) -> str:
        return ",".join(self.values)


class OptionDef(BaseModel):
    """A named option with an ordered domain of at least two distinct values."""

    model_config = ConfigDict(frozen=True)

    name: str
    domain: Tuple[str, ...]

    @field_validator("name")
    @classmethod
    def check_name(cls, v: str) -> str:
        if not NAME_PATTERN.match(v):
            raise ValueError(f"invalid option name {v!r}")
        return v

    @field_validator("domain")
    @classmethod
    def check_domain(cls, v: Tuple[str, ...]) -> Tuple[str, ...]:
        if len(v) < 2:
            raise ValueError("domain needs at least two values")
        if len(set(v)) != len(v):
            raise ValueError("domain values must be distinct")
        for value in v:
            if not VALUE_PATTERN.match(value):
                raise ValueError(f"invalid value token {value!r}")
        return v

    @property
    def size(self) -> int:
        return len(self.domain)


class ConfigSpace(BaseModel):
    """
    Ordered collection of options.

    Immutable after construction; lookups by option name and by value are
    precomputed.
    """

    model_config = ConfigDict(frozen=True)

    options: Tuple[OptionDef, ...]

    _index: Dict[str, int] = PrivateAttr(default_factory=dict)
    _value_index: Tuple[Dict[str, int], ...] = PrivateAttr(default=())

    @model_validator(mode="after")
    def check_unique_names(self) -> "ConfigSpace":
        names = [o.name for o in self.options]
        if len(set(names)) != len(names):
            raise ValueError("option names must be unique")
        return self

    def model_post_init(self, __context) -> None:
        self._index = {o.name: i for i, o in enumerate(self.options)}
        self._value_index = tuple(
            {v: j for j, v in enumerate(o.domain)} for o in self.options
        )

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(o.name for o in self.options)

    @property
    def shape(self) -> Tuple[int, ...]:
        """Domain sizes in option order."""
        return tuple(o.size for o in self.options)

    @property
    def size(self) -> int:
        """Number of configurations (product of domain sizes)."""
        return math.prod(self.shape)

    @property
    def fingerprint(self) -> str:
        """SHA-256 of the canonical space-file rendering."""
        return sha256(render_space(self).encode("utf-8")).hexdigest()

    def __len__(self) -> int:
        return len(self.options)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        """Position of an option."""
        try:
            return self._index[name]
        except KeyError:
            raise ConfigurationError(f"unknown option {name!r}") from None

    def option(self, name: str) -> OptionDef:
        return self.options[self.index(name)]

    def value_index(self, name: str, value: str) -> int:
        """Position of ``value`` in the domain of ``name``."""
        i = self.index(name)
        try:
            return self._value_index[i][value]
        except KeyError:
            raise ConfigurationError(
                f"value {value!r} not in domain of {name!r}"
            ) from None

    def validate_config(self, config: Configuration) -> Configuration:
        if len(config.values) != len(self.options):
            raise ConfigurationError(
                f"configuration has {len(config.values)} values, space has "
                f"{len(self.options)} options"
            )
        for i, value in enumerate(config.values):
            if value not in self._value_index[i]:
                raise ConfigurationError(
                    f"value {value!r} not in domain of {self.options[i].name!r}"
                )
        return config

    def config_at(self, indices: Iterable[int]) -> Configuration:
        """Configuration from per-option domain indices."""
        return Configuration(tuple(o.domain[j] for o, j in zip(self.options, indices)))

    def indices_of(self, config: Configuration) -> Tuple[int, ...]:
        """Per-option domain indices of a configuration."""
        return tuple(self._value_index[i][v] for i, v in enumerate(config.values))

    def parse_config(self, text: str) -> Configuration:
        """Parse ``v1,v2,...,vn`` (values in option order)."""
        values = tuple(token.strip() for token in text.split(","))
        return self.validate_config(Configuration(values))

    def config_from_mapping(self, mapping: Mapping[str, str]) -> Configuration:
        """Build a configuration from an ``option -> value`` mapping covering all options."""
        unknown = set(mapping) - set(self._index)
        if unknown:
            raise ConfigurationError(f"unknown options: {', '.join(sorted(unknown))}")
        missing = [o.name for o in self.options if o.name not in mapping]
        if missing:
            raise ConfigurationError(f"missing values for: {', '.join(missing)}")
        return self.validate_config(
            Configuration(tuple(str(mapping[o.name]) for o in self.options))
        )

    def assignment(self, config: Configuration) -> Dict[str, str]:
        """The ``option -> value`` view of a configuration."""
        return dict(zip(self.names, config.values))

    def value_of(self, config: Configuration, name: str) -> str:
        return config.values[self.index(name)]


def parse_space(text: str) -> ConfigSpace:
    """
    Parse space-file text.

    One option per line, ``name: v1,v2,...,vk``; ``#`` starts a comment line;
    whitespace around tokens is ignored.

    Args:
        text: Space-file content

    Returns:
        ConfigSpace with options and domains in file order

    Raises:
        SpaceError: On syntax errors, duplicate options or values, or short
            domains; the message carries the line number
    """
    options: List[OptionDef] = []
    seen: Dict[str, int] = {}

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        name, sep, rest = line.partition(":")
        name = name.strip()
        if not sep:
            raise SpaceError(f"expected 'name: v1,v2,...' but got {line!r}", lineno)
        if not NAME_PATTERN.match(name):
            raise SpaceError(f"invalid option name {name!r}", lineno)
        if name in seen:
            raise SpaceError(
                f"duplicate option {name!r} (first defined on line {seen[name]})", lineno
            )

        rest = rest.strip()
        if not rest:
            raise SpaceError(f"option {name!r} has an empty domain", lineno)
        values = [token.strip() for token in rest.split(",")]
        if any(not v for v in values):
            raise SpaceError(f"option {name!r} has an empty value token", lineno)
        for value in values:
            if not VALUE_PATTERN.match(value):
                raise SpaceError(f"invalid value token {value!r} for {name!r}", lineno)
        duplicates = sorted({v for v in values if values.count(v) > 1})
        if duplicates:
            raise SpaceError(
                f"duplicate value(s) {', '.join(duplicates)} for {name!r}", lineno
            )
        if len(values) < 2:
            raise SpaceError(f"option {name!r} needs at least two values", lineno)

        seen[name] = lineno
        options.append(OptionDef(name=name, domain=tuple(values)))

    if not options:
        raise SpaceError("space file defines no options")

    space = ConfigSpace(options=tuple(options))
    logger.debug(f"Parsed space: {len(space)} options, {space.size} configurations")
    return space


def render_space(space: ConfigSpace) -> str:
    """Canonical space-file text; ``parse_space(render_space(s)) == s``."""
    return "".join(f"{o.name}: {','.join(o.domain)}\n" for o in space.options)


def load_space(path: Path | str) -> ConfigSpace:
    """Read and parse a space file."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Space file not found: {path}")
    logger.info(f"Loading space file: {path}")
    return parse_space(path.read_text(encoding="utf-8"))


def make_space(domains: Mapping[str, Iterable[object]]) -> ConfigSpace:
    """Build a space from ``name -> values``; values are converted to strings."""
    return ConfigSpace(
        options=tuple(
            OptionDef(name=name, domain=tuple(str(v) for v in values))
            for name, values in domains.items()
        )
    )


def parse_config_file(path: Path | str, space: ConfigSpace) -> List[Configuration]:
    """
    Read one configuration per line (``v1,...,vn`` in option order).

    Blank lines and ``#`` comments are skipped.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Configuration file not found: {path}")

    configs = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            configs.append(space.parse_config(line))
        except ConfigurationError as e:
            raise ConfigurationError(f"{path}:{lineno}: {e}") from None

    logger.info(f"Loaded {len(configs)} configurations from {path}")
    return configs
