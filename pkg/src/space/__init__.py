"""Configuration space model, enumeration and covering arrays."""

from .options import (
    ConfigSpace,
    Configuration,
    OptionDef,
    Setting,
    load_space,
    make_space,
    parse_config_file,
    parse_space,
    render_space,
)
from .covering import (
    as_rng,
    covering_configs,
    enumerate_all,
    one_way_covering,
    random_configs,
)

__all__ = [
    "ConfigSpace",
    "Configuration",
    "OptionDef",
    "Setting",
    "load_space",
    "make_space",
    "parse_config_file",
    "parse_space",
    "render_space",
    "as_rng",
    "covering_configs",
    "enumerate_all",
    "one_way_covering",
    "random_configs",
]
