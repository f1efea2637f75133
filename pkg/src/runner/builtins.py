"""
Built-in example programs with known interactions.

``fig2`` is a nine-option program with nine locations L0-L8 whose control flow
includes early returns; ``c50limit`` labels the 20-configuration space
``s, t in {0,1}, z in {0..4}`` by ``s & t & 1 <= z <= 3``.
"""

from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Mapping

from ..errors import ConfigurationError
from ..space import ConfigSpace, Configuration, make_space

Program = Callable[[Mapping[str, str]], FrozenSet[str]]


@dataclass(frozen=True)
class BuiltinProgram:
    name: str
    space: ConfigSpace
    program: Program
    # location -> formula text of the known interaction
    annotations: Dict[str, str]


FIG2_SPACE = make_space(
    {
        "s": (0, 1),
        "t": (0, 1),
        "u": (0, 1),
        "v": (0, 1),
        "a": (0, 1, 2),
        "b": (0, 1, 2),
        "c": (0, 1, 2),
        "d": (0, 1, 2),
        "e": (0, 1, 2),
    }
)


def _fig2(x: Mapping[str, str]) -> FrozenSet[str]:
    s, u, v = x["s"] == "1", x["u"] == "1", x["v"] == "1"
    a, b, c, d, e = (int(x[k]) for k in "abcde")

    covered = {"L0"}
    if a == 1 or b == 2:
        covered.add("L1")
    elif c == 0 and d == 1:
        covered.add("L2")

    if u and v:
        covered.add("L3")
        return frozenset(covered)
    covered.add("L4")
    if s and e == 2:
        covered.add("L5")
        return frozenset(covered)

    covered.add("L6")
    if e == 2:
        covered.add("L7")
        if u or v:
            covered.add("L8")
    return frozenset(covered)


FIG2_ANNOTATIONS = {
    "L0": "true",
    "L1": "a=1 | b=2",
    "L2": "a in {0,2} & b in {0,1} & c=0 & d=1",
    "L3": "u=1 & v=1",
    "L4": "u=0 | v=0",
    "L5": "s=1 & e=2 & (u=0 | v=0)",
    "L6": "(s=0 | e in {0,1}) & (u=0 | v=0)",
    "L7": "s=0 & e=2 & (u=0 | v=0)",
    "L8": "s=0 & e=2 & ((u=1 & v=0) | (u=0 & v=1))",
}


C50LIMIT_SPACE = make_space({"s": (0, 1), "t": (0, 1), "z": (0, 1, 2, 3, 4)})


def _c50limit(x: Mapping[str, str]) -> FrozenSet[str]:
    if x["s"] == "1" and x["t"] == "1" and 1 <= int(x["z"]) <= 3:
        return frozenset({"HIT"})
    return frozenset()


C50LIMIT_ANNOTATIONS = {"HIT": "s=1 & t=1 & z in {1,2,3}"}


BUILTINS: Dict[str, BuiltinProgram] = {
    "fig2": BuiltinProgram("fig2", FIG2_SPACE, _fig2, FIG2_ANNOTATIONS),
    "c50limit": BuiltinProgram("c50limit", C50LIMIT_SPACE, _c50limit, C50LIMIT_ANNOTATIONS),
}


def get_builtin(name: str) -> BuiltinProgram:
    try:
        return BUILTINS[name]
    except KeyError:
        known = ", ".join(sorted(BUILTINS))
        raise ConfigurationError(f"unknown builtin program {name!r} (known: {known})") from None


def eval_builtin(program: str, config: Configuration) -> FrozenSet[str]:
    """
    Coverage of a built-in program on one configuration.

    Raises:
        ConfigurationError: Unknown program, or a configuration that does not
            fit the program's space
    """
    builtin = get_builtin(program)
    builtin.space.validate_config(config)
    return builtin.program(builtin.space.assignment(config))
