"""Shared fixtures: the fig2 and c50limit programs and their sample configurations."""

import sys
from pathlib import Path

import pytest

# Add repo root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.dtree import DecisionTree, Internal, Label, Leaf, build_tree  # noqa: E402
from src.runner import (  # noqa: E402
    C50LIMIT_SPACE,
    FIG2_SPACE,
    BuiltinBackend,
    CoverageRunner,
)


@pytest.fixture
def fig2_space():
    return FIG2_SPACE


@pytest.fixture
def c50_space():
    return C50LIMIT_SPACE


@pytest.fixture
def fig2_backend():
    return BuiltinBackend("fig2")


@pytest.fixture
def fig2_runner(fig2_backend):
    return CoverageRunner(fig2_backend, jobs=1)


@pytest.fixture
def c50_runner():
    return CoverageRunner(BuiltinBackend("c50limit"), jobs=1)


@pytest.fixture
def fig3_configs(fig2_space):
    """The three initial configurations c1, c2, c3 (values in s,t,u,v,a,b,c,d,e order)."""
    return {
        "c1": fig2_space.parse_config("1,1,0,0,0,1,2,1,0"),
        "c2": fig2_space.parse_config("0,1,1,0,2,0,0,2,2"),
        "c3": fig2_space.parse_config("1,0,1,1,1,2,1,0,1"),
    }


@pytest.fixture
def write_file(tmp_path):
    def write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write


@pytest.fixture
def fig3_tree(fig2_space, fig3_configs):
    """Tree for L8 from hit set {c2} and miss set {c1, c3}."""
    return build_tree([fig3_configs["c2"]], [fig3_configs["c1"], fig3_configs["c3"]], fig2_space)


@pytest.fixture
def five_path_tree(fig2_space):
    """
    Paths a: e=0 MISS(2), b: e=1 MISS(2), c: e=2,u=0,v=0 HIT(1),
    d: e=2,u=0,v=1 HIT(1), e: e=2,u=1 MISS(2).
    """
    v_node = Internal("v", (("0", Leaf(Label.HIT, 1)), ("1", Leaf(Label.HIT, 1))))
    u_node = Internal("u", (("0", v_node), ("1", Leaf(Label.MISS, 2))))
    root = Internal(
        "e", (("0", Leaf(Label.MISS, 2)), ("1", Leaf(Label.MISS, 2)), ("2", u_node))
    )
    return DecisionTree(root, fig2_space)
