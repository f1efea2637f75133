"""Path ranking: fragile paths first."""

from typing import List

from ..space.covering import Seed, as_rng
from .tree import DecisionTree, TreePath


def rank_paths(tree: DecisionTree, seed: Seed = None) -> List[TreePath]:
    """
    Order paths by ascending support, then descending length.

    Paths with equal support and length are ordered by a seeded shuffle, or by
    path id when no seed is given.

    Args:
        tree: Decision tree
        seed: Int seed or shared Random for tie-breaking

    Returns:
        All paths of the tree, most fragile first
    """
    paths = tree.paths()
    tiebreak = list(range(len(paths)))
    if seed is not None:
        as_rng(seed).shuffle(tiebreak)
    return sorted(paths, key=lambda p: (p.support, -p.length, tiebreak[p.path_id]))
