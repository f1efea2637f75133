"""Exact decision-tree classifier over configuration samples."""

from .tree import DecisionTree, Internal, Label, Leaf, TreePath, test_tree
from .myca import build_tree, split_score
from .ranking import rank_paths

__all__ = [
    "DecisionTree",
    "Internal",
    "Label",
    "Leaf",
    "TreePath",
    "test_tree",
    "build_tree",
    "split_score",
    "rank_paths",
]
