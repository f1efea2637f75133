"""
Exact decision-tree learner for hit/miss configuration samples.

C4.5-style top-down induction without pruning: nodes split on the option with
the highest gain ratio until every subsample is pure, so the tree classifies
its whole training sample correctly.
"""

from typing import Iterable, List, Sequence, Tuple
import math

from loguru import logger

from ..errors import TreeError
from ..space import ConfigSpace, Configuration
from .tree import DecisionTree, Internal, Label, Leaf, Node

EPSILON = 1e-12

Sample = List[Tuple[Tuple[int, ...], bool]]


def _entropy(counts: Iterable[int]) -> float:
    counts = [c for c in counts if c]
    total = sum(counts)
    if total == 0:
        return 0.0
    return -sum((c / total) * math.log2(c / total) for c in counts)


def _gain_ratio(sample: Sample, axis: int, size: int) -> Tuple[float, int]:
    """Gain ratio of splitting ``sample`` on ``axis`` and the number of nonempty parts."""
    hits = [0] * size
    totals = [0] * size
    for indices, is_hit in sample:
        totals[indices[axis]] += 1
        if is_hit:
            hits[indices[axis]] += 1

    parts = sum(1 for t in totals if t)
    if parts < 2:
        return 0.0, parts

    n = len(sample)
    n_hit = sum(hits)
    remainder = sum(
        (t / n) * _entropy((h, t - h)) for h, t in zip(hits, totals) if t
    )
    gain = _entropy((n_hit, n - n_hit)) - remainder
    split_info = _entropy(totals)
    return max(gain, 0.0) / split_info, parts


def _sample(
    hits: Iterable[Configuration], misses: Iterable[Configuration], space: ConfigSpace
) -> Sample:
    return [(space.indices_of(c), True) for c in hits] + [
        (space.indices_of(c), False) for c in misses
    ]


def split_score(
    hits: Iterable[Configuration],
    misses: Iterable[Configuration],
    option: str,
    space: ConfigSpace,
) -> float:
    """
    Gain ratio (information gain / split information) of splitting on ``option``.

    Returns 0 when every configuration has the same value for ``option``.
    """
    sample = _sample(hits, misses, space)
    if not sample:
        raise TreeError("cannot score a split of an empty sample")
    axis = space.index(option)
    return _gain_ratio(sample, axis, space.options[axis].size)[0]


def _majority(sample: Sample) -> Label:
    n_hit = sum(1 for _, is_hit in sample if is_hit)
    return Label.HIT if n_hit > len(sample) - n_hit else Label.MISS


def _grow(
    sample: Sample, available: Sequence[int], parent: Label, space: ConfigSpace
) -> Node:
    if not sample:
        return Leaf(parent, 0)

    n_hit = sum(1 for _, is_hit in sample if is_hit)
    if n_hit == len(sample):
        return Leaf(Label.HIT, len(sample))
    if n_hit == 0:
        return Leaf(Label.MISS, len(sample))

    majority = _majority(sample)
    best, best_score = None, -1.0
    for axis in available:
        score, parts = _gain_ratio(sample, axis, space.options[axis].size)
        # zero-gain options qualify while they still partition (XOR samples)
        if parts >= 2 and score > best_score + EPSILON:
            best, best_score = axis, score

    if best is None:
        return Leaf(majority, len(sample))

    option = space.options[best]
    rest = [a for a in available if a != best]
    children = []
    for j, value in enumerate(option.domain):
        subsample = [s for s in sample if s[0][best] == j]
        children.append((value, _grow(subsample, rest, majority, space)))
    return Internal(option.name, tuple(children))


def build_tree(
    hits: Iterable[Configuration],
    misses: Iterable[Configuration],
    space: ConfigSpace,
) -> DecisionTree:
    """
    Build an unpruned tree that classifies every training configuration.

    Args:
        hits: Configurations covering the location
        misses: Configurations not covering it
        space: Configuration space of both sets

    Returns:
        DecisionTree total over the space; empty branches become support-0
        leaves labelled with the parent's majority class (ties -> miss)

    Raises:
        TreeError: If both sets are empty
    """
    hits = list(dict.fromkeys(hits))
    misses = list(dict.fromkeys(misses))
    if not hits and not misses:
        raise TreeError("cannot build a tree from empty hit and miss sets")

    miss_set = set(misses)
    contradictory = [c for c in hits if c in miss_set]
    if contradictory:
        logger.warning(
            f"{len(contradictory)} configuration(s) both hit and miss; labelled miss"
        )
        hits = [c for c in hits if c not in miss_set]

    sample = _sample(hits, misses, space)
    root = _grow(sample, list(range(len(space))), Label.MISS, space)
    tree = DecisionTree(root, space)
    logger.debug(
        f"Built tree from {len(hits)} hits / {len(misses)} misses: "
        f"{len(tree.paths())} paths"
    )
    return tree
