"""
Configuration generation: exhaustive enumeration and 1-way covering arrays.
"""

from itertools import product
from random import Random
from typing import Iterator, List, Mapping, Optional, Union

from .options import ConfigSpace, Configuration

Seed = Union[int, Random, None]


def as_rng(seed: Seed) -> Random:
    """Accept an int seed or an existing generator (shared streams)."""
    return seed if isinstance(seed, Random) else Random(seed)


def enumerate_all(space: ConfigSpace) -> Iterator[Configuration]:
    """
    Yield every configuration exactly once.

    Order is lexicographic over option-domain indices, first option most
    significant, which matches C-order flattening of ``space.shape``.
    """
    for values in product(*(o.domain for o in space.options)):
        yield Configuration(values)


def covering_configs(
    space: ConfigSpace,
    seed: Seed = None,
    fixed: Optional[Mapping[str, str]] = None,
) -> List[Configuration]:
    """
    Random 1-way covering array with some options pinned.

    Each free option gets a column that starts with a shuffled copy of its
    domain, is padded to the array size with random picks, and is then
    shuffled again. The array size is the largest free domain, so every value
    of every free option appears at least once. Pinned options carry their
    fixed value in every row.

    Args:
        space: Configuration space
        seed: Int seed or shared Random instance
        fixed: ``option -> value`` settings every row must satisfy

    Returns:
        Rows in generation order (may contain duplicates only when all
        options are pinned, in which case a single row is returned)
    """
    rng = as_rng(seed)
    fixed = dict(fixed or {})
    for name, value in fixed.items():
        space.value_index(name, value)

    free = [o for o in space.options if o.name not in fixed]
    rows = max((o.size for o in free), default=1)

    columns = []
    for option in space.options:
        if option.name in fixed:
            columns.append([fixed[option.name]] * rows)
            continue
        column = list(option.domain)
        rng.shuffle(column)
        column.extend(rng.choice(option.domain) for _ in range(rows - len(column)))
        rng.shuffle(column)
        columns.append(column)

    return [Configuration(tuple(col[r] for col in columns)) for r in range(rows)]


def one_way_covering(space: ConfigSpace, seed: Seed = None) -> List[Configuration]:
    """
    Seeded random 1-way covering array over the whole space.

    Returns exactly ``max(domain sizes)`` configurations; every value of every
    option appears in at least one of them.
    """
    return covering_configs(space, seed)


def random_configs(space: ConfigSpace, count: int, seed: Seed = None) -> List[Configuration]:
    """
    Up to ``count`` distinct uniformly random configurations.

    When ``count`` reaches the space size the whole space is returned in
    enumeration order.
    """
    rng = as_rng(seed)
    if count >= space.size:
        return list(enumerate_all(space))

    seen = set()
    configs = []
    while len(configs) < count:
        config = Configuration(tuple(rng.choice(o.domain) for o in space.options))
        if config not in seen:
            seen.add(config)
            configs.append(config)
    return configs
