"""
Coverage cache: every configuration is executed at most once per run.
"""

from threading import Lock
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from ..space import Configuration

CoverageSet = FrozenSet[str]


class CoverageCache:
    """
    Map from configuration to the locations it covers.

    Insertion order is exploration order. The first result stored for a
    configuration wins; later inserts return the stored set unchanged.
    Configurations whose execution failed are remembered separately so they
    are not retried and stay out of hit/miss sets.
    """

    def __init__(self):
        self._entries: Dict[Configuration, CoverageSet] = {}
        self._failures: Dict[Configuration, str] = {}
        self._lock = Lock()
        self.executions = 0

    def insert(self, config: Configuration, locations: Iterable[str]) -> CoverageSet:
        with self._lock:
            existing = self._entries.get(config)
            if existing is not None:
                return existing
            coverage = frozenset(locations)
            self._entries[config] = coverage
            return coverage

    def record_failure(self, config: Configuration, message: str) -> None:
        with self._lock:
            self._failures.setdefault(config, message)

    def count_executions(self, n: int) -> None:
        with self._lock:
            self.executions += n

    def get(self, config: Configuration) -> Optional[CoverageSet]:
        return self._entries.get(config)

    def __contains__(self, config: object) -> bool:
        return config in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def known(self, config: Configuration) -> bool:
        """Cached or previously failed."""
        return config in self._entries or config in self._failures

    @property
    def failures(self) -> Dict[Configuration, str]:
        return dict(self._failures)

    def configs(self) -> List[Configuration]:
        """Cached configurations in exploration order."""
        return list(self._entries)

    def locations(self) -> List[str]:
        """All covered locations, sorted."""
        found = set()
        for coverage in self._entries.values():
            found.update(coverage)
        return sorted(found)

    def partition(self, location: str) -> Tuple[List[Configuration], List[Configuration]]:
        """Hit and miss configurations for a location, in exploration order."""
        hits, misses = [], []
        for config, coverage in self._entries.items():
            (hits if location in coverage else misses).append(config)
        return hits, misses
