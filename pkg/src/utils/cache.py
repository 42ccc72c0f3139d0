"""
Compatibility caching for evaluation runs.

Item compatibility and multi-criteria scores depend only on the user's
declared profile and the item, never on the cross-validation fold, so one
value per (user, item, measure) serves all folds and configurations.
"""

import logging
from collections import OrderedDict
from dataclasses import dataclass
from typing import Any, Callable, Dict, Generic, Hashable, Optional, TypeVar

logger = logging.getLogger(__name__)

V = TypeVar('V')


class LRUCache(Generic[V]):
    """
    Bounded mapping that drops the least recently used entry when full.

    Attributes:
        capacity: Maximum number of entries kept
        evictions: Entries dropped so far
    """

    def __init__(self, capacity: int = 128):
        if capacity < 1:
            raise ValueError(f"LRUCache capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self.evictions = 0
        self._entries: "OrderedDict[Hashable, V]" = OrderedDict()

    def get(self, key: Hashable) -> Optional[V]:
        """Value for ``key`` (now most recently used), or None."""
        try:
            self._entries.move_to_end(key)
        except KeyError:
            return None
        return self._entries[key]

    def put(self, key: Hashable, value: V) -> None:
        self._entries[key] = value
        self._entries.move_to_end(key)
        while len(self._entries) > self.capacity:
            self._entries.popitem(last=False)
            self.evictions += 1

    def size(self) -> int:
        return len(self._entries)


@dataclass
class CacheStats:
    """Hit and miss counters of a CompatibilityCache."""
    hits: int = 0
    misses: int = 0

    def record_hit(self) -> None:
        self.hits += 1

    def record_miss(self) -> None:
        self.misses += 1

    @property
    def total_requests(self) -> int:
        return self.hits + self.misses

    @property
    def hit_rate(self) -> float:
        return self.hits / self.total_requests if self.total_requests else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'hits': self.hits,
            'misses': self.misses,
            'total_requests': self.total_requests,
            'hit_rate': self.hit_rate,
        }


class CompatibilityCache:
    """
    Memoises per-(user, item, measure) scores.

    Keys are ids, not profile contents: share one cache only between users
    whose declared profiles stay fixed for its lifetime.

    Usage:
        cache = CompatibilityCache(capacity=65536)
        comp = cache.get_or_compute(("comp", "u1", "i3", "Cos"), compute)
    """

    def __init__(self, capacity: int = 65536):
        """
        Args:
            capacity: Maximum number of cached scores
        """
        self.capacity = capacity
        self.stats = CacheStats()
        self._scores: LRUCache[float] = LRUCache(capacity)

        logger.debug(f"CompatibilityCache: capacity={capacity}")

    def get_or_compute(self, key: Hashable, compute: Callable[[], float]) -> float:
        """
        Cached score for ``key``; ``compute()`` runs only on a miss.

        Args:
            key: Typically (kind, user_id, item_id, measure)
            compute: Zero-argument callable producing the score
        """
        cached = self._scores.get(key)
        if cached is not None:
            self.stats.record_hit()
            return cached

        self.stats.record_miss()
        score = compute()
        self._scores.put(key, score)
        return score

    def get_stats(self) -> Dict[str, Any]:
        return {
            'capacity': self.capacity,
            'size': self._scores.size(),
            'evictions': self._scores.evictions,
            'statistics': self.stats.to_dict(),
        }
