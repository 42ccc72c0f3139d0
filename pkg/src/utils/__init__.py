"""
Utilities package for the recommender.

This package contains helpers for score caching, content hashing and
stage timing.
"""

from .cache import CacheStats, CompatibilityCache, LRUCache
from .hashing import ContentHasher, hash_dataset, hash_pairs
from .timing import StageTimer, TimerContext, TimingStats

__all__ = [
    "CacheStats",
    "CompatibilityCache",
    "LRUCache",
    "ContentHasher",
    "hash_dataset",
    "hash_pairs",
    "StageTimer",
    "TimerContext",
    "TimingStats",
]
