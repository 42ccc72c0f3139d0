"""
Tests for compatibility caching.

Verifies that:
1. LRUCache evicts the least recently used entry
2. CompatibilityCache computes once per key and counts hits and misses
"""

from src.utils.cache import CacheStats, CompatibilityCache, LRUCache


class TestLRUCache:
    """Test the LRUCache class."""

    def test_eviction_order(self):
        """Test that the least recently used key is evicted first."""
        cache = LRUCache(capacity=2)
        cache.put("a", 1.0)
        cache.put("b", 2.0)
        cache.get("a")
        cache.put("c", 3.0)

        assert cache.get("b") is None
        assert cache.get("a") == 1.0
        assert cache.get("c") == 3.0
        assert cache.evictions == 1
        assert cache.size() == 2


class TestCompatibilityCache:
    """Test the CompatibilityCache class."""

    def test_cache_initialization(self):
        """Test default and custom capacity."""
        assert CompatibilityCache().capacity == 65536
        assert CompatibilityCache(capacity=8).capacity == 8

    def test_computes_once(self):
        """Test that a key is computed on the first request only."""
        cache = CompatibilityCache()
        calls = []

        def compute():
            calls.append(1)
            return 3.5

        key = ("comp", "u1", "i1", "Ave")
        assert cache.get_or_compute(key, compute) == 3.5
        assert cache.get_or_compute(key, compute) == 3.5
        assert len(calls) == 1
        assert cache.stats.hits == 1
        assert cache.stats.misses == 1

    def test_stats_export(self):
        cache = CompatibilityCache(capacity=1)
        cache.get_or_compute("a", lambda: 1.0)
        cache.get_or_compute("b", lambda: 2.0)
        stats = cache.get_stats()
        assert stats["size"] == 1
        assert stats["evictions"] == 1
        assert stats["statistics"]["misses"] == 2


class TestCacheStats:
    """Test the CacheStats class."""

    def test_hit_rate(self):
        stats = CacheStats()
        assert stats.hit_rate == 0.0
        stats.record_hit()
        stats.record_hit()
        stats.record_miss()
        stats.record_hit()
        assert stats.hit_rate == 0.75
        assert stats.to_dict()["total_requests"] == 4
