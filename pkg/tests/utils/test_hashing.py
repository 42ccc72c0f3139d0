import time

from src.utils.hashing import ContentHasher, hash_dataset, hash_pairs
from src.utils.timing import StageTimer


class TestHashing:
    """Test content digests."""

    def test_pairs_are_order_independent(self):
        pairs = [("u1", "i2"), ("u2", "i1"), ("u1", "i1")]
        assert hash_pairs(pairs) == hash_pairs(reversed(pairs))
        assert hash_pairs(pairs) == hash_pairs(pairs + [("u1", "i2")])
        assert hash_pairs(pairs) != hash_pairs(pairs[:2])

    def test_digest_ignores_key_order(self):
        hasher = ContentHasher()
        assert hasher.digest({"a": 1, "b": 2}) == hasher.digest({"b": 2, "a": 1})
        assert len(hasher.digest([1, 2])) == 64

    def test_dataset_fingerprint(self, tiny_dataset):
        reordered = tiny_dataset.with_users(reversed(tiny_dataset.users))
        assert hash_dataset(reordered) == hash_dataset(tiny_dataset)
        changed = tiny_dataset.with_users([tiny_dataset.user("u1")])
        assert hash_dataset(changed) != hash_dataset(tiny_dataset)


class TestStageTimer:
    """Test stage timing."""

    def test_records_durations(self):
        timer = StageTimer()
        for _ in range(2):
            with timer.time("fit"):
                time.sleep(0.001)
        stats = timer.get("fit")
        assert stats["count"] == 2
        assert stats["total"] > 0
        assert timer.get("rank") == {}
