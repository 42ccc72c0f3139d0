"""
Content hashing for evaluation artifacts.

Digests are computed over a canonical serialization (sorted, JSON-encoded)
so that equal content always yields the same hex string regardless of the
order it was produced in. Used to:
- Fingerprint a dataset in report headers
- Prove that every configuration saw the same (user, test item) pairs
"""

import hashlib
import json
from typing import Any, Iterable, Tuple

from ..domain.models import Dataset


class ContentHasher:
    """
    Computes hashes of JSON-serializable content.

    The hash is computed from the content serialized with sorted keys, so
    dict ordering never changes the digest.
    """

    def __init__(self, algorithm: str = "sha256"):
        """
        Initialize the hasher.

        Args:
            algorithm: Hash algorithm to use (default: sha256)
        """
        self.algorithm = algorithm

    def digest(self, content: Any) -> str:
        """Hex digest of arbitrary JSON-serializable content."""
        hasher = hashlib.new(self.algorithm)
        hasher.update(self._serialize(content).encode('utf-8'))
        return hasher.hexdigest()

    def _serialize(self, content: Any) -> str:
        return json.dumps(content, sort_keys=True, default=str, separators=(",", ":"))


def hash_pairs(pairs: Iterable[Tuple[str, str]], algorithm: str = "sha256") -> str:
    """
    Order-independent digest of a set of (user_id, item_id) pairs.

    Args:
        pairs: (user, item) pairs; duplicates and ordering are ignored
        algorithm: Hash algorithm to use

    Returns:
        Hexadecimal hash string
    """
    canonical = sorted({(str(u), str(i)) for u, i in pairs})
    return ContentHasher(algorithm).digest(canonical)


def hash_dataset(dataset: Dataset, algorithm: str = "sha256") -> str:
    """Fingerprint of a dataset's content (independent of user/item order)."""
    content = {
        "v_max": dataset.schema.v_max,
        "features": [[f, k.value] for f, k in dataset.schema.features],
        "categories": dataset.categories.sorted(),
        "items": sorted(
            [item.item_id, item.name, item.category,
             sorted((f, repr(float(v))) for f, v in item.feature_values.items())]
            for item in dataset.items
        ),
        "users": sorted(
            [user.user_id, user.group,
             sorted((c, repr(float(v))) for c, v in user.preferences.items()),
             sorted((f, repr(float(a.a_at_max)),
                     None if a.a_at_min is None else repr(float(a.a_at_min)))
                    for f, a in user.aversions.items()),
             sorted((i, repr(float(r))) for i, r in user.ratings.items())]
            for user in dataset.users
        ),
    }
    return ContentHasher(algorithm).digest(content)
