"""
K-fold utilities for per-user cross-validation.

Each user's rated items are shuffled with a generator seeded by the run
seed and the user id, then dealt round-robin into k folds. Seeding per
user makes the plan independent of the order users are listed in, and the
same plan is shared by every evaluated configuration.
"""

import hashlib
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, List, Mapping, Set, Tuple

import numpy as np

from ..domain.models import UserProfile
from ..errors import EvaluationError


def _user_entropy(user_id: str) -> int:
    return int(hashlib.sha256(user_id.encode("utf-8")).hexdigest()[:16], 16)


def create_k_folds(item_ids: Iterable[str], k: int, seed: int, user_id: str) -> Tuple[Tuple[str, ...], ...]:
    """
    Split one user's rated items into k folds.

    Args:
        item_ids: Rated item ids
        k: Number of folds
        seed: Run seed
        user_id: Owner of the items (mixed into the seed)

    Returns:
        k disjoint folds covering every item; sizes differ by at most one
    """
    ordered = sorted(item_ids)
    rng = np.random.default_rng([seed, _user_entropy(user_id)])
    shuffled = [ordered[i] for i in rng.permutation(len(ordered))]
    return tuple(tuple(sorted(shuffled[fold::k])) for fold in range(k))


@dataclass(frozen=True)
class FoldPlan:
    """
    Per-user partition of rated items into k folds.

    Round ``f`` tests on fold ``f`` and trains on the other k - 1 folds.
    """
    n_folds: int
    seed: int
    folds: Mapping[str, Tuple[Tuple[str, ...], ...]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "folds", MappingProxyType(dict(self.folds)))

    @property
    def user_ids(self) -> List[str]:
        return sorted(self.folds)

    def test(self, user_id: str, fold: int) -> Tuple[str, ...]:
        """Test items of a user in one round."""
        return self.folds[user_id][fold]

    def training(self, user_id: str, fold: int) -> List[str]:
        """Training items of a user in one round: every other fold."""
        return sorted(
            item_id
            for index, items in enumerate(self.folds[user_id]) if index != fold
            for item_id in items
        )

    def test_pairs(self, fold: int) -> Set[Tuple[str, str]]:
        """All (user id, item id) test pairs of one round."""
        return {(user_id, item_id) for user_id in self.folds for item_id in self.folds[user_id][fold]}


def build_fold_plan(users: Iterable[UserProfile], n_folds: int = 5, seed: int = 42) -> FoldPlan:
    """
    Build the fold plan for a set of users.

    Raises:
        EvaluationError: if n_folds < 2 or a user has fewer ratings than folds
    """
    if n_folds < 2:
        raise EvaluationError(f"Cross-validation needs at least 2 folds, got {n_folds}")
    folds = {}
    for user in users:
        if len(user.ratings) < n_folds:
            raise EvaluationError(
                f"User {user.user_id!r} has {len(user.ratings)} ratings, fewer than {n_folds} folds"
            )
        folds[user.user_id] = create_k_folds(user.ratings.keys(), n_folds, seed, user.user_id)
    return FoldPlan(n_folds=n_folds, seed=seed, folds=folds)
