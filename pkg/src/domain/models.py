"""
Data model for sensory-aware point-of-interest recommendation.

This module defines the entities the recommender reasons about:
- The feature schema (which sensory features exist and their aversion shape)
- The category set items belong to
- User profiles (category preferences, declared aversions, ratings)
- Item profiles (category plus crowd-sourced sensory feature values)
- The dataset container tying them together

All values are immutable after construction. Invariants are not enforced
at construction time; ``src.domain.validation.validate`` reports them.
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from types import MappingProxyType
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from ..errors import DatasetError, ModelError


class FeatureKind(Enum):
    """How aversion to a feature varies with its value."""
    INCREASING = "increasing"  # higher value, stronger aversion (noise)
    V_SHAPED = "v_shaped"      # both extremes aversive (brightness)

    @classmethod
    def parse(cls, value: str) -> "FeatureKind":
        """Parse a kind label as written in schema files."""
        normalized = str(value).strip().lower().replace("-", "_")
        aliases = {
            "increasing": cls.INCREASING,
            "inc": cls.INCREASING,
            "up": cls.INCREASING,
            "v_shaped": cls.V_SHAPED,
            "vshaped": cls.V_SHAPED,
            "v": cls.V_SHAPED,
        }
        if normalized not in aliases:
            raise ValueError(f"Unknown feature kind: {value!r}")
        return aliases[normalized]


@dataclass(frozen=True)
class FeatureSchema:
    """
    Ordered set of sensory features plus the Likert upper bound.

    Attributes:
        features: Ordered (feature_id, kind) pairs
        v_max: Upper bound of the [1, v_max] Likert scale
    """
    features: Tuple[Tuple[str, FeatureKind], ...]
    v_max: int = 5

    def __post_init__(self):
        object.__setattr__(self, "features", tuple((str(f), k) for f, k in self.features))

    @property
    def feature_ids(self) -> Tuple[str, ...]:
        return tuple(f for f, _ in self.features)

    @cached_property
    def kinds(self) -> Mapping[str, FeatureKind]:
        return MappingProxyType(dict(self.features))

    def kind_of(self, feature_id: str) -> FeatureKind:
        """Get the kind of a feature, raising ModelError if unknown."""
        try:
            return self.kinds[feature_id]
        except KeyError:
            raise ModelError(f"Feature {feature_id!r} is not in the schema") from None

    def __len__(self) -> int:
        return len(self.features)


@dataclass(frozen=True)
class CategorySet:
    """The set of item categories (parks, museums, cafes, ...)."""
    categories: FrozenSet[str]

    def __post_init__(self):
        object.__setattr__(self, "categories", frozenset(self.categories))

    def __contains__(self, category: str) -> bool:
        return category in self.categories

    def __len__(self) -> int:
        return len(self.categories)

    def sorted(self) -> List[str]:
        return sorted(self.categories)


@dataclass(frozen=True)
class AversionDeclaration:
    """
    A user's declared aversion to the extreme values of one feature.

    For increasing features only the aversion at v_max is declared and the
    aversion at 1 is implicitly 1. V-shaped features declare both ends.
    """
    feature_id: str
    a_at_max: float
    a_at_min: Optional[float] = None

    @property
    def min_endpoint(self) -> float:
        """Aversion at value 1 (1 when not declared)."""
        return 1.0 if self.a_at_min is None else self.a_at_min


@dataclass(frozen=True)
class UserProfile:
    """
    Profile of one user.

    Attributes:
        user_id: Unique user identifier
        preferences: category id -> declared preference in [1, v_max]
        aversions: feature id -> AversionDeclaration
        ratings: item id -> rating in [1, v_max]; unknown places are absent
        group: Optional population label used to evaluate groups separately
    """
    user_id: str
    preferences: Mapping[str, float]
    aversions: Mapping[str, AversionDeclaration]
    ratings: Mapping[str, float] = field(default_factory=dict)
    group: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "preferences", MappingProxyType(dict(self.preferences)))
        object.__setattr__(self, "aversions", MappingProxyType(dict(self.aversions)))
        object.__setattr__(self, "ratings", MappingProxyType(dict(self.ratings)))

    def preference(self, category: str) -> float:
        """Preference for a category (p_uc), raising ModelError if undeclared."""
        try:
            return self.preferences[category]
        except KeyError:
            raise ModelError(
                f"User {self.user_id!r} has no preference for category {category!r}"
            ) from None

    def aversion(self, feature_id: str) -> AversionDeclaration:
        """Declared aversion for a feature, raising ModelError if missing."""
        try:
            return self.aversions[feature_id]
        except KeyError:
            raise ModelError(
                f"User {self.user_id!r} has no aversion declaration for {feature_id!r}"
            ) from None

    def rated_items(self) -> List[str]:
        """Rated item ids in ascending order."""
        return sorted(self.ratings)

    def with_ratings(self, ratings: Mapping[str, float]) -> "UserProfile":
        """Copy of this profile with a different rating set."""
        return replace(self, ratings=dict(ratings))


@dataclass(frozen=True)
class ItemProfile:
    """
    Profile of one item (a place).

    Attributes:
        item_id: Unique item identifier
        name: Human-readable name
        category: Category id (c_i)
        feature_values: feature id -> crowd-sourced mean value in [1, v_max]
    """
    item_id: str
    name: str
    category: str
    feature_values: Mapping[str, float]

    def __post_init__(self):
        object.__setattr__(self, "feature_values", MappingProxyType(dict(self.feature_values)))

    def vector(self, schema: FeatureSchema) -> np.ndarray:
        """Feature values as a float vector in schema order."""
        try:
            return np.array([self.feature_values[f] for f in schema.feature_ids], dtype=float)
        except KeyError as e:
            raise ModelError(f"Item {self.item_id!r} has no value for feature {e.args[0]!r}") from None


@dataclass(frozen=True)
class Dataset:
    """Schema, categories, users and items of one recommendation domain."""
    schema: FeatureSchema
    categories: CategorySet
    users: Tuple[UserProfile, ...]
    items: Tuple[ItemProfile, ...]

    def __post_init__(self):
        object.__setattr__(self, "users", tuple(self.users))
        object.__setattr__(self, "items", tuple(self.items))

    @cached_property
    def items_by_id(self) -> Mapping[str, ItemProfile]:
        return MappingProxyType({item.item_id: item for item in self.items})

    @cached_property
    def users_by_id(self) -> Mapping[str, UserProfile]:
        return MappingProxyType({user.user_id: user for user in self.users})

    def user(self, user_id: str) -> UserProfile:
        """Look up a user by id."""
        try:
            return self.users_by_id[user_id]
        except KeyError:
            raise DatasetError(f"Unknown user id: {user_id!r}") from None

    def item(self, item_id: str) -> ItemProfile:
        """Look up an item by id."""
        try:
            return self.items_by_id[item_id]
        except KeyError:
            raise DatasetError(f"Unknown item id: {item_id!r}") from None

    def groups(self) -> List[str]:
        """Distinct user group labels, sorted (unlabelled users excluded)."""
        return sorted({u.group for u in self.users if u.group is not None})

    def with_users(self, users: Iterable[UserProfile]) -> "Dataset":
        """Copy of this dataset restricted to (or replaced by) the given users."""
        return replace(self, users=tuple(users))

    def rating_count(self) -> int:
        return sum(len(u.ratings) for u in self.users)

    def summary(self) -> Dict[str, int]:
        """Basic counts for logging."""
        return {
            "num_users": len(self.users),
            "num_items": len(self.items),
            "num_features": len(self.schema),
            "num_categories": len(self.categories),
            "num_ratings": self.rating_count(),
        }
