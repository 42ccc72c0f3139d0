"""
Synthetic datasets with a known latent truth.

Users, items and ratings are sampled from a seeded numpy Generator:
- preferences and aversion endpoints uniformly on the Likert integers
- item feature values uniformly on [1, v_max], kept to two decimals
- a latent alpha per user from the configured distribution
- observed rating = clamp(alpha * comp + (1 - alpha) * preference + noise),
  rounded to the nearest Likert integer unless exact ratings are requested

Every draw happens in a fixed order, so (spec, seed) fully determines the
output.
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from ..domain.defaults import ScaleConstants, category_names, default_schema
from ..domain.models import (
    AversionDeclaration,
    CategorySet,
    Dataset,
    FeatureKind,
    FeatureSchema,
    ItemProfile,
    UserProfile,
)
from ..errors import ConfigError
from ..model.aggregation import Measure
from ..model.predictor import Scorer, fuse
from ..parser.dataset import write_dataset
from ..parser.file_loader import write_table

logger = logging.getLogger(__name__)

IDENTIFIABILITY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class AlphaDistribution:
    """
    Distribution of the latent alpha.

    Written as ``uniform``, ``point:<a>`` or ``choice:<a1>,<a2>,...``.
    """
    kind: str = "uniform"
    values: Tuple[float, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "AlphaDistribution":
        name, _, args = str(text).strip().lower().partition(":")
        if name == "uniform" and not args:
            return cls("uniform")
        if name in ("point", "choice") and args:
            try:
                values = tuple(float(v) for v in args.split(","))
            except ValueError:
                raise ConfigError(f"Alpha distribution {text!r} has a non-numeric value") from None
            if any(not 0.0 <= v <= 1.0 for v in values):
                raise ConfigError(f"Alpha distribution {text!r} has a value outside [0, 1]")
            if name == "point" and len(values) != 1:
                raise ConfigError(f"Point alpha distribution {text!r} takes exactly one value")
            return cls(name, values)
        raise ConfigError(f"Unknown alpha distribution {text!r} (expected uniform, point:<a> or choice:<a>,...)")

    def sample(self, rng: np.random.Generator) -> float:
        if self.kind == "uniform":
            return float(rng.uniform(0.0, 1.0))
        if self.kind == "point":
            return self.values[0]
        return float(self.values[int(rng.integers(len(self.values)))])

    def __str__(self) -> str:
        if self.kind == "uniform":
            return "uniform"
        return f"{self.kind}:{','.join(repr(v) for v in self.values)}"


@dataclass(frozen=True)
class SyntheticSpec:
    """
    Shape of a synthetic population.

    Attributes:
        n_users: Number of users
        n_items: Number of items
        n_categories: Number of item categories
        schema: Feature schema (default five-feature schema)
        alpha: Latent alpha distribution
        noise_sigma: Standard deviation of the additive rating noise
        density: Probability that a user rated a given item
        seed: Generator seed
        measure: Aggregation measure used to generate compatibilities
        exact_ratings: Keep unrounded ratings
        min_ratings: Ratings each user gets at least (capped at n_items)
        group: Optional group label given to every user
    """
    n_users: int = 100
    n_items: int = 50
    n_categories: int = 14
    schema: FeatureSchema = field(default_factory=default_schema)
    alpha: AlphaDistribution = field(default_factory=AlphaDistribution)
    noise_sigma: float = 0.0
    density: float = 0.7
    seed: int = ScaleConstants.DEFAULT_SEED
    measure: Measure = Measure.AVE
    exact_ratings: bool = False
    min_ratings: int = ScaleConstants.DEFAULT_FOLDS
    group: Optional[str] = None

    def __post_init__(self):
        for name in ("n_users", "n_items", "n_categories"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be at least 1, got {getattr(self, name)}")
        if not 0.0 < self.density <= 1.0:
            raise ConfigError(f"density must be in (0, 1], got {self.density}")
        if self.noise_sigma < 0:
            raise ConfigError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if self.min_ratings < 0:
            raise ConfigError(f"min_ratings must be >= 0, got {self.min_ratings}")


@dataclass(frozen=True)
class LatentTruth:
    """
    Ground truth behind a synthetic dataset.

    Attributes:
        alphas: user id -> latent alpha
        noiseless: (user id, item id) -> clamped rating before noise and
            rounding, for every user-item pair
    """
    alphas: Mapping[str, float]
    noiseless: Mapping[Tuple[str, str], float]

    def __post_init__(self):
        object.__setattr__(self, "alphas", MappingProxyType(dict(self.alphas)))
        object.__setattr__(self, "noiseless", MappingProxyType(dict(self.noiseless)))


def _likert(rng: np.random.Generator, v_max: int, size: int) -> np.ndarray:
    return rng.integers(1, v_max + 1, size=size).astype(float)


def _round_rating(value: float) -> float:
    # half up, unlike numpy's half-to-even
    return float(math.floor(value + 0.5))


def _sample_items(rng: np.random.Generator, spec: SyntheticSpec, categories: List[str]) -> List[ItemProfile]:
    v_max = spec.schema.v_max
    width = len(str(spec.n_items))
    items = []
    for index in range(1, spec.n_items + 1):
        category = categories[int(rng.integers(len(categories)))]
        values = np.clip(np.round(rng.uniform(1.0, v_max, size=len(spec.schema)), 2), 1.0, v_max)
        items.append(ItemProfile(
            item_id=f"i{index:0{width}d}",
            name=f"Place {index}",
            category=category,
            feature_values=dict(zip(spec.schema.feature_ids, (float(v) for v in values))),
        ))
    return items


def _sample_profile(rng: np.random.Generator, spec: SyntheticSpec, categories: List[str],
                    user_id: str) -> UserProfile:
    v_max = spec.schema.v_max
    preferences = dict(zip(categories, (float(p) for p in _likert(rng, v_max, len(categories)))))
    aversions: Dict[str, AversionDeclaration] = {}
    for feature_id, kind in spec.schema.features:
        a_at_max = float(_likert(rng, v_max, 1)[0])
        a_at_min = float(_likert(rng, v_max, 1)[0]) if kind is FeatureKind.V_SHAPED else None
        aversions[feature_id] = AversionDeclaration(feature_id, a_at_max, a_at_min)
    return UserProfile(user_id=user_id, preferences=preferences, aversions=aversions, group=spec.group)


def _sample_rated(rng: np.random.Generator, spec: SyntheticSpec) -> np.ndarray:
    """Indices of the items a user rated, ascending."""
    mask = rng.random(spec.n_items) < spec.density
    floor = min(spec.min_ratings, spec.n_items)
    missing = floor - int(mask.sum())
    if missing > 0:
        unrated = np.flatnonzero(~mask)
        mask[rng.choice(unrated, size=missing, replace=False)] = True
    return np.flatnonzero(mask)


def generate_synthetic(spec: SyntheticSpec) -> Tuple[Dataset, LatentTruth]:
    """
    Sample a dataset and its latent truth.

    Args:
        spec: Population shape and seed

    Returns:
        (dataset, latent truth)
    """
    rng = np.random.default_rng(spec.seed)
    schema = spec.schema
    v_max = schema.v_max
    categories = category_names(spec.n_categories)
    items = _sample_items(rng, spec, categories)
    scorer = Scorer(schema)

    width = len(str(spec.n_users))
    users: List[UserProfile] = []
    alphas: Dict[str, float] = {}
    noiseless: Dict[Tuple[str, str], float] = {}
    for index in range(1, spec.n_users + 1):
        user_id = f"u{index:0{width}d}"
        profile = _sample_profile(rng, spec, categories, user_id)
        alpha = spec.alpha.sample(rng)
        alphas[user_id] = alpha

        for item in items:
            comp = scorer.compatibility(profile, item, spec.measure)
            noiseless[(user_id, item.item_id)] = fuse(comp, profile.preference(item.category), alpha, v_max)

        ratings = {}
        for position in _sample_rated(rng, spec):
            item_id = items[position].item_id
            value = noiseless[(user_id, item_id)]
            if spec.noise_sigma > 0:
                value = min(max(value + float(rng.normal(0.0, spec.noise_sigma)), 1.0), float(v_max))
            ratings[item_id] = value if spec.exact_ratings else _round_rating(value)
        users.append(profile.with_ratings(ratings))

    dataset = Dataset(
        schema=schema,
        categories=CategorySet(frozenset(categories)),
        users=tuple(users),
        items=tuple(items),
    )
    logger.info(f"Generated synthetic dataset (seed {spec.seed}): {dataset.summary()}")
    return dataset, LatentTruth(alphas=alphas, noiseless=noiseless)


def is_identifiable(user: UserProfile, dataset: Dataset, measure: Measure = Measure.AVE,
                    item_ids: Optional[List[str]] = None) -> bool:
    """
    Whether a user's alpha can be recovered from ratings: compatibility and
    preference differ on at least two rated items.
    """
    scorer = Scorer(dataset.schema)
    differing = 0
    for item_id in item_ids if item_ids is not None else user.rated_items():
        item = dataset.item(item_id)
        comp = scorer.compatibility(user, item, measure)
        if abs(comp - user.preference(item.category)) > IDENTIFIABILITY_TOLERANCE:
            differing += 1
    return differing >= 2


def write_synthetic(dataset: Dataset, truth: LatentTruth, directory: Path, fmt: str = "csv") -> List[Path]:
    """
    Write a synthetic dataset plus latent_alpha.csv and latent_ratings.csv.

    Returns:
        Paths written
    """
    directory = Path(directory)
    written = write_dataset(dataset, directory, fmt)
    written.append(write_table(
        [{"user_id": user_id, "alpha": alpha} for user_id, alpha in sorted(truth.alphas.items())],
        ["user_id", "alpha"],
        directory / "latent_alpha.csv",
    ))
    written.append(write_table(
        [
            {"user_id": user_id, "item_id": item_id, "noiseless_rating": value}
            for (user_id, item_id), value in sorted(truth.noiseless.items())
        ],
        ["user_id", "item_id", "noiseless_rating"],
        directory / "latent_ratings.csv",
    ))
    return written
