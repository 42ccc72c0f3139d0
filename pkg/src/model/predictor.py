"""
Rating prediction, per-user alpha fitting and Top-N ranking.

Every algorithm except MC predicts a rating as the weighted mean

    r_hat = alpha * comp_iu + (1 - alpha) * p_uc

clamped to [1, v_max]. The families differ only in alpha:
- Ind fits one alpha per user by grid search on the training ratings
- C-only fixes alpha = 1, Pref-only fixes alpha = 0
MC ignores alpha and aggregates compatibilities and the preference together.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..domain.models import FeatureSchema, ItemProfile, UserProfile
from ..errors import ModelError
from ..utils.cache import CompatibilityCache
from .aggregation import Measure, item_compatibility, mc_score

logger = logging.getLogger(__name__)

# objective values closer than this are treated as ties
TIE_TOLERANCE = 1e-12
# slack on rounding boundaries and on comp == preference
ROUNDING_TOLERANCE = 1e-9


class Family(Enum):
    """Algorithm family."""
    IND = "Ind"
    MC = "MC"
    C_ONLY = "C-only"
    PREF_ONLY = "Pref-only"


class AlphaObjective(Enum):
    """What the per-user alpha search optimises on the training ratings."""
    MAP = "map"
    RMSE = "rmse"

    @classmethod
    def parse(cls, value: str) -> "AlphaObjective":
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(f"Unknown alpha objective: {value!r} (expected map or rmse)") from None


def alpha_grid(step: float) -> np.ndarray:
    """
    Alpha values 0, step, 2*step, ..., 1.

    Raises:
        ModelError: if step is outside (0, 1] or does not divide 1 evenly
    """
    if not 0 < step <= 1:
        raise ModelError(f"Alpha grid step {step} must be in (0, 1]")
    count = round(1.0 / step)
    if not math.isclose(count * step, 1.0, rel_tol=0, abs_tol=1e-9):
        raise ModelError(f"Alpha grid step {step} does not divide 1 evenly")
    return np.arange(count + 1, dtype=float) / count


@dataclass(frozen=True)
class AlgorithmConfig:
    """
    One algorithm configuration, e.g. Ind_Cos or Pref-only.

    Attributes:
        family: Ind, MC, C-only or Pref-only
        measure: Aggregation measure (None only for Pref-only)
        alpha_objective: Objective of the Ind alpha search
        alpha_grid_step: Spacing of the Ind alpha grid
    """
    family: Family
    measure: Optional[Measure] = None
    alpha_objective: AlphaObjective = AlphaObjective.MAP
    alpha_grid_step: float = 0.01

    def __post_init__(self):
        if (self.measure is None) != (self.family is Family.PREF_ONLY):
            raise ModelError(f"{self.family.value} requires "
                             f"{'no' if self.family is Family.PREF_ONLY else 'an'} aggregation measure")
        alpha_grid(self.alpha_grid_step)

    @property
    def name(self) -> str:
        if self.measure is None:
            return self.family.value
        return f"{self.family.value}_{self.measure.value}"

    @property
    def category(self) -> str:
        """Result category: the individualized model versus the baselines."""
        return "individualized" if self.family is Family.IND else "baseline"

    @property
    def fixed_alpha(self) -> Optional[float]:
        """Alpha for families that do not fit one (None for Ind and MC)."""
        if self.family is Family.C_ONLY:
            return 1.0
        if self.family is Family.PREF_ONLY:
            return 0.0
        return None

    @classmethod
    def parse(cls, name: str, alpha_objective: AlphaObjective = AlphaObjective.MAP,
              alpha_grid_step: float = 0.01) -> "AlgorithmConfig":
        """Parse an algorithm name such as ``Ind_Cos``, ``C-only_Min`` or ``Pref-only``."""
        text = str(name).strip()
        family_text, _, measure_text = text.rpartition("_") if "_" in text else (text, "", "")
        for family in Family:
            if family.value.lower() == family_text.lower():
                measure = Measure.parse(measure_text) if measure_text else None
                return cls(family, measure, alpha_objective, alpha_grid_step)
        raise ValueError(f"Unknown algorithm: {name!r}")


def algorithm_matrix(alpha_objective: AlphaObjective = AlphaObjective.MAP,
                     alpha_grid_step: float = 0.01) -> List[AlgorithmConfig]:
    """The 13 evaluated configurations: {Ind, MC, C-only} x measures, plus Pref-only."""
    configs = [
        AlgorithmConfig(family, measure, alpha_objective, alpha_grid_step)
        for family in (Family.IND, Family.MC, Family.C_ONLY)
        for measure in Measure
    ]
    configs.append(AlgorithmConfig(Family.PREF_ONLY, None, alpha_objective, alpha_grid_step))
    return configs


def fuse(comp: float, preference: float, alpha: float, v_max: int) -> float:
    """Weighted mean of compatibility and preference, clamped to [1, v_max]."""
    return min(max(alpha * comp + (1.0 - alpha) * preference, 1.0), float(v_max))


class Scorer:
    """
    Computes compatibilities and predictions for one schema.

    An optional CompatibilityCache memoises comp_iu and MC scores by
    (user id, item id, measure); share one cache only between users whose
    declared profiles do not change.
    """

    def __init__(self, schema: FeatureSchema, cache: Optional[CompatibilityCache] = None):
        self.schema = schema
        self.cache = cache

    def compatibility(self, user: UserProfile, item: ItemProfile, measure: Measure) -> float:
        """comp_iu under the given measure."""
        def compute() -> float:
            return item_compatibility(user, item, self.schema, measure)
        if self.cache is None:
            return compute()
        return self.cache.get_or_compute(("comp", user.user_id, item.item_id, measure.value), compute)

    def mc(self, user: UserProfile, item: ItemProfile, measure: Measure) -> float:
        """Multi-criteria score under the given measure."""
        def compute() -> float:
            return mc_score(user, item, self.schema, measure)
        if self.cache is None:
            return compute()
        return self.cache.get_or_compute(("mc", user.user_id, item.item_id, measure.value), compute)

    def predict(self, user: UserProfile, item: ItemProfile, config: AlgorithmConfig,
                alpha: Optional[float] = None) -> float:
        """
        Predicted rating of ``item`` for ``user``.

        Args:
            user: User profile
            item: Item to score
            config: Algorithm configuration
            alpha: Weight of compatibility; ignored by MC, defaults to the
                family's fixed alpha for C-only and Pref-only

        Raises:
            ModelError: alpha missing or outside [0, 1], unknown category preference
        """
        v_max = self.schema.v_max
        if config.family is Family.MC:
            return min(max(self.mc(user, item, config.measure), 1.0), float(v_max))

        if alpha is None:
            alpha = config.fixed_alpha
        if alpha is None or not 0.0 <= alpha <= 1.0:
            raise ModelError(f"Alpha {alpha} must be in [0, 1] for {config.name}")

        preference = float(user.preference(item.category))
        if config.measure is None:
            # Pref-only never needs compatibility; alpha is 0 for it
            comp = preference
        else:
            comp = self.compatibility(user, item, config.measure)
        return fuse(comp, preference, alpha, v_max)

    def component_vectors(self, user: UserProfile, items: Sequence[ItemProfile],
                          measure: Optional[Measure]) -> Tuple[np.ndarray, np.ndarray]:
        """(comp_iu, p_uc) vectors over ``items`` in the given order."""
        prefs = np.array([float(user.preference(item.category)) for item in items], dtype=float)
        if measure is None:
            return prefs.copy(), prefs
        comps = np.array([self.compatibility(user, item, measure) for item in items], dtype=float)
        return comps, prefs


def predict_rating(user: UserProfile, item: ItemProfile, schema: FeatureSchema,
                   config: AlgorithmConfig, alpha: Optional[float] = None) -> float:
    """Predicted rating (uncached convenience wrapper around Scorer.predict)."""
    return Scorer(schema).predict(user, item, config, alpha)


def grid_objectives(comps: np.ndarray, prefs: np.ndarray, ratings: np.ndarray,
                    alphas: np.ndarray, v_max: int, top_n: int,
                    relevance_threshold: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Average precision and RMSE of every alpha on a set of rated items.

    Items must be given in ascending item-id order: ranking ties are broken
    by position, which then matches the Top-N tie-break.

    Returns:
        (ap, rmse) arrays aligned with ``alphas``
    """
    from ..evaluation.metrics import average_precision_rows

    predictions = np.clip(alphas[:, None] * comps[None, :] + (1.0 - alphas)[:, None] * prefs[None, :],
                          1.0, float(v_max))
    rmse = np.sqrt(np.mean((predictions - ratings[None, :]) ** 2, axis=1))
    order = np.argsort(-predictions, axis=1, kind="stable")
    relevant = ratings >= relevance_threshold
    ap = average_precision_rows(relevant[order], int(relevant.sum()), top_n)
    return ap, rmse


def select_alpha(alphas: np.ndarray, ap: np.ndarray, rmse: np.ndarray,
                 objective: AlphaObjective) -> float:
    """
    Pick the best alpha: primary objective, then lower RMSE, then smallest alpha.
    """
    if objective is AlphaObjective.MAP:
        candidates = ap >= ap.max() - TIE_TOLERANCE
    else:
        candidates = rmse <= rmse.min() + TIE_TOLERANCE
    best_rmse = rmse[candidates].min()
    candidates &= rmse <= best_rmse + TIE_TOLERANCE
    return float(alphas[np.flatnonzero(candidates)[0]])


def fit_alpha(user: UserProfile, training: Mapping[str, float],
              items: Mapping[str, ItemProfile], schema: FeatureSchema,
              config: AlgorithmConfig, top_n: int = 5, relevance_threshold: float = 4,
              scorer: Optional[Scorer] = None) -> float:
    """
    Exhaustive grid search of the user's alpha on training ratings.

    Args:
        user: User profile (declared preferences and aversions are used)
        training: item id -> observed rating used for fitting
        items: item id -> ItemProfile lookup
        schema: Feature schema
        config: An Ind configuration (measure, objective and grid step)
        top_n: Cut-off of the average precision objective
        relevance_threshold: Minimum rating counted as relevant
        scorer: Optional shared (cached) scorer

    Returns:
        Best alpha in [0, 1]

    Raises:
        ModelError: empty training set or a non-Ind configuration
    """
    if config.family is not Family.IND:
        raise ModelError(f"{config.name} has no alpha to fit")
    if not training:
        raise ModelError(f"User {user.user_id!r} has no training ratings to fit alpha on")

    scorer = scorer or Scorer(schema)
    item_ids = sorted(training)
    rated = [items[item_id] for item_id in item_ids]
    comps, prefs = scorer.component_vectors(user, rated, config.measure)
    ratings = np.array([float(training[item_id]) for item_id in item_ids], dtype=float)

    alphas = alpha_grid(config.alpha_grid_step)
    ap, rmse = grid_objectives(comps, prefs, ratings, alphas, schema.v_max, top_n, relevance_threshold)
    alpha = select_alpha(alphas, ap, rmse, config.alpha_objective)
    logger.debug(f"Fitted alpha {alpha:.2f} for user {user.user_id} ({config.name})")
    return alpha


def rounding_interval(comps: np.ndarray, prefs: np.ndarray, ratings: np.ndarray,
                      v_max: int) -> Optional[Tuple[float, float]]:
    """
    Alphas in [0, 1] whose predictions round to every observed rating.

    A rating r is reproduced when the unclamped prediction lies in
    [r - 0.5, r + 0.5]; the bottom and top of the scale are open-ended
    because predictions are clamped before rounding.

    Returns:
        (low, high), or None when no alpha explains the ratings
    """
    low, high = 0.0, 1.0
    for comp, pref, rating in zip(comps, prefs, ratings):
        lower = rating - 0.5 if rating > 1 else -math.inf
        upper = rating + 0.5 if rating < v_max else math.inf
        slope = comp - pref
        if abs(slope) <= ROUNDING_TOLERANCE:
            if not lower - ROUNDING_TOLERANCE <= pref <= upper + ROUNDING_TOLERANCE:
                return None
            continue
        ends = sorted(((lower - pref) / slope, (upper - pref) / slope))
        low = max(low, ends[0] - ROUNDING_TOLERANCE)
        high = min(high, ends[1] + ROUNDING_TOLERANCE)
        if low > high:
            return None
    return low, high


def alpha_identifiable(user: UserProfile, ratings: Mapping[str, float], items: Mapping[str, ItemProfile],
                       schema: FeatureSchema, config: AlgorithmConfig, alpha: float,
                       scorer: Optional[Scorer] = None) -> bool:
    """
    Whether a fitted alpha is pinned to within one grid step by the ratings.

    Compatibility and preference must differ on at least two rated items.
    Integer ratings are read as rounded predictions: every alpha that
    reproduces them must then lie within one grid step of ``alpha``.
    """
    scorer = scorer or Scorer(schema)
    item_ids = sorted(ratings)
    comps, prefs = scorer.component_vectors(user, [items[item_id] for item_id in item_ids], config.measure)
    observed = np.array([float(ratings[item_id]) for item_id in item_ids], dtype=float)
    if int(np.count_nonzero(np.abs(comps - prefs) > ROUNDING_TOLERANCE)) < 2:
        return False
    if not np.all(observed == np.round(observed)):
        return True
    interval = rounding_interval(comps, prefs, observed, schema.v_max)
    if interval is None:
        return False
    step = config.alpha_grid_step + ROUNDING_TOLERANCE
    return alpha - step <= interval[0] and interval[1] <= alpha + step


@dataclass(frozen=True)
class FittedModel:
    """
    A configuration plus the alpha it uses for each user.

    Ind stores one fitted alpha per user; C-only and Pref-only use their
    fixed alpha; MC has none.
    """
    config: AlgorithmConfig
    alphas: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "alphas", MappingProxyType(dict(self.alphas)))

    def alpha_for(self, user_id: str) -> Optional[float]:
        fixed = self.config.fixed_alpha
        if fixed is not None or self.config.family is Family.MC:
            return fixed
        try:
            return self.alphas[user_id]
        except KeyError:
            raise ModelError(f"No fitted alpha for user {user_id!r} in {self.config.name}") from None


def fit_model(config: AlgorithmConfig, users: Iterable[UserProfile],
              training: Mapping[str, Mapping[str, float]], items: Mapping[str, ItemProfile],
              schema: FeatureSchema, top_n: int = 5, relevance_threshold: float = 4,
              scorer: Optional[Scorer] = None) -> FittedModel:
    """
    Fit a configuration for a set of users.

    Args:
        training: user id -> (item id -> rating); users absent here are skipped
    """
    if config.family is not Family.IND:
        return FittedModel(config)
    scorer = scorer or Scorer(schema)
    alphas: Dict[str, float] = {}
    for user in sorted(users, key=lambda u: u.user_id):
        ratings = training.get(user.user_id)
        if ratings:
            alphas[user.user_id] = fit_alpha(user, ratings, items, schema, config,
                                             top_n, relevance_threshold, scorer)
    return FittedModel(config, alphas)


@dataclass(frozen=True)
class RankedList:
    """Top-N recommendations, best first."""
    entries: Tuple[Tuple[str, float], ...]

    @property
    def item_ids(self) -> List[str]:
        return [item_id for item_id, _ in self.entries]

    @property
    def scores(self) -> List[float]:
        return [score for _, score in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def rank(scored: Iterable[Tuple[str, float]], n: int) -> RankedList:
    """Sort (item id, score) pairs by score descending, item id ascending; keep n."""
    if n < 1:
        raise ModelError(f"Top-N length {n} must be at least 1")
    ordered = sorted(scored, key=lambda entry: (-entry[1], entry[0]))
    return RankedList(tuple(ordered[:n]))


def top_n(user: UserProfile, candidates: Iterable[ItemProfile], schema: FeatureSchema,
          model: FittedModel, n: int, scorer: Optional[Scorer] = None) -> RankedList:
    """
    Rank candidate items for a user by predicted rating.

    Fewer than n candidates give a shorter list; input order never matters.
    """
    scorer = scorer or Scorer(schema)
    alpha = model.alpha_for(user.user_id)
    scored = [(item.item_id, scorer.predict(user, item, model.config, alpha)) for item in candidates]
    return rank(scored, n)
