"""
Default catalogue of sensory features and place categories.

These mirror the short preference/aversion questionnaire: fourteen activity
categories and the sensory features crowd-sourced for each place.
"""

from typing import Dict, List, Optional

from .models import FeatureKind, FeatureSchema


class ScaleConstants:
    """Constants of the Likert scale and the evaluation protocol."""

    DEFAULT_V_MAX = 5
    DEFAULT_RELEVANCE_THRESHOLD = 4
    DEFAULT_FOLDS = 5
    DEFAULT_TOP_N = 5
    DEFAULT_ALPHA_STEP = 0.01
    DEFAULT_SEED = 42


# Every feature the crowdsourcing platform collects, with its aversion shape.
# Temperature has no aversion question; it is only usable in custom schemas.
FEATURE_CATALOGUE: Dict[str, FeatureKind] = {
    "brightness": FeatureKind.V_SHAPED,
    "crowding": FeatureKind.INCREASING,
    "noise": FeatureKind.INCREASING,
    "smell": FeatureKind.INCREASING,
    "space": FeatureKind.V_SHAPED,
    "temperature": FeatureKind.V_SHAPED,
}

DEFAULT_FEATURES: List[str] = ["crowding", "noise", "smell", "brightness", "space"]

DEFAULT_CATEGORIES: List[str] = [
    "nature",
    "museums",
    "entertainment",
    "comic_shops",
    "clothing_stores",
    "malls_markets",
    "libraries",
    "bookshops",
    "sport",
    "pubs_cafes",
    "restaurants",
    "ice_cream_shops",
    "squares",
    "railway_stations",
]


def default_schema(v_max: int = ScaleConstants.DEFAULT_V_MAX,
                   features: Optional[List[str]] = None) -> FeatureSchema:
    """
    Build a schema from the feature catalogue.

    Args:
        v_max: Likert upper bound
        features: Feature ids to include (default: DEFAULT_FEATURES)

    Returns:
        FeatureSchema in the given feature order
    """
    chosen = features if features is not None else DEFAULT_FEATURES
    return FeatureSchema(
        features=tuple((f, FEATURE_CATALOGUE[f]) for f in chosen),
        v_max=v_max,
    )


def category_names(count: int) -> List[str]:
    """Deterministically ordered category ids for synthetic generation."""
    names = DEFAULT_CATEGORIES[:count]
    return names + [f"category_{i:02d}" for i in range(len(names) + 1, count + 1)]
