"""
Shared fixtures: a hand-built dataset, the bundled sample directory and a
synthetic dataset factory.
"""

from pathlib import Path
from typing import Dict, Optional, Tuple

import pytest

from src.domain.models import (
    AversionDeclaration,
    CategorySet,
    Dataset,
    FeatureKind,
    FeatureSchema,
    ItemProfile,
    UserProfile,
)
from src.synthetic import AlphaDistribution, SyntheticSpec, generate_synthetic

SAMPLE_DIR = Path(__file__).resolve().parent.parent / "data" / "sample"


def make_user(user_id: str, preferences: Dict[str, float],
              aversions: Dict[str, Tuple[float, Optional[float]]],
              ratings: Optional[Dict[str, float]] = None, group: Optional[str] = None) -> UserProfile:
    """Build a user from {feature: (a_at_max, a_at_min)} declarations."""
    return UserProfile(
        user_id=user_id,
        preferences=preferences,
        aversions={f: AversionDeclaration(f, a_max, a_min) for f, (a_max, a_min) in aversions.items()},
        ratings=ratings or {},
        group=group,
    )


@pytest.fixture
def schema():
    """Two-feature schema: noise (increasing) and brightness (v-shaped)."""
    return FeatureSchema(
        features=(("noise", FeatureKind.INCREASING), ("brightness", FeatureKind.V_SHAPED)),
        v_max=5,
    )


@pytest.fixture
def tiny_dataset(schema):
    """Two users, three items, two categories."""
    items = (
        ItemProfile("i1", "Quiet Park", "parks", {"noise": 1.0, "brightness": 2.6}),
        ItemProfile("i2", "Busy Cafe", "cafes", {"noise": 5.0, "brightness": 3.0}),
        ItemProfile("i3", "Plaza", "parks", {"noise": 3.0, "brightness": 1.0}),
    )
    users = (
        make_user("u1", {"parks": 5, "cafes": 2},
                  {"noise": (5, None), "brightness": (4, 3)},
                  {"i1": 5, "i2": 2, "i3": 4}, group="asd"),
        make_user("u2", {"parks": 3, "cafes": 4},
                  {"noise": (2, None), "brightness": (2, 2)},
                  {"i1": 3, "i2": 4}, group="nt"),
    )
    return Dataset(schema=schema, categories=CategorySet(frozenset({"parks", "cafes"})),
                   users=users, items=items)


@pytest.fixture
def sample_dir():
    """The bundled 3-user/5-item dataset directory."""
    return SAMPLE_DIR


@pytest.fixture
def synthetic():
    """Factory: synthetic(n_users=..., alpha='point:1', ...) -> (dataset, truth)."""
    def build(alpha: str = "uniform", **overrides):
        spec = SyntheticSpec(alpha=AlphaDistribution.parse(alpha), **overrides)
        return generate_synthetic(spec)
    return build
