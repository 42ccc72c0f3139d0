"""
Item-level compatibility aggregation.

Collapses per-feature compatibilities into one compatibility of an item
with a user. Min and Ave work on the per-feature compatibility list; Cos
and RMSD compare the item's feature vector with the user's ideal vector.

The multi-criteria (MC) baseline reuses the same four measures on the
feature compatibilities extended with the category preference.

Reductions use ``math.fsum`` so results do not depend on feature order.
"""

import math
from enum import Enum
from typing import Sequence

import numpy as np

from ..domain.models import FeatureSchema, ItemProfile, UserProfile
from ..errors import ModelError
from .aversion import feature_compatibilities, ideal_vector


class Measure(Enum):
    """Aggregation measure for item compatibility."""
    MIN = "Min"
    AVE = "Ave"
    COS = "Cos"
    RMSD = "RMSD"

    @classmethod
    def parse(cls, value: str) -> "Measure":
        for measure in cls:
            if measure.value.lower() == str(value).strip().lower():
                return measure
        raise ValueError(f"Unknown aggregation measure: {value!r}")


def _non_empty(values: Sequence[float]) -> np.ndarray:
    array = np.asarray(values, dtype=float)
    if array.size == 0:
        raise ModelError("Cannot aggregate an empty compatibility list")
    return array


def _same_shape(a: Sequence[float], b: Sequence[float]):
    left = np.asarray(a, dtype=float)
    right = np.asarray(b, dtype=float)
    if left.shape != right.shape or left.ndim != 1:
        raise ModelError(f"Dimension mismatch: {left.shape} vs {right.shape}")
    if left.size == 0:
        raise ModelError("Cannot compare empty feature vectors")
    return left, right


def compat_min(comps: Sequence[float]) -> float:
    """Conjunctive: an item is as compatible as its worst feature."""
    return float(np.min(_non_empty(comps)))


def compat_ave(comps: Sequence[float]) -> float:
    """Additive: mean compatibility of the item's features."""
    array = _non_empty(comps)
    return math.fsum(array) / array.size


def cosine(a: Sequence[float], b: Sequence[float]) -> float:
    """Cosine similarity of two positive vectors, capped at 1."""
    left, right = _same_shape(a, b)
    dot = math.fsum(left * right)
    norms = math.sqrt(math.fsum(left * left) * math.fsum(right * right))
    if norms == 0:
        raise ModelError("Cosine similarity is undefined for a zero vector")
    return min(dot / norms, 1.0)


def compat_cos(item_vec: Sequence[float], ideal: Sequence[float], v_max: int) -> float:
    """
    Cosine similarity between item and ideal vector, rescaled to (1, v_max].

    The raw cosine is affinely mapped onto the Likert range so that it can be
    mixed with category preferences in rating prediction.
    """
    return 1.0 + (v_max - 1.0) * cosine(item_vec, ideal)


def rmsd(a: Sequence[float], b: Sequence[float]) -> float:
    """Root mean square deviation of two equally sized vectors."""
    left, right = _same_shape(a, b)
    diff = left - right
    return math.sqrt(math.fsum(diff * diff) / diff.size)


def compat_rmsd(item_vec: Sequence[float], ideal: Sequence[float], v_max: int) -> float:
    """
    Complement of the RMSD between item and ideal vector: v_max + 1 - RMSD.

    Not clamped: an item at the ideal scores v_max + 1. Predicted ratings are
    clamped later.
    """
    return v_max + 1.0 - rmsd(item_vec, ideal)


def item_compatibility(user: UserProfile, item: ItemProfile, schema: FeatureSchema,
                       measure: Measure) -> float:
    """
    Overall compatibility of an item with a user (comp_iu).

    Args:
        user: User profile with aversion declarations for every feature
        item: Item profile with values for every feature
        schema: Feature schema
        measure: Aggregation measure

    Returns:
        Compatibility on the Likert scale (RMSD may reach v_max + 1)
    """
    if measure is Measure.MIN:
        return compat_min(feature_compatibilities(user, item, schema))
    if measure is Measure.AVE:
        return compat_ave(feature_compatibilities(user, item, schema))
    ideal = ideal_vector(user, schema).as_array()
    if measure is Measure.COS:
        return compat_cos(item.vector(schema), ideal, schema.v_max)
    return compat_rmsd(item.vector(schema), ideal, schema.v_max)


def mc_score(user: UserProfile, item: ItemProfile, schema: FeatureSchema,
             measure: Measure) -> float:
    """
    Multi-criteria score: preference treated as one more criterion.

    The per-feature compatibilities are extended with the user's preference
    for the item's category and aggregated uniformly. Cos and RMSD compare
    the extended list with the all-v_max vector (every criterion fully met).
    """
    values = np.append(
        feature_compatibilities(user, item, schema),
        float(user.preference(item.category)),
    )
    if measure is Measure.MIN:
        return compat_min(values)
    if measure is Measure.AVE:
        return compat_ave(values)
    best = np.full(values.shape, float(schema.v_max))
    if measure is Measure.COS:
        return compat_cos(values, best, schema.v_max)
    return compat_rmsd(values, best, schema.v_max)
