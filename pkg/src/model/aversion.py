"""
Per-feature aversion interpolation and compatibility.

Users only declare their aversion to the extreme values of each feature.
The aversion to intermediate values is interpolated with straight lines:

- increasing features use one rising line from (1, 1) to (v_max, a_at_max)
- v-shaped features take the upper envelope of that rising line and a
  falling line from (1, a_at_min) to (v_max, 1)

Compatibility is the complement of aversion on the Likert scale, and the
ideal value of a feature is the point of minimum aversion.
"""

from dataclasses import dataclass
from typing import Dict, Tuple, Union

import numpy as np

from ..domain.models import AversionDeclaration, FeatureKind, FeatureSchema, ItemProfile, UserProfile
from ..errors import ModelError


FeatureValues = Union[float, np.ndarray]


def _fraction(x: FeatureValues, v_max: int) -> np.ndarray:
    """Position of x along [1, v_max] as a fraction in [0, 1]."""
    values = np.asarray(x, dtype=float)
    outside = ~((values >= 1.0) & (values <= v_max))
    if np.any(outside):
        raise ModelError(f"Feature value {values[outside].flat[0]} is outside [1, {v_max}]")
    return (values - 1.0) / (v_max - 1.0)


def _like(x: FeatureValues, result: np.ndarray) -> FeatureValues:
    return result if np.ndim(x) else float(result)


def line_up(x: FeatureValues, a_at_max: float, v_max: int) -> FeatureValues:
    """
    Rising aversion line through (1, 1) and (v_max, a_at_max).

    Evaluated as a convex combination of the endpoints so both endpoints are
    reproduced exactly. Accepts a scalar or an array of feature values.
    """
    t = _fraction(x, v_max)
    return _like(x, (1.0 - t) + a_at_max * t)


def line_down(x: FeatureValues, a_at_min: float, v_max: int) -> FeatureValues:
    """Falling aversion line through (1, a_at_min) and (v_max, 1)."""
    t = _fraction(x, v_max)
    return _like(x, a_at_min * (1.0 - t) + t)


@dataclass(frozen=True)
class AversionCurve:
    """
    Interpolated aversion of one user to one feature over [1, v_max].

    Attributes:
        feature_id: Feature the curve describes
        kind: Increasing or v-shaped
        v_max: Likert upper bound
        a_at_min: Aversion at value 1 (always 1 for increasing features)
        a_at_max: Aversion at value v_max
    """
    feature_id: str
    kind: FeatureKind
    v_max: int
    a_at_min: float
    a_at_max: float

    @classmethod
    def from_declaration(cls, declaration: AversionDeclaration, kind: FeatureKind,
                         v_max: int) -> "AversionCurve":
        a_at_min = 1.0 if kind is FeatureKind.INCREASING else declaration.min_endpoint
        return cls(
            feature_id=declaration.feature_id,
            kind=kind,
            v_max=v_max,
            a_at_min=float(a_at_min),
            a_at_max=float(declaration.a_at_max),
        )

    def __call__(self, x: FeatureValues) -> FeatureValues:
        return estimated_aversion(self, x)


def estimated_aversion(curve: AversionCurve, x: FeatureValues) -> FeatureValues:
    """
    Estimated aversion of the user to value ``x`` of the feature.

    ``x`` may be a scalar or an array; the result has the same shape.

    Raises:
        ModelError: if any x is outside [1, v_max]
    """
    values = np.asarray(x, dtype=float)
    aversion = np.asarray(line_up(values, curve.a_at_max, curve.v_max))
    if curve.kind is FeatureKind.V_SHAPED:
        aversion = np.maximum(aversion, line_down(values, curve.a_at_min, curve.v_max))
    # guard the last ulp so the range invariant holds for real endpoints
    return _like(x, np.clip(aversion, 1.0, float(curve.v_max)))


def feature_compatibility(curve: AversionCurve, x: FeatureValues) -> FeatureValues:
    """Compatibility of value ``x`` with the user: v_max + 1 - aversion."""
    return curve.v_max + 1.0 - estimated_aversion(curve, x)


def ideal_value(curve: AversionCurve) -> float:
    """
    Most compatible value of the feature.

    Increasing features are ideal at 1. For v-shaped features this is where
    the rising and falling lines cross; a flat curve (both endpoints 1) has
    no unique minimum and resolves to the scale midpoint.
    """
    if curve.kind is FeatureKind.INCREASING:
        return 1.0
    rise = curve.a_at_max - 1.0
    fall = curve.a_at_min - 1.0
    if rise + fall == 0:
        return (curve.v_max + 1.0) / 2.0
    return (rise + fall * curve.v_max) / (rise + fall)


@dataclass(frozen=True)
class IdealVector:
    """Per-feature ideal values of one user, in schema order."""
    feature_ids: Tuple[str, ...]
    values: Tuple[float, ...]

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)

    def as_dict(self) -> Dict[str, float]:
        return dict(zip(self.feature_ids, self.values))

    def __len__(self) -> int:
        return len(self.values)


def user_curves(user: UserProfile, schema: FeatureSchema) -> Tuple[AversionCurve, ...]:
    """Aversion curves of a user for every schema feature, in schema order."""
    return tuple(
        AversionCurve.from_declaration(user.aversion(feature_id), kind, schema.v_max)
        for feature_id, kind in schema.features
    )


def ideal_vector(user: UserProfile, schema: FeatureSchema) -> IdealVector:
    """The user's ideal item: ideal_value of every feature."""
    curves = user_curves(user, schema)
    return IdealVector(
        feature_ids=schema.feature_ids,
        values=tuple(ideal_value(curve) for curve in curves),
    )


def feature_compatibilities(user: UserProfile, item: ItemProfile,
                            schema: FeatureSchema) -> np.ndarray:
    """Compatibility of each of the item's features with the user, in schema order."""
    values = item.vector(schema)
    return np.array([
        feature_compatibility(curve, x)
        for curve, x in zip(user_curves(user, schema), values)
    ], dtype=float)
