import time

import numpy as np
import pytest

from src.domain import AversionDeclaration, FeatureKind, FeatureSchema
from src.errors import ModelError
from src.model.aversion import (
    AversionCurve,
    estimated_aversion,
    feature_compatibility,
    ideal_value,
    ideal_vector,
    line_down,
    line_up,
)
from tests.conftest import make_user


def v_curve(a_at_min, a_at_max, v_max=5):
    return AversionCurve("brightness", FeatureKind.V_SHAPED, v_max, float(a_at_min), float(a_at_max))


def inc_curve(a_at_max, v_max=5):
    return AversionCurve("noise", FeatureKind.INCREASING, v_max, 1.0, float(a_at_max))


class TestLines:
    """Test the two interpolation lines."""

    def test_line_up_midpoint(self):
        assert line_up(3, 4, 5) == 2.5

    def test_line_up_endpoints(self):
        """The rising line passes through (1, 1) and (v_max, a_at_max)."""
        assert line_up(1, 4, 5) == 1.0
        assert line_up(1, 2.7, 5) == 1.0
        assert line_up(5, 4, 5) == 4.0

    def test_line_down(self):
        """The falling line passes through (1, a_at_min) and (v_max, 1)."""
        assert line_down(1, 3, 5) == 3.0
        assert line_down(5, 3, 5) == 1.0
        assert line_down(3, 3, 5) == 2.0

    def test_out_of_range_rejected(self):
        """x outside [1, v_max] raises ModelError."""
        with pytest.raises(ModelError):
            line_up(0.5, 4, 5)
        with pytest.raises(ModelError):
            line_down(5.01, 3, 5)


class TestEstimatedAversion:
    """Test curve evaluation and compatibility."""

    def test_v_shaped_takes_upper_envelope(self):
        assert estimated_aversion(v_curve(3, 4), 3) == 2.5

    def test_flat_increasing(self):
        """a_at_max = 1 means no aversion anywhere."""
        curve = inc_curve(1)
        assert all(estimated_aversion(curve, x) == 1.0 for x in (1, 2.2, 3.7, 5))

    def test_v_shaped_endpoint(self):
        assert estimated_aversion(v_curve(3, 4), 1) == 3.0

    def test_curve_is_callable(self):
        assert v_curve(3, 4)(3) == 2.5

    def test_from_declaration_ignores_min_for_increasing(self):
        """Increasing curves always start at aversion 1."""
        curve = AversionCurve.from_declaration(AversionDeclaration("noise", 4, 3), FeatureKind.INCREASING, 5)
        assert curve.a_at_min == 1.0
        assert curve(1) == 1.0

    def test_compatibility(self):
        """Compatibility is v_max + 1 - aversion."""
        assert feature_compatibility(v_curve(3, 4), 3) == 3.5
        assert feature_compatibility(inc_curve(5), 1) == 5.0
        assert feature_compatibility(inc_curve(5), 5) == 1.0


class TestIdealValue:
    """Test the point of minimum aversion."""

    def test_increasing_ideal_is_one(self):
        assert ideal_value(inc_curve(5)) == 1.0

    def test_v_shaped_intersection(self):
        """Lines through (1, 3) and (5, 4) cross at x = 2.6."""
        assert ideal_value(v_curve(3, 4)) == pytest.approx(2.6)

    def test_flat_v_shaped_is_midpoint(self):
        assert ideal_value(v_curve(1, 1)) == 3.0

    def test_ideal_vector(self):
        """Componentwise ideal over a mixed schema."""
        schema = FeatureSchema((("noise", FeatureKind.INCREASING), ("brightness", FeatureKind.V_SHAPED)))
        user = make_user("u", {}, {"noise": (5, None), "brightness": (4, 3)})
        ideal = ideal_vector(user, schema)
        assert ideal.values[0] == 1.0
        assert ideal.values[1] == pytest.approx(2.6)
        assert ideal.as_dict()["brightness"] == pytest.approx(2.6)

    def test_all_ones_user(self):
        """A user without aversions gets the midpoint for v-shaped features."""
        schema = FeatureSchema((("noise", FeatureKind.INCREASING), ("space", FeatureKind.V_SHAPED)))
        user = make_user("u", {}, {"noise": (1, None), "space": (1, 1)})
        assert ideal_vector(user, schema).values == (1.0, 3.0)


class TestInterpolationProperties:
    """Randomized checks over many declared curves."""

    def test_random_curves(self):
        """Endpoints exact, values in range, ideal minimizes a 1001-point grid."""
        rng = np.random.default_rng(2024)
        grid = np.linspace(1.0, 5.0, 1001)
        start = time.perf_counter()
        for _ in range(1000):
            a_at_min, a_at_max = rng.uniform(1.0, 5.0, size=2)
            for curve in (v_curve(a_at_min, a_at_max), inc_curve(a_at_max)):
                assert curve(1.0) == curve.a_at_min
                assert curve(5.0) == curve.a_at_max
                values = curve(grid)
                assert values.min() >= 1.0 and values.max() <= 5.0
                compat = feature_compatibility(curve, np.array([1.0, 2.5, 5.0]))
                assert np.all((compat >= 1.0) & (compat <= 5.0))
                assert curve(ideal_value(curve)) <= values.min() + 1e-9
        assert time.perf_counter() - start < 1.0

    def test_array_matches_scalar(self):
        """Evaluating a grid at once gives the scalar results bit for bit."""
        curve = v_curve(3.3, 4.1)
        grid = np.linspace(1.0, 5.0, 41)
        assert curve(grid).tolist() == [curve(float(x)) for x in grid]

    def test_array_out_of_range_rejected(self):
        with pytest.raises(ModelError, match="5.5"):
            estimated_aversion(inc_curve(3), np.array([1.0, 5.5]))

    def test_increasing_is_non_decreasing(self):
        rng = np.random.default_rng(7)
        grid = np.linspace(1.0, 5.0, 401)
        for a_at_max in rng.uniform(1.0, 5.0, size=200):
            assert np.all(np.diff(inc_curve(a_at_max)(grid)) >= 0.0)

    def test_v_shaped_falls_then_rises(self):
        """Non-increasing up to the ideal value, non-decreasing after it."""
        rng = np.random.default_rng(8)
        grid = np.linspace(1.0, 5.0, 401)
        for a_at_min, a_at_max in rng.uniform(1.0, 5.0, size=(200, 2)):
            curve = v_curve(a_at_min, a_at_max)
            ideal = ideal_value(curve)
            values = curve(grid)
            before = values[grid <= ideal]
            after = values[grid >= ideal]
            assert np.all(np.diff(before) <= 1e-12)
            assert np.all(np.diff(after) >= -1e-12)

    def test_complementarity(self):
        """Compatibility plus aversion is exactly v_max + 1 at random real x."""
        rng = np.random.default_rng(9)
        for _ in range(500):
            v_max = int(rng.integers(2, 11))
            a_at_min, a_at_max = rng.uniform(1.0, v_max, size=2)
            x = float(rng.uniform(1.0, v_max))
            for curve in (v_curve(a_at_min, a_at_max, v_max), inc_curve(a_at_max, v_max)):
                assert feature_compatibility(curve, x) + estimated_aversion(curve, x) == v_max + 1.0
