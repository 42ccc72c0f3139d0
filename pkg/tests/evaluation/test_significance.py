import pytest
from scipy import stats as scipy_stats

from src.errors import EvaluationError
from src.evaluation.significance import paired_t_test, stars


class TestPairedTTest:
    """Test the paired t-test and its degenerate cases."""

    def test_identical_samples(self):
        assert paired_t_test([0.2, 0.4, 0.3], [0.2, 0.4, 0.3]) == 1.0

    def test_constant_nonzero_difference(self):
        """Zero-variance differences with a non-zero mean give p = 0."""
        assert paired_t_test([1, 1, 1, 1, 1], [0, 0, 0, 0, 0]) == 0.0
        assert paired_t_test([1.1, 2.1, 3.1], [1.0, 2.0, 3.0]) == 0.0

    def test_matches_scipy(self):
        a = [0.31, 0.42, 0.29, 0.38, 0.35]
        b = [0.28, 0.36, 0.30, 0.31, 0.33]
        expected = scipy_stats.ttest_rel(a, b).pvalue
        assert paired_t_test(a, b) == pytest.approx(expected)
        assert 0.0 < paired_t_test(a, b) < 1.0

    def test_invalid_samples(self):
        with pytest.raises(EvaluationError):
            paired_t_test([1, 2], [1, 2, 3])
        with pytest.raises(EvaluationError):
            paired_t_test([1], [2])


class TestStars:
    """Test significance markers."""

    @pytest.mark.parametrize("p_value, marker", [(0.001, "**"), (0.0099, "**"), (0.01, "*"),
                                                 (0.049, "*"), (0.05, ""), (0.7, "")])
    def test_thresholds(self, p_value, marker):
        assert stars(p_value) == marker
