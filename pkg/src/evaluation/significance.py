"""
Paired Student t-test between per-fold metric samples of two algorithms.
"""

import logging
from typing import Sequence

import numpy as np
from scipy import stats

from ..errors import EvaluationError

logger = logging.getLogger(__name__)


def paired_t_test(a: Sequence[float], b: Sequence[float]) -> float:
    """
    Two-sided paired t-test p-value.

    When the paired differences have zero variance the t statistic is
    undefined; the p-value is then 1 if the mean difference is zero and 0
    otherwise.

    Raises:
        EvaluationError: unequal sample counts or fewer than two pairs
    """
    left = np.asarray(a, dtype=float)
    right = np.asarray(b, dtype=float)
    if left.shape != right.shape:
        raise EvaluationError(f"Paired samples differ in size: {left.size} vs {right.size}")
    if left.size < 2:
        raise EvaluationError("A paired t-test needs at least two samples")

    diffs = left - right
    if np.allclose(diffs, diffs.mean(), rtol=0, atol=1e-12):
        return 1.0 if abs(diffs.mean()) <= 1e-12 else 0.0

    result = stats.ttest_rel(left, right)
    return float(result.pvalue)


def stars(p_value: float) -> str:
    """'**' for p < 0.01, '*' for p < 0.05, '' otherwise."""
    if p_value < 0.01:
        return "**"
    if p_value < 0.05:
        return "*"
    return ""
