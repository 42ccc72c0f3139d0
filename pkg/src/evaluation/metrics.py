"""
Top-N metrics: precision, recall, F1, average precision, reciprocal rank,
rating errors and user coverage.

Relevance is binary: a test item is relevant when its ground-truth rating
reaches the relevance threshold. All ranking metrics look at the first N
entries of a ranked list only.
"""

import math
from typing import Iterable, Mapping, Sequence, Tuple

import numpy as np

from ..errors import EvaluationError
from ..model.predictor import RankedList


def relevance(rating: float, threshold: float = 4) -> bool:
    """A rating is relevant when it reaches the threshold (inclusive)."""
    return rating >= threshold


def _hits(ranked: RankedList, labels: Mapping[str, bool], n: int) -> list:
    return [bool(labels.get(item_id, False)) for item_id in ranked.item_ids[:n]]


def precision_recall_f1(ranked: RankedList, labels: Mapping[str, bool],
                        n: int) -> Tuple[float, float, float]:
    """
    Precision@N, Recall@N and their harmonic mean.

    Args:
        ranked: Ranked test items
        labels: item id -> relevant, covering every test item
        n: Cut-off

    Returns:
        (precision, recall, f1); recall is 1 when the test set has no
        relevant item, and F1 is 0 when precision + recall is 0

    Example:
        relevance pattern (1, 0, 1, 0, 0) with 2 relevant test items
        -> (0.4, 1.0, 0.5714...)
    """
    hits = _hits(ranked, labels, n)
    total_relevant = sum(1 for relevant in labels.values() if relevant)
    found = sum(hits)
    precision = found / len(hits) if hits else 0.0
    recall = found / total_relevant if total_relevant else 1.0
    if precision + recall == 0:
        return precision, recall, 0.0
    return precision, recall, 2 * precision * recall / (precision + recall)


def average_precision(ranked: RankedList, labels: Mapping[str, bool], n: int) -> float:
    """
    Average precision at N, normalised by min(N, number of relevant items).

    Returns 0 when the test set has no relevant item.
    """
    total_relevant = sum(1 for relevant in labels.values() if relevant)
    if total_relevant == 0:
        return 0.0
    found = 0
    precisions = []
    for rank, relevant in enumerate(_hits(ranked, labels, n), start=1):
        if relevant:
            found += 1
            precisions.append(found / rank)
    return math.fsum(precisions) / min(n, total_relevant)


def average_precision_rows(relevant_sorted: np.ndarray, total_relevant: int, n: int) -> np.ndarray:
    """
    Average precision at N for many rankings of the same item set at once.

    Args:
        relevant_sorted: Boolean matrix, one ranking per row, best first
        total_relevant: Number of relevant items in the set
        n: Cut-off

    Returns:
        One average precision per row
    """
    rows = relevant_sorted.shape[0]
    if total_relevant == 0:
        return np.zeros(rows)
    top = relevant_sorted[:, :n].astype(float)
    ranks = np.arange(1, top.shape[1] + 1, dtype=float)
    precision_at_k = np.cumsum(top, axis=1) / ranks
    return (precision_at_k * top).sum(axis=1) / min(n, total_relevant)


def reciprocal_rank(ranked: RankedList, labels: Mapping[str, bool], n: int) -> float:
    """1 / rank of the first relevant item within the top N, 0 if none."""
    for rank, relevant in enumerate(_hits(ranked, labels, n), start=1):
        if relevant:
            return 1.0 / rank
    return 0.0


def mae_rmse(predictions: Sequence[float], truths: Sequence[float]) -> Tuple[float, float]:
    """
    Mean absolute error and root mean square error over all pairs.

    Raises:
        EvaluationError: if there are no pairs or the lengths differ
    """
    predicted = np.asarray(predictions, dtype=float)
    actual = np.asarray(truths, dtype=float)
    if predicted.shape != actual.shape:
        raise EvaluationError(f"{predicted.size} predictions for {actual.size} ground-truth ratings")
    if predicted.size == 0:
        raise EvaluationError("Cannot compute MAE/RMSE on an empty test set")
    errors = predicted - actual
    mae = math.fsum(np.abs(errors)) / errors.size
    rmse = math.sqrt(math.fsum(errors * errors) / errors.size)
    # RMSE >= MAE holds exactly; rounding can undercut it by one ulp
    return mae, max(rmse, mae)


def user_coverage(results: Iterable[RankedList]) -> float:
    """Fraction of users whose recommendation list is non-empty (0 if no users)."""
    lists = list(results)
    if not lists:
        return 0.0
    return sum(1 for ranked in lists if len(ranked) > 0) / len(lists)
