"""
Per-user k-fold cross-validation of algorithm configurations.

For every configuration and fold: fit (Ind only) on the training ratings,
predict and rank each user's test items, compute per-user metrics and
average them. All configurations share one FoldPlan, so they are scored on
identical (user, test item) pairs.

Aggregation:
- Ranking metrics are macro-averaged over users with at least one relevant
  test item, then over folds
- MAE and RMSE are pooled over every test pair of every fold
- Coverage is the per-fold share of users with a non-empty list, averaged
"""

import logging
import math
from typing import Dict, List, Optional, Sequence, Tuple

from ..domain.models import Dataset, UserProfile
from ..errors import EvaluationError
from ..model.predictor import AlgorithmConfig, Scorer, fit_model, rank
from ..utils.cache import CompatibilityCache
from ..utils.hashing import hash_pairs
from ..utils.timing import StageTimer
from .folds import FoldPlan, build_fold_plan
from .metrics import (
    average_precision,
    mae_rmse,
    precision_recall_f1,
    reciprocal_rank,
    relevance,
    user_coverage,
)
from .report import EvaluationReport, FoldResult, MetricRow, build_report

logger = logging.getLogger(__name__)

RANKING_METRICS = ("precision", "recall", "f1", "map", "mrr")


def split_eligible(users: Sequence[UserProfile], min_ratings: int) -> Tuple[List[UserProfile], List[str]]:
    """
    Separate users with at least ``min_ratings`` ratings from the rest.

    Returns:
        (eligible users sorted by id, excluded user ids sorted)
    """
    ordered = sorted(users, key=lambda u: u.user_id)
    eligible = [u for u in ordered if len(u.ratings) >= min_ratings]
    excluded = [u.user_id for u in ordered if len(u.ratings) < min_ratings]
    return eligible, excluded


def _mean(values: List[float]) -> float:
    return math.fsum(values) / len(values) if values else float("nan")


def _fold_average(values: Sequence[float]) -> float:
    finite = [v for v in values if not math.isnan(v)]
    return _mean(finite) if finite else 0.0


class _FoldEvaluator:
    """Evaluates configurations fold by fold on one plan."""

    def __init__(self, dataset: Dataset, users: List[UserProfile], plan: FoldPlan,
                 top_n: int, relevance_threshold: float, scorer: Scorer, timer: StageTimer):
        self.dataset = dataset
        self.users = users
        self.plan = plan
        self.top_n = top_n
        self.threshold = relevance_threshold
        self.scorer = scorer
        self.timer = timer
        self.items = dataset.items_by_id
        self.pair_digests = [hash_pairs(plan.test_pairs(fold)) for fold in range(plan.n_folds)]

    def run(self, config: AlgorithmConfig) -> Tuple[MetricRow, List[FoldResult]]:
        folds: List[FoldResult] = []
        predictions: List[float] = []
        truths: List[float] = []
        for fold in range(self.plan.n_folds):
            result, fold_predictions, fold_truths = self._evaluate_fold(config, fold)
            folds.append(result)
            predictions.extend(fold_predictions)
            truths.extend(fold_truths)

        mae, rmse = mae_rmse(predictions, truths)
        averaged = {metric: _fold_average([f.value(metric) for f in folds]) for metric in RANKING_METRICS}
        row = MetricRow(
            algorithm=config.name,
            category=config.category,
            mae=mae,
            rmse=rmse,
            coverage=_fold_average([f.coverage for f in folds]),
            **averaged,
        )
        return row, folds

    def _evaluate_fold(self, config: AlgorithmConfig, fold: int) -> Tuple[FoldResult, List[float], List[float]]:
        training = {
            user.user_id: {item_id: user.ratings[item_id] for item_id in self.plan.training(user.user_id, fold)}
            for user in self.users
        }
        with self.timer.time(f"fit.{config.name}"):
            model = fit_model(config, self.users, training, self.items, self.dataset.schema,
                              self.top_n, self.threshold, self.scorer)

        per_metric: Dict[str, List[float]] = {metric: [] for metric in RANKING_METRICS}
        predictions: List[float] = []
        truths: List[float] = []
        lists = []
        with self.timer.time(f"rank.{config.name}"):
            for user in self.users:
                test_ids = self.plan.test(user.user_id, fold)
                alpha = model.alpha_for(user.user_id)
                scored = [
                    (item_id, self.scorer.predict(user, self.items[item_id], config, alpha))
                    for item_id in test_ids
                ]
                ranked = rank(scored, self.top_n)
                lists.append(ranked)
                for item_id, predicted in scored:
                    predictions.append(predicted)
                    truths.append(float(user.ratings[item_id]))

                labels = {item_id: relevance(user.ratings[item_id], self.threshold) for item_id in test_ids}
                if not any(labels.values()):
                    continue
                precision, recall, f1 = precision_recall_f1(ranked, labels, self.top_n)
                per_metric["precision"].append(precision)
                per_metric["recall"].append(recall)
                per_metric["f1"].append(f1)
                per_metric["map"].append(average_precision(ranked, labels, self.top_n))
                per_metric["mrr"].append(reciprocal_rank(ranked, labels, self.top_n))

        mae, rmse = mae_rmse(predictions, truths)
        result = FoldResult(
            algorithm=config.name,
            fold=fold,
            mae=mae,
            rmse=rmse,
            coverage=user_coverage(lists),
            ranked_users=len(per_metric["map"]),
            test_pairs=len(predictions),
            test_pairs_sha256=self.pair_digests[fold],
            **{metric: _mean(values) for metric, values in per_metric.items()},
        )
        return result, predictions, truths


def cross_validate(dataset: Dataset, configs: Sequence[AlgorithmConfig],
                   plan: Optional[FoldPlan] = None, top_n: int = 5,
                   relevance_threshold: float = 4, n_folds: int = 5, seed: int = 42,
                   header: Sequence[Tuple[str, str]] = (),
                   cache: Optional[CompatibilityCache] = None) -> EvaluationReport:
    """
    Cross-validate every configuration on one shared fold plan.

    Args:
        dataset: Validated dataset
        configs: Configurations to evaluate
        plan: Fold plan to use; built from ``n_folds`` and ``seed`` when absent
        top_n: Length of the recommendation lists (N)
        relevance_threshold: Minimum rating counted as relevant
        n_folds: Number of folds when building the plan
        seed: Fold seed when building the plan
        header: Resolved settings written into the report header
        cache: Compatibility cache (a fresh one is used when absent)

    Returns:
        EvaluationReport with rows ordered by MAP

    Raises:
        EvaluationError: no configurations or no user with enough ratings
    """
    if not configs:
        raise EvaluationError("No algorithm configurations to evaluate")

    if plan is None:
        users, excluded = split_eligible(dataset.users, n_folds)
        if not users:
            raise EvaluationError(f"no evaluable users: every user has fewer than {n_folds} ratings")
        plan = build_fold_plan(users, n_folds, seed)
    else:
        planned = set(plan.user_ids)
        users = [dataset.user(user_id) for user_id in plan.user_ids]
        excluded = sorted(u.user_id for u in dataset.users if u.user_id not in planned)
        if not users:
            raise EvaluationError("no evaluable users: the fold plan is empty")

    if excluded:
        logger.info(f"Excluded {len(excluded)} users with fewer than {plan.n_folds} ratings")
    logger.info(f"Cross-validating {len(configs)} configurations on {len(users)} users, "
                f"{plan.n_folds} folds, N={top_n}")

    scorer = Scorer(dataset.schema, cache if cache is not None else CompatibilityCache())
    timer = StageTimer()
    evaluator = _FoldEvaluator(dataset, users, plan, top_n, relevance_threshold, scorer, timer)

    rows: List[MetricRow] = []
    folds: List[FoldResult] = []
    for config in configs:
        row, config_folds = evaluator.run(config)
        rows.append(row)
        folds.extend(config_folds)
        logger.info(f"{config.name}: MAP={row.map:.4f} MAE={row.mae:.4f} RMSE={row.rmse:.4f}")

    timer.log_summary()
    if scorer.cache is not None:
        logger.debug(f"Compatibility cache: {scorer.cache.get_stats()}")
    return build_report(rows, folds, header, excluded, min_ratings=plan.n_folds)

