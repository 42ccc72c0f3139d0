"""
Offline evaluation package.

This package provides:
- Top-N metrics (precision, recall, F1, MAP, MRR, MAE, RMSE, coverage)
- Per-user k-fold plans shared by every configuration
- Cross-validation of algorithm configurations
- Paired t-tests and report rendering
"""

from .cross_validation import cross_validate, split_eligible
from .folds import FoldPlan, build_fold_plan, create_k_folds
from .metrics import (
    average_precision,
    mae_rmse,
    precision_recall_f1,
    reciprocal_rank,
    relevance,
    user_coverage,
)
from .report import (
    EvaluationReport,
    FoldResult,
    MetricRow,
    build_report,
    render,
    render_csv,
    render_folds_csv,
    render_table,
    write_report,
)
from .significance import paired_t_test, stars

__all__ = [
    "cross_validate",
    "split_eligible",
    "FoldPlan",
    "build_fold_plan",
    "create_k_folds",
    "average_precision",
    "mae_rmse",
    "precision_recall_f1",
    "reciprocal_rank",
    "relevance",
    "user_coverage",
    "EvaluationReport",
    "FoldResult",
    "MetricRow",
    "build_report",
    "render",
    "render_csv",
    "render_folds_csv",
    "render_table",
    "write_report",
    "paired_t_test",
    "stars",
]
