"""
Scoring model for the recommender.

This package provides:
- Aversion curves, feature compatibility and the ideal vector
- Item-level aggregation measures (Min, Ave, Cos, RMSD) and MC scores
- Rating prediction, per-user alpha fitting and Top-N ranking
"""

from .aversion import (
    AversionCurve,
    IdealVector,
    estimated_aversion,
    feature_compatibilities,
    feature_compatibility,
    ideal_value,
    ideal_vector,
    line_down,
    line_up,
    user_curves,
)
from .aggregation import (
    Measure,
    compat_ave,
    compat_cos,
    compat_min,
    compat_rmsd,
    cosine,
    item_compatibility,
    mc_score,
    rmsd,
)
from .predictor import (
    AlgorithmConfig,
    AlphaObjective,
    Family,
    FittedModel,
    RankedList,
    Scorer,
    algorithm_matrix,
    alpha_grid,
    alpha_identifiable,
    fit_alpha,
    fit_model,
    fuse,
    predict_rating,
    rank,
    rounding_interval,
    top_n,
)

__all__ = [
    # Aversion
    "AversionCurve",
    "IdealVector",
    "estimated_aversion",
    "feature_compatibilities",
    "feature_compatibility",
    "ideal_value",
    "ideal_vector",
    "line_down",
    "line_up",
    "user_curves",
    # Aggregation
    "Measure",
    "compat_ave",
    "compat_cos",
    "compat_min",
    "compat_rmsd",
    "cosine",
    "item_compatibility",
    "mc_score",
    "rmsd",
    # Prediction
    "AlgorithmConfig",
    "AlphaObjective",
    "Family",
    "FittedModel",
    "RankedList",
    "Scorer",
    "algorithm_matrix",
    "alpha_grid",
    "alpha_identifiable",
    "fit_alpha",
    "fit_model",
    "fuse",
    "predict_rating",
    "rank",
    "rounding_interval",
    "top_n",
]
