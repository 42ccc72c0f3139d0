"""
Domain package for the recommender.

This package provides:
- Entity definitions (schema, categories, user and item profiles, dataset)
- The default feature and category catalogue
- Dataset invariant validation
"""

from .models import (
    AversionDeclaration,
    CategorySet,
    Dataset,
    FeatureKind,
    FeatureSchema,
    ItemProfile,
    UserProfile,
)
from .defaults import (
    DEFAULT_CATEGORIES,
    DEFAULT_FEATURES,
    FEATURE_CATALOGUE,
    ScaleConstants,
    category_names,
    default_schema,
)
from .validation import ValidationResult, validate, validate_likert, validate_range

__all__ = [
    # Models
    "AversionDeclaration",
    "CategorySet",
    "Dataset",
    "FeatureKind",
    "FeatureSchema",
    "ItemProfile",
    "UserProfile",
    # Defaults
    "DEFAULT_CATEGORIES",
    "DEFAULT_FEATURES",
    "FEATURE_CATALOGUE",
    "ScaleConstants",
    "category_names",
    "default_schema",
    # Validation
    "ValidationResult",
    "validate",
    "validate_likert",
    "validate_range",
]
