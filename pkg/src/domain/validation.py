"""
Dataset invariant checks.

``validate`` walks a Dataset and returns one human-readable violation per
broken rule, naming the entity involved. It never raises and never mutates
its input, so it is safe to call repeatedly.
"""

import logging
import math
import numbers
from collections import Counter
from typing import Any, List, Mapping, Optional, Tuple

from .models import Dataset, FeatureKind, FeatureSchema, ItemProfile, UserProfile

logger = logging.getLogger(__name__)


class ValidationResult:
    """Outcome of a dataset check: valid flag plus every violation found."""

    def __init__(self, valid: bool, errors: List[str] = None):
        self.valid = valid
        self.errors = errors or []

    @classmethod
    def from_errors(cls, errors: List[str]) -> "ValidationResult":
        return cls(not errors, list(errors))

    def __bool__(self):
        return self.valid

    def __str__(self):
        if self.valid:
            return "Validation passed"
        return f"Validation failed: {'; '.join(self.errors)}"


def validate_range(value: Any, min_val: float = None, max_val: float = None,
                   field_name: str = None) -> Tuple[bool, Optional[str]]:
    """
    Validate that a numeric value is finite and within a range.

    Args:
        value: Value to validate
        min_val: Minimum value (inclusive), None for no minimum
        max_val: Maximum value (inclusive), None for no maximum
        field_name: Optional field name for error message

    Returns:
        Tuple of (is_valid, error_message)
    """
    field_label = f"'{field_name}'" if field_name else "Value"

    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        return False, f"{field_label} has type {type(value).__name__}, expected a number"

    if math.isnan(value) or math.isinf(value):
        return False, f"{field_label} {value} is not finite"

    if min_val is not None and value < min_val:
        return False, f"{field_label} {value} is below minimum {min_val}"

    if max_val is not None and value > max_val:
        return False, f"{field_label} {value} exceeds maximum {max_val}"

    return True, None


def validate_likert(value: Any, v_max: int, field_name: str,
                    integer: bool = True) -> Tuple[bool, Optional[str]]:
    """
    Validate a Likert answer: in [1, v_max] and, optionally, integral.

    Example:
        >>> validate_likert(7, 5, "rating")
        (False, "'rating' 7 exceeds maximum 5")
    """
    valid, error = validate_range(value, 1, v_max, field_name)
    if not valid:
        return valid, error
    if integer and float(value) != int(value):
        return False, f"'{field_name}' {value} is not an integer Likert value"
    return True, None


def _duplicates(ids: List[str]) -> List[str]:
    return sorted(i for i, n in Counter(ids).items() if n > 1)


def _validate_schema(schema: FeatureSchema) -> List[str]:
    errors = []
    if isinstance(schema.v_max, bool) or not isinstance(schema.v_max, int) or schema.v_max < 2:
        errors.append(f"schema: v_max {schema.v_max!r} must be an integer >= 2")
    if not schema.features:
        errors.append("schema: feature list is empty")
    for dup in _duplicates(list(schema.feature_ids)):
        errors.append(f"schema: feature id {dup!r} is declared more than once")
    for feature_id, kind in schema.features:
        if not isinstance(kind, FeatureKind):
            errors.append(f"schema: feature {feature_id!r} has no valid kind ({kind!r})")
    return errors


def _validate_item(item: ItemProfile, dataset: Dataset) -> List[str]:
    errors = []
    label = f"item {item.item_id!r}"
    if item.category not in dataset.categories:
        errors.append(f"{label}: category {item.category!r} is not a known category")
    v_max = dataset.schema.v_max
    for feature_id in dataset.schema.feature_ids:
        if feature_id not in item.feature_values:
            errors.append(f"{label}: missing value for feature {feature_id!r}")
            continue
        valid, error = validate_range(item.feature_values[feature_id], 1, v_max, feature_id)
        if not valid:
            errors.append(f"{label}: {error}")
    for feature_id in sorted(set(item.feature_values) - set(dataset.schema.feature_ids)):
        errors.append(f"{label}: value for unknown feature {feature_id!r}")
    return errors


def _validate_user(user: UserProfile, dataset: Dataset, integer_values: bool,
                   rating_rows: Mapping[Tuple[str, str], str]) -> List[str]:
    errors = []
    label = f"user {user.user_id!r}"
    v_max = dataset.schema.v_max

    for feature_id, kind in dataset.schema.features:
        declaration = user.aversions.get(feature_id)
        if declaration is None:
            errors.append(f"{label}: missing aversion declaration for feature {feature_id!r}")
            continue
        valid, error = validate_likert(declaration.a_at_max, v_max,
                                       f"aversion:{feature_id}:max", integer_values)
        if not valid:
            errors.append(f"{label}: {error}")
        if kind is FeatureKind.V_SHAPED:
            if declaration.a_at_min is None:
                errors.append(f"{label}: v-shaped feature {feature_id!r} needs an aversion for its minimum value")
            else:
                valid, error = validate_likert(declaration.a_at_min, v_max,
                                               f"aversion:{feature_id}:min", integer_values)
                if not valid:
                    errors.append(f"{label}: {error}")
        elif declaration.a_at_min is not None:
            errors.append(f"{label}: increasing feature {feature_id!r} must not declare "
                          f"an aversion for its minimum value")
    for feature_id in sorted(set(user.aversions) - set(dataset.schema.feature_ids)):
        errors.append(f"{label}: aversion declared for unknown feature {feature_id!r}")

    for category in dataset.categories.sorted():
        if category not in user.preferences:
            errors.append(f"{label}: missing preference for category {category!r}")
            continue
        valid, error = validate_likert(user.preferences[category], v_max,
                                       f"pref:{category}", integer_values)
        if not valid:
            errors.append(f"{label}: {error}")
    for category in sorted(set(user.preferences) - dataset.categories.categories):
        errors.append(f"{label}: preference for unknown category {category!r}")

    for item_id in sorted(user.ratings):
        location = rating_rows.get((user.user_id, item_id))
        prefix = f"{location}: {label}" if location else label
        if item_id not in dataset.items_by_id:
            errors.append(f"{prefix}: rating references unknown item {item_id!r}")
            continue
        valid, error = validate_likert(user.ratings[item_id], v_max,
                                       f"rating[{item_id}]", integer_values)
        if not valid:
            errors.append(f"{prefix}: {error}")
    return errors


def validate(dataset: Dataset, integer_values: bool = True,
             rating_rows: Optional[Mapping[Tuple[str, str], str]] = None) -> List[str]:
    """
    Check every dataset invariant.

    Args:
        dataset: Dataset to check
        integer_values: Require integral ratings, preferences and aversions.
            Disabled for oracle datasets generated with exact ratings.
        rating_rows: (user_id, item_id) -> file location such as
            "ratings.csv row 4", prefixed to that rating's violations

    Returns:
        List of violations; empty iff the dataset is well-formed
    """
    errors = _validate_schema(dataset.schema)
    if len(dataset.categories) == 0:
        errors.append("categories: category set is empty")

    for dup in _duplicates([item.item_id for item in dataset.items]):
        errors.append(f"items: item id {dup!r} appears more than once")
    for dup in _duplicates([user.user_id for user in dataset.users]):
        errors.append(f"users: user id {dup!r} appears more than once")

    for item in dataset.items:
        errors.extend(_validate_item(item, dataset))
    for user in dataset.users:
        errors.extend(_validate_user(user, dataset, integer_values, rating_rows or {}))

    if errors:
        logger.debug(f"Dataset validation found {len(errors)} violations")
    return errors
