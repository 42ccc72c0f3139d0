"""
Loading and writing whole dataset directories.

A dataset directory holds four tables, each as .csv or .json:
- schema: feature_id, kind[, v_max]
- items: item_id, name, category, <feature_id>...
- users: user_id[, group], pref:<category>..., aversion:<feature>:max/min
- ratings: user_id, item_id, rating (empty rating = unknown place)

Loading is atomic: a Dataset is returned only when every file parses and
every invariant holds.
"""

import logging
from collections import defaultdict
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from ..domain.defaults import default_schema
from ..domain.models import Dataset, FeatureKind, UserProfile
from ..domain.validation import ValidationResult, validate
from ..errors import DatasetParseError, DatasetValidationError
from .file_loader import find_table, format_number, write_table
from .readers import read_items, read_ratings, read_schema, read_users
from .schemas import END_MAX, END_MIN, aversion_column, pref_column

logger = logging.getLogger(__name__)


def load_dataset(dataset_dir: Path, schema_path: Optional[Path] = None,
                 integer_values: bool = True) -> Dataset:
    """
    Load and validate a dataset directory.

    Args:
        dataset_dir: Directory with the items, users and ratings tables
        schema_path: Schema file overriding the directory's own; when
            neither exists the default five-feature schema is used
        integer_values: Require integral ratings, preferences and aversions

    Returns:
        Validated Dataset

    Raises:
        DatasetParseError: missing/malformed file or column
        DatasetValidationError: the parsed data breaks an invariant
    """
    dataset_dir = Path(dataset_dir)
    if not dataset_dir.is_dir():
        raise DatasetParseError("dataset directory not found", str(dataset_dir))

    schema_file = Path(schema_path) if schema_path else find_table(dataset_dir, "schema", required=False)
    if schema_file is None:
        schema = default_schema()
        logger.info("No schema file found, using the default feature schema")
    else:
        schema = read_schema(schema_file)

    items = read_items(find_table(dataset_dir, "items"), schema)
    user_records, categories = read_users(find_table(dataset_dir, "users"), schema)
    ratings_file = find_table(dataset_dir, "ratings")
    rating_records, dropped = read_ratings(ratings_file)
    if dropped:
        logger.info(f"Dropped {dropped} unknown-place answers from the ratings")

    known_users = {record["user_id"] for record in user_records}
    violations: List[str] = []
    ratings: Dict[str, Dict[str, float]] = defaultdict(dict)
    rating_rows: Dict[Tuple[str, str], str] = {}
    for user_id, item_id, rating, row in rating_records:
        location = f"{ratings_file.name} row {row}"
        if user_id not in known_users:
            violations.append(f"{location}: rating of item {item_id!r} by unknown user {user_id!r}")
        elif item_id in ratings[user_id]:
            violations.append(f"{location}: user {user_id!r}: item {item_id!r} is rated more than once")
        else:
            ratings[user_id][item_id] = rating
            rating_rows[(user_id, item_id)] = location

    users = [
        UserProfile(
            user_id=record["user_id"],
            preferences=record["preferences"],
            aversions=record["aversions"],
            ratings=ratings.get(record["user_id"], {}),
            group=record["group"],
        )
        for record in user_records
    ]
    dataset = Dataset(schema=schema, categories=categories, users=tuple(users), items=tuple(items))

    violations.extend(validate(dataset, integer_values=integer_values, rating_rows=rating_rows))
    result = ValidationResult.from_errors(violations)
    if not result:
        raise DatasetValidationError(result.errors)

    logger.info(f"Loaded dataset from {dataset_dir}: {dataset.summary()}")
    return dataset


def write_dataset(dataset: Dataset, directory: Path, fmt: str = "csv") -> List[Path]:
    """
    Write a dataset directory that ``load_dataset`` reads back unchanged.

    Args:
        dataset: Dataset to write
        directory: Target directory (created if missing)
        fmt: 'csv' or 'json'

    Returns:
        Paths written (schema, items, users, ratings)
    """
    if fmt not in ("csv", "json"):
        raise ValueError(f"Unknown dataset format: {fmt!r} (expected csv or json)")
    directory = Path(directory)
    schema = dataset.schema
    suffix = f".{fmt}"
    written = []

    written.append(write_table(
        [{"feature_id": f, "kind": kind.value, "v_max": schema.v_max} for f, kind in schema.features],
        ["feature_id", "kind", "v_max"],
        directory / f"schema{suffix}",
    ))

    written.append(write_table(
        [
            {"item_id": item.item_id, "name": item.name, "category": item.category,
             **{f: format_number(item.feature_values[f]) for f in schema.feature_ids}}
            for item in sorted(dataset.items, key=lambda i: i.item_id)
        ],
        ["item_id", "name", "category", *schema.feature_ids],
        directory / f"items{suffix}",
    ))

    categories = dataset.categories.sorted()
    aversion_columns = [aversion_column(f, END_MAX) for f in schema.feature_ids]
    aversion_columns += [aversion_column(f, END_MIN) for f, kind in schema.features
                         if kind is FeatureKind.V_SHAPED]
    with_groups = any(user.group is not None for user in dataset.users)
    user_columns = ["user_id", *(["group"] if with_groups else []),
                    *(pref_column(c) for c in categories), *aversion_columns]
    user_records = []
    for user in sorted(dataset.users, key=lambda u: u.user_id):
        record = {"user_id": user.user_id, "group": user.group}
        record.update({pref_column(c): format_number(user.preferences[c]) for c in categories})
        for feature_id, kind in schema.features:
            declaration = user.aversions[feature_id]
            record[aversion_column(feature_id, END_MAX)] = format_number(declaration.a_at_max)
            if kind is FeatureKind.V_SHAPED:
                record[aversion_column(feature_id, END_MIN)] = format_number(declaration.min_endpoint)
        user_records.append(record)
    written.append(write_table(user_records, user_columns, directory / f"users{suffix}"))

    written.append(write_table(
        [
            {"user_id": user.user_id, "item_id": item_id, "rating": format_number(rating)}
            for user in sorted(dataset.users, key=lambda u: u.user_id)
            for item_id, rating in sorted(user.ratings.items())
        ],
        ["user_id", "item_id", "rating"],
        directory / f"ratings{suffix}",
    ))

    logger.info(f"Wrote dataset ({fmt}) to {directory}")
    return written
