"""
Readers turning dataset tables into domain entities.

Each reader checks the columns it needs and parses every cell, raising
DatasetParseError with the file, row and column on the first malformed
value. Range and cross-reference checks are left to domain validation.
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from ..domain.defaults import ScaleConstants
from ..domain.models import AversionDeclaration, CategorySet, FeatureKind, FeatureSchema, ItemProfile
from ..errors import DatasetParseError
from .file_loader import cell_number, cell_text, is_missing, load_table
from .schemas import (
    AVERSION_PREFIX,
    END_MAX,
    END_MIN,
    ITEMS_TABLE,
    PREF_PREFIX,
    RATINGS_TABLE,
    SCHEMA_TABLE,
    USERS_TABLE,
    aversion_column,
    check_columns,
)

logger = logging.getLogger(__name__)


def _row_number(index: int) -> int:
    # 1-based data row, header excluded
    return index + 1


def _required_text(value, path: Path, row: int, column: str) -> str:
    if is_missing(value):
        raise DatasetParseError(f"row {row}: column {column!r} is empty", str(path))
    return cell_text(value)


def read_schema(path: Path) -> FeatureSchema:
    """Read the feature schema (feature_id, kind[, v_max])."""
    frame = load_table(path)
    check_columns(frame, SCHEMA_TABLE, str(path))

    features: List[Tuple[str, FeatureKind]] = []
    v_max_values = set()
    for index, record in enumerate(frame.to_dict(orient="records")):
        row = _row_number(index)
        feature_id = _required_text(record["feature_id"], path, row, "feature_id")
        try:
            kind = FeatureKind.parse(_required_text(record["kind"], path, row, "kind"))
        except ValueError as e:
            raise DatasetParseError(f"row {row}: column 'kind': {e}", str(path)) from None
        features.append((feature_id, kind))
        if "v_max" in record and not is_missing(record["v_max"]):
            v_max = cell_number(record["v_max"], path, row, "v_max")
            if not v_max.is_integer():
                raise DatasetParseError(f"row {row}: column 'v_max' must be an integer", str(path))
            v_max_values.add(int(v_max))

    if len(v_max_values) > 1:
        raise DatasetParseError(f"conflicting v_max values {sorted(v_max_values)}", str(path))
    v_max = v_max_values.pop() if v_max_values else ScaleConstants.DEFAULT_V_MAX
    return FeatureSchema(features=tuple(features), v_max=v_max)


def read_items(path: Path, schema: FeatureSchema) -> List[ItemProfile]:
    """Read items (item_id, name, category, one column per schema feature)."""
    frame = load_table(path)
    check_columns(frame, ITEMS_TABLE, str(path), extra_required=list(schema.feature_ids))
    unknown = [c for c in frame.columns if not ITEMS_TABLE.is_known(c) and c not in schema.kinds]
    if unknown:
        logger.warning(f"{path}: ignoring columns not in the feature schema: {', '.join(unknown)}")

    items = []
    for index, record in enumerate(frame.to_dict(orient="records")):
        row = _row_number(index)
        values = {
            feature_id: cell_number(record[feature_id], path, row, feature_id)
            for feature_id in schema.feature_ids
        }
        items.append(ItemProfile(
            item_id=_required_text(record["item_id"], path, row, "item_id"),
            name="" if is_missing(record["name"]) else cell_text(record["name"]),
            category=_required_text(record["category"], path, row, "category"),
            feature_values=values,
        ))
    return items


def _aversion_columns(columns: List[str], path: Path) -> Dict[str, Dict[str, str]]:
    """feature id -> {end: column} for every aversion:<feature>:<end> column."""
    found: Dict[str, Dict[str, str]] = {}
    for column in columns:
        if not column.startswith(AVERSION_PREFIX):
            continue
        feature_id, _, end = column[len(AVERSION_PREFIX):].rpartition(":")
        if not feature_id or end not in (END_MAX, END_MIN):
            raise DatasetParseError(
                f"column {column!r} must look like 'aversion:<feature>:max' or 'aversion:<feature>:min'",
                str(path),
            )
        found.setdefault(feature_id, {})[end] = column
    return found


def read_users(path: Path, schema: FeatureSchema) -> Tuple[List[dict], CategorySet]:
    """
    Read declared user profiles.

    Returns:
        (user records without ratings, category set from the pref: columns);
        each record has user_id, group, preferences and aversions
    """
    frame = load_table(path)
    required_aversions = [aversion_column(f, END_MAX) for f in schema.feature_ids]
    required_aversions += [aversion_column(f, END_MIN) for f, kind in schema.features
                           if kind is FeatureKind.V_SHAPED]
    check_columns(frame, USERS_TABLE, str(path), extra_required=required_aversions)

    columns = list(frame.columns)
    unknown = [c for c in columns if not USERS_TABLE.is_known(c)]
    if unknown:
        raise DatasetParseError(f"unexpected column {unknown[0]!r}", str(path))
    pref_columns = {c[len(PREF_PREFIX):]: c for c in columns if c.startswith(PREF_PREFIX)}
    if not pref_columns:
        raise DatasetParseError("no 'pref:<category>' columns, the category set would be empty", str(path))
    aversion_columns = _aversion_columns(columns, path)
    ignored = sorted(f for f in aversion_columns if f not in schema.kinds)
    if ignored:
        dropped = [c for f in ignored for c in sorted(aversion_columns.pop(f).values())]
        logger.warning(f"{path}: ignoring columns not in the feature schema: {', '.join(dropped)}")

    users = []
    for index, record in enumerate(frame.to_dict(orient="records")):
        row = _row_number(index)
        preferences = {
            category: cell_number(record[column], path, row, column)
            for category, column in sorted(pref_columns.items())
        }
        aversions = {}
        for feature_id, ends in sorted(aversion_columns.items()):
            a_at_max = cell_number(record[ends[END_MAX]], path, row, ends[END_MAX]) if END_MAX in ends else None
            if a_at_max is None:
                raise DatasetParseError(f"missing required column {aversion_column(feature_id, END_MAX)!r}",
                                        str(path))
            a_at_min: Optional[float] = None
            # an empty min cell on an increasing feature means "not declared"
            if END_MIN in ends and not (is_missing(record[ends[END_MIN]])
                                        and schema.kinds.get(feature_id) is not FeatureKind.V_SHAPED):
                a_at_min = cell_number(record[ends[END_MIN]], path, row, ends[END_MIN])
            aversions[feature_id] = AversionDeclaration(feature_id, a_at_max, a_at_min)

        group = record.get("group")
        users.append({
            "user_id": _required_text(record["user_id"], path, row, "user_id"),
            "group": None if is_missing(group) else cell_text(group),
            "preferences": preferences,
            "aversions": aversions,
        })
    return users, CategorySet(frozenset(pref_columns))


def read_ratings(path: Path) -> Tuple[List[Tuple[str, str, float, int]], int]:
    """
    Read (user_id, item_id, rating, row) records.

    Empty rating cells ("I don't know the place") are dropped.

    Returns:
        (records in file order, number of dropped unknown answers);
        row is the 1-based data row the rating came from
    """
    frame = load_table(path)
    check_columns(frame, RATINGS_TABLE, str(path))

    records = []
    dropped = 0
    for index, record in enumerate(frame.to_dict(orient="records")):
        row = _row_number(index)
        user_id = _required_text(record["user_id"], path, row, "user_id")
        item_id = _required_text(record["item_id"], path, row, "item_id")
        if is_missing(record["rating"]):
            dropped += 1
            continue
        records.append((user_id, item_id, cell_number(record["rating"], path, row, "rating"), row))
    return records, dropped
