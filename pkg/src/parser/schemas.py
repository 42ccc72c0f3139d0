"""
Column schemas for dataset files.

This module defines the expected columns of each dataset table. Items and
users also carry dynamic columns derived from the feature schema and the
category set (one per feature, ``pref:<category>``, ``aversion:<f>:max``).
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import pandas as pd

from ..errors import DatasetParseError

PREF_PREFIX = "pref:"
AVERSION_PREFIX = "aversion:"
END_MAX = "max"
END_MIN = "min"


@dataclass
class TableSchema:
    """
    Schema definition for a dataset table.

    Attributes:
        stem: File name without extension (schema, items, users, ratings)
        required: Columns that must be present
        optional: Columns that may be present
        prefixes: Prefixes of dynamic columns accepted in addition
    """
    stem: str
    required: List[str]
    optional: List[str] = field(default_factory=list)
    prefixes: List[str] = field(default_factory=list)

    def is_known(self, column: str) -> bool:
        if column in self.required or column in self.optional:
            return True
        return any(column.startswith(prefix) for prefix in self.prefixes)


SCHEMA_TABLE = TableSchema(stem="schema", required=["feature_id", "kind"], optional=["v_max"])

# feature columns are checked against the loaded feature schema
ITEMS_TABLE = TableSchema(stem="items", required=["item_id", "name", "category"])

USERS_TABLE = TableSchema(
    stem="users",
    required=["user_id"],
    optional=["group"],
    prefixes=[PREF_PREFIX, AVERSION_PREFIX],
)

RATINGS_TABLE = TableSchema(stem="ratings", required=["user_id", "item_id", "rating"])

TABLE_SCHEMAS: Dict[str, TableSchema] = {
    "schema": SCHEMA_TABLE,
    "items": ITEMS_TABLE,
    "users": USERS_TABLE,
    "ratings": RATINGS_TABLE,
}


def check_columns(frame: pd.DataFrame, schema: TableSchema, path: str,
                  extra_required: Optional[List[str]] = None) -> None:
    """
    Raise DatasetParseError naming the first missing required column.

    Args:
        frame: Loaded table
        schema: Expected columns
        path: File the table was read from
        extra_required: Dynamic columns that are also required
    """
    columns = set(frame.columns)
    for column in [*schema.required, *(extra_required or [])]:
        if column not in columns:
            raise DatasetParseError(f"missing required column {column!r}", path)
    duplicated = sorted({c for c in frame.columns if list(frame.columns).count(c) > 1})
    if duplicated:
        raise DatasetParseError(f"duplicate column {duplicated[0]!r}", path)


def aversion_column(feature_id: str, end: str) -> str:
    """Users-file column holding the aversion at one end of a feature."""
    return f"{AVERSION_PREFIX}{feature_id}:{end}"


def pref_column(category: str) -> str:
    return f"{PREF_PREFIX}{category}"
