"""
Parser module for recommender datasets.

This module handles:
- Loading .csv and .json dataset tables
- Checking table columns against their schemas
- Building domain entities from the tables
- Writing datasets back to disk in either format
"""

from .dataset import load_dataset, write_dataset
from .file_loader import find_table, load_table, write_table
from .readers import read_items, read_ratings, read_schema, read_users

__all__ = [
    "load_dataset",
    "write_dataset",
    "find_table",
    "load_table",
    "write_table",
    "read_items",
    "read_ratings",
    "read_schema",
    "read_users",
]
