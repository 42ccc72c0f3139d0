import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from ..errors import DatasetParseError

SUPPORTED_SUFFIXES = (".csv", ".json")


def load_table(path: Path) -> pd.DataFrame:
    """Load a .csv or .json dataset table into a DataFrame of raw cells."""
    if not path.exists():
        raise DatasetParseError("file not found", str(path))

    try:
        if path.suffix == ".csv":
            # every cell stays text; empty cells are ""
            frame = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
        elif path.suffix == ".json":
            frame = pd.read_json(path, orient="records", dtype=False, convert_dates=False,
                                 precise_float=True)
        else:
            raise DatasetParseError(f"unsupported file type {path.suffix!r}", str(path))
    except (ValueError, UnicodeDecodeError) as e:
        raise DatasetParseError(f"malformed file ({e})", str(path)) from e

    frame.columns = [str(column).strip() for column in frame.columns]
    return frame


def find_table(directory: Path, stem: str, required: bool = True) -> Optional[Path]:
    """
    Locate ``<stem>.csv`` or ``<stem>.json`` in a dataset directory.

    Raises:
        DatasetParseError: both exist, or neither exists and ``required``
    """
    found = [directory / f"{stem}{suffix}" for suffix in SUPPORTED_SUFFIXES
             if (directory / f"{stem}{suffix}").exists()]
    if len(found) > 1:
        raise DatasetParseError(f"both {found[0].name} and {found[1].name} present", str(directory))
    if not found:
        if required:
            raise DatasetParseError(f"no {stem}.csv or {stem}.json found", str(directory))
        return None
    return found[0]


def is_missing(value: Any) -> bool:
    """Empty CSV cell, JSON null or NaN."""
    if value is None:
        return True
    if isinstance(value, float) and math.isnan(value):
        return True
    return isinstance(value, str) and value.strip() == ""


def cell_text(value: Any) -> str:
    return str(value).strip()


def cell_number(value: Any, path: Path, row: int, column: str) -> float:
    """
    Parse a numeric cell.

    Raises:
        DatasetParseError: naming the file, row and column
    """
    if is_missing(value):
        raise DatasetParseError(f"row {row}: column {column!r} is empty", str(path))
    try:
        return float(cell_text(value))
    except ValueError:
        raise DatasetParseError(f"row {row}: column {column!r} value {value!r} is not a number",
                                str(path)) from None


def format_number(value: float) -> Any:
    """Integral values as int, others as float (exact round-trip on reload)."""
    number = float(value)
    return int(number) if number.is_integer() else number


def write_table(records: List[Dict[str, Any]], columns: List[str], path: Path) -> Path:
    """Write records as CSV or JSON, chosen by the path suffix."""
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.suffix == ".csv":
        # str(float) is the shortest repr, so values reload bit-exact
        text = [{column: "" if record.get(column) is None else str(record[column]) for column in columns}
                for record in records]
        frame = pd.DataFrame.from_records(text, columns=columns)
        frame.to_csv(path, index=False, lineterminator="\n")
    elif path.suffix == ".json":
        ordered = [{column: record.get(column) for column in columns} for record in records]
        path.write_text(json.dumps(ordered, indent=2) + "\n", encoding="utf-8")
    else:
        raise DatasetParseError(f"unsupported file type {path.suffix!r}", str(path))
    return path
