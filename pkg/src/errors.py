"""
Exception hierarchy shared across the recommender packages.

Validation never raises (violations are returned as data); everything
else that can fail on bad input raises one of these.
"""

from typing import List, Optional


class RecommenderError(Exception):
    """Base class for all recommender errors surfaced to the CLI."""
    pass


class DatasetError(RecommenderError):
    """Raised when a dataset cannot be loaded."""
    pass


class DatasetParseError(DatasetError):
    """Raised for malformed files, missing columns or unsupported formats."""

    def __init__(self, message: str, path: Optional[str] = None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class DatasetValidationError(DatasetError):
    """Raised when a parsed dataset breaks one or more invariants."""

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        shown = "; ".join(self.violations[:5])
        more = len(self.violations) - 5
        if more > 0:
            shown += f"; ... and {more} more"
        super().__init__(f"Dataset failed validation ({len(self.violations)} violations): {shown}")


class ConfigError(RecommenderError):
    """Raised for invalid run configuration values or files."""
    pass


class ModelError(RecommenderError, ValueError):
    """Raised for out-of-range inputs to the scoring model."""
    pass


class EvaluationError(RecommenderError):
    """Raised when an evaluation run cannot produce a report."""
    pass
