"""
Evaluation report: metric rows, per-fold detail and rendering.

Rows are ordered by MAP (descending, ties by algorithm name). For each
metric the report marks:
- the best value overall
- the best value reached by the other category (individualized vs baseline)
- significance stars on the best row, from a paired t-test between the
  best algorithm of each category over the per-fold samples

Rendering is deterministic: fixed float formatting, no timestamps.
"""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import pandas as pd

from .significance import paired_t_test, stars

logger = logging.getLogger(__name__)

METRICS = ("precision", "recall", "f1", "map", "mrr", "mae", "rmse")
LOWER_IS_BETTER = frozenset({"mae", "rmse"})

COLUMN_LABELS = {
    "precision": "Prec.",
    "recall": "Recall",
    "f1": "F1",
    "map": "MAP",
    "mrr": "MRR",
    "mae": "MAE",
    "rmse": "RMSE",
    "coverage": "Coverage",
}


@dataclass(frozen=True)
class MetricRow:
    """Averaged metrics of one algorithm configuration."""
    algorithm: str
    category: str
    precision: float
    recall: float
    f1: float
    map: float
    mrr: float
    mae: float
    rmse: float
    coverage: float

    def value(self, metric: str) -> float:
        return getattr(self, metric)


@dataclass(frozen=True)
class FoldResult:
    """Metrics of one configuration on one fold (ranking metrics may be NaN)."""
    algorithm: str
    fold: int
    precision: float
    recall: float
    f1: float
    map: float
    mrr: float
    mae: float
    rmse: float
    coverage: float
    ranked_users: int
    test_pairs: int
    test_pairs_sha256: str

    def value(self, metric: str) -> float:
        return getattr(self, metric)


@dataclass(frozen=True)
class Annotation:
    """Markers of one row: metrics where it is best, and star strings per metric."""
    best_overall: Tuple[str, ...] = ()
    best_of_other_category: Tuple[str, ...] = ()
    significance: Mapping[str, str] = field(default_factory=dict)


@dataclass
class EvaluationReport:
    """
    Result of a cross-validation run.

    Attributes:
        rows: One MetricRow per configuration, ordered by MAP
        folds: Per-fold detail in (algorithm, fold) order
        header: Resolved run settings written above the table
        excluded_users: Users left out for having too few ratings
        annotations: algorithm -> Annotation
    """
    rows: List[MetricRow]
    folds: List[FoldResult]
    header: List[Tuple[str, str]] = field(default_factory=list)
    excluded_users: List[str] = field(default_factory=list)
    annotations: Dict[str, Annotation] = field(default_factory=dict)
    min_ratings: int = 5

    def row(self, algorithm: str) -> MetricRow:
        for row in self.rows:
            if row.algorithm == algorithm:
                return row
        raise KeyError(algorithm)

    def fold_samples(self, algorithm: str, metric: str) -> List[float]:
        """Per-fold values of one metric, in fold order."""
        return [fold.value(metric) for fold in self.folds if fold.algorithm == algorithm]

    def test_pair_digests(self, fold: int) -> Dict[str, str]:
        """algorithm -> digest of the (user, test item) pairs it saw in a fold."""
        return {f.algorithm: f.test_pairs_sha256 for f in self.folds if f.fold == fold}


def order_rows(rows: Sequence[MetricRow]) -> List[MetricRow]:
    """MAP descending, then algorithm name."""
    return sorted(rows, key=lambda row: (-row.map, row.algorithm))


def _best(rows: Sequence[MetricRow], metric: str) -> Optional[MetricRow]:
    if not rows:
        return None
    if metric in LOWER_IS_BETTER:
        return min(rows, key=lambda row: row.value(metric))
    return max(rows, key=lambda row: row.value(metric))


def _paired_samples(folds: Sequence[FoldResult], left: str, right: str,
                    metric: str) -> Tuple[List[float], List[float]]:
    by_fold: Dict[int, Dict[str, float]] = {}
    for fold in folds:
        if fold.algorithm in (left, right):
            by_fold.setdefault(fold.fold, {})[fold.algorithm] = fold.value(metric)
    a, b = [], []
    for index in sorted(by_fold):
        values = by_fold[index]
        if left in values and right in values and not (math.isnan(values[left]) or math.isnan(values[right])):
            a.append(values[left])
            b.append(values[right])
    return a, b


def annotate(rows: Sequence[MetricRow], folds: Sequence[FoldResult]) -> Dict[str, Annotation]:
    """
    Compute best-overall, best-of-other-category and significance markers.

    Args:
        rows: Rows in report order (first best wins a tie)
        folds: Per-fold results used for the paired t-tests

    Returns:
        algorithm -> Annotation for every row
    """
    best_overall: Dict[str, List[str]] = {row.algorithm: [] for row in rows}
    best_other: Dict[str, List[str]] = {row.algorithm: [] for row in rows}
    significance: Dict[str, Dict[str, str]] = {row.algorithm: {} for row in rows}

    categories = sorted({row.category for row in rows})
    for metric in METRICS:
        winner = _best(rows, metric)
        if winner is None:
            continue
        best_overall[winner.algorithm].append(metric)
        if len(categories) != 2:
            continue

        other_category = next(c for c in categories if c != winner.category)
        runner_up = _best([row for row in rows if row.category == other_category], metric)
        best_other[runner_up.algorithm].append(metric)

        a, b = _paired_samples(folds, winner.algorithm, runner_up.algorithm, metric)
        if len(a) >= 2:
            p_value = paired_t_test(a, b)
            marker = stars(p_value)
            logger.debug(f"{metric}: {winner.algorithm} vs {runner_up.algorithm} p={p_value:.4g}")
            if marker:
                significance[winner.algorithm][metric] = marker

    return {
        row.algorithm: Annotation(
            best_overall=tuple(best_overall[row.algorithm]),
            best_of_other_category=tuple(best_other[row.algorithm]),
            significance=dict(significance[row.algorithm]),
        )
        for row in rows
    }


def build_report(rows: Sequence[MetricRow], folds: Sequence[FoldResult],
                 header: Sequence[Tuple[str, str]] = (), excluded_users: Sequence[str] = (),
                 min_ratings: int = 5) -> EvaluationReport:
    """Order rows, sort fold detail and attach annotations."""
    ordered = order_rows(rows)
    fold_detail = sorted(folds, key=lambda f: (f.algorithm, f.fold))
    return EvaluationReport(
        rows=ordered,
        folds=fold_detail,
        header=list(header),
        excluded_users=sorted(excluded_users),
        annotations=annotate(ordered, fold_detail),
        min_ratings=min_ratings,
    )


def _header_lines(report: EvaluationReport) -> List[str]:
    lines = ["# sensorec evaluation report"]
    lines.extend(f"# {key}: {value}" for key, value in report.header)
    return lines


def _appendix_lines(report: EvaluationReport) -> List[str]:
    label = f"# excluded users (fewer than {report.min_ratings} ratings)"
    if not report.excluded_users:
        return [f"{label}: none"]
    return [f"{label}: {', '.join(report.excluded_users)}"]


def to_frame(report: EvaluationReport) -> pd.DataFrame:
    """Rows plus marker columns as a DataFrame (numeric metric columns)."""
    records = []
    for row in report.rows:
        note = report.annotations.get(row.algorithm, Annotation())
        record = {"algorithm": row.algorithm, "category": row.category}
        record.update({metric: row.value(metric) for metric in METRICS})
        record["coverage"] = row.coverage
        record["best_overall"] = " ".join(note.best_overall)
        record["best_of_other_category"] = " ".join(note.best_of_other_category)
        record["significance"] = " ".join(f"{m}{s}" for m, s in note.significance.items())
        records.append(record)
    columns = ["algorithm", "category", *METRICS, "coverage",
               "best_overall", "best_of_other_category", "significance"]
    return pd.DataFrame.from_records(records, columns=columns)


def render_csv(report: EvaluationReport) -> str:
    """Report as CSV, with the run header and appendix as '#' comment lines."""
    body = to_frame(report).to_csv(index=False, float_format="%.6f", lineterminator="\n")
    return "\n".join(_header_lines(report)) + "\n" + body + "\n".join(_appendix_lines(report)) + "\n"


def _cell(value: float, marker: str) -> str:
    return f"{marker}{value:.4f}"


def render_table(report: EvaluationReport) -> str:
    """
    Report as an aligned text table in the column order
    Prec., Recall, F1, MAP, MRR, MAE, RMSE, Coverage.

    Stars prefix significant values; the Best and Best (other) columns list
    the metrics in which a row is best overall or best of the other category.
    """
    table = {"Algorithm": [row.algorithm for row in report.rows]}
    for metric in (*METRICS, "coverage"):
        cells = []
        for row in report.rows:
            note = report.annotations.get(row.algorithm, Annotation())
            cells.append(_cell(row.value(metric), note.significance.get(metric, "")))
        table[COLUMN_LABELS[metric]] = cells
    table["Best"] = [
        ",".join(COLUMN_LABELS[m] for m in report.annotations.get(r.algorithm, Annotation()).best_overall) or "-"
        for r in report.rows
    ]
    table["Best (other)"] = [
        ",".join(COLUMN_LABELS[m] for m in report.annotations.get(r.algorithm, Annotation()).best_of_other_category) or "-"
        for r in report.rows
    ]
    body = pd.DataFrame(table).to_string(index=False)
    lines = _header_lines(report) + [body, "# ** p < 0.01, * p < 0.05 (paired t-test, best of each category)"]
    lines.extend(_appendix_lines(report))
    return "\n".join(lines) + "\n"


def render_folds_csv(report: EvaluationReport) -> str:
    """Per-fold detail as CSV; ranking metrics are 'nan' in folds without relevant items."""
    frame = pd.DataFrame.from_records(
        [
            {
                "algorithm": f.algorithm,
                "fold": f.fold,
                **{metric: f.value(metric) for metric in METRICS},
                "coverage": f.coverage,
                "ranked_users": f.ranked_users,
                "test_pairs": f.test_pairs,
                "test_pairs_sha256": f.test_pairs_sha256,
            }
            for f in report.folds
        ],
        columns=["algorithm", "fold", *METRICS, "coverage", "ranked_users",
                 "test_pairs", "test_pairs_sha256"],
    )
    return frame.to_csv(index=False, float_format="%.6f", na_rep="nan", lineterminator="\n")


def render(report: EvaluationReport, fmt: str = "table") -> str:
    """Render in 'table' or 'csv' format."""
    if fmt == "csv":
        return render_csv(report)
    if fmt == "table":
        return render_table(report)
    raise ValueError(f"Unknown report format: {fmt!r} (expected csv or table)")


def folds_path(output: Path) -> Path:
    """Companion path of the per-fold detail: report.csv -> report.folds.csv."""
    return output.with_suffix(".folds.csv")


def write_report(report: EvaluationReport, output: Path, fmt: str = "table") -> List[Path]:
    """
    Write the report and its per-fold detail.

    Returns:
        Paths written, report first
    """
    output = Path(output)
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(render(report, fmt), encoding="utf-8")
    detail = folds_path(output)
    detail.write_text(render_folds_csv(report), encoding="utf-8")
    logger.info(f"Report written to {output} (fold detail: {detail})")
    return [output, detail]
