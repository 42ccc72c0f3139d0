"""
Wall-clock timing of evaluation stages (fit and rank per configuration).

Timings are logged at DEBUG level only; reports never contain them.
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List

logger = logging.getLogger(__name__)


@dataclass
class TimingStats:
    """Durations, in seconds, recorded for one stage."""
    durations: List[float] = field(default_factory=list)

    def record(self, seconds: float) -> None:
        self.durations.append(seconds)

    @property
    def count(self) -> int:
        return len(self.durations)

    @property
    def total(self) -> float:
        return math.fsum(self.durations)

    def to_dict(self) -> Dict[str, Any]:
        if not self.durations:
            return {'count': 0, 'total': 0.0, 'mean': 0.0, 'max': 0.0}
        return {
            'count': self.count,
            'total': round(self.total, 6),
            'mean': round(self.total / self.count, 6),
            'max': round(max(self.durations), 6),
        }


class StageTimer:
    """
    Collects durations per named stage.

    Usage:
        timer = StageTimer()
        with timer.time('fit.Ind_Cos'):
            fit()
        timer.log_summary()
    """

    def __init__(self):
        self._stages: Dict[str, TimingStats] = {}

    def timing(self, stage: str, seconds: float) -> None:
        self._stages.setdefault(stage, TimingStats()).record(seconds)

    def time(self, stage: str) -> "TimerContext":
        return TimerContext(self, stage)

    def get(self, stage: str) -> Dict[str, Any]:
        """Summary of one stage; empty when it was never recorded."""
        stats = self._stages.get(stage)
        return stats.to_dict() if stats else {}

    def log_summary(self) -> None:
        for stage in sorted(self._stages):
            summary = self._stages[stage].to_dict()
            logger.debug(f"Timing {stage}: total={summary['total']:.3f}s "
                         f"mean={summary['mean']:.6f}s n={summary['count']}")


class TimerContext:
    """Records the time spent inside a ``with`` block on a StageTimer."""

    def __init__(self, timer: StageTimer, stage: str):
        self.timer = timer
        self.stage = stage
        self._started = 0.0

    def __enter__(self) -> "TimerContext":
        self._started = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> bool:
        self.timer.timing(self.stage, time.perf_counter() - self._started)
        return False
