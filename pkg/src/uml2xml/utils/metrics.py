"""
Metrics collection utilities.
"""

import time
from collections import deque
from typing import Deque, Dict, Optional

from loguru import logger

# raw records kept for inspection; totals cover every run
RECENT_LIMIT = 1000


def _empty_totals() -> Dict:
    return {"runs": 0, "failures": 0, "diagnostics": 0, "latency": 0.0}


class StageMetrics:
    """Collect per-stage timings and outcomes of conversion runs."""

    def __init__(self, recent_limit: int = RECENT_LIMIT):
        self.metrics: Deque[Dict] = deque(maxlen=recent_limit)
        self.totals: Dict[str, Dict] = {}

    def record_stage(
        self,
        stage: str,
        latency: float,
        success: bool = True,
        diagnostics: int = 0,
        error: Optional[str] = None,
    ) -> None:
        """Record one stage execution."""
        metric = {
            "timestamp": time.time(),
            "stage": stage,
            "latency": latency,
            "success": success,
            "diagnostics": diagnostics,
            "error": error,
        }
        self.metrics.append(metric)

        totals = self.totals.setdefault(stage, _empty_totals())
        totals["runs"] += 1
        totals["failures"] += 0 if success else 1
        totals["diagnostics"] += diagnostics
        totals["latency"] += latency
        logger.debug(f"Recorded metric: {metric}")

    def get_summary(self, stage: Optional[str] = None) -> Dict:
        """Get summary statistics, optionally for a single stage."""
        if stage:
            totals = self.totals.get(stage, _empty_totals())
        else:
            totals = _empty_totals()
            for per_stage in self.totals.values():
                for key, value in per_stage.items():
                    totals[key] += value

        total_runs = totals["runs"]
        if not total_runs:
            return {"total_runs": 0, "stage": stage}

        return {
            "total_runs": total_runs,
            "failures": totals["failures"],
            "success_rate": (total_runs - totals["failures"]) / total_runs,
            "total_diagnostics": totals["diagnostics"],
            "average_latency": totals["latency"] / total_runs,
            "stage": stage,
        }

    def get_stage_breakdown(self) -> Dict[str, Dict]:
        """Get metrics breakdown by stage, in first-seen order."""
        return {stage: self.get_summary(stage) for stage in self.totals}

    def clear_metrics(self) -> None:
        """Clear all collected metrics."""
        self.metrics.clear()
        self.totals.clear()
        logger.debug("Cleared all metrics")
