"""Dense threshold sweeps, metric-coverage curves and scalar summaries.

A sweep evaluates the threshold-local metrics at every grid point and the
whole-set baselines once, then summarizes each metric-coverage curve by
its normalized trapezoidal area so models with different abstention
behavior stay comparable under a single scalar.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .baselines import BinningSpec, aurc, brier, eaurc, ece, mce
from .core import EvaluationSet
from .metrics import PointMetrics, point_metrics

__all__ = [
    "THRESHOLD_METRICS",
    "CURVE_METRICS",
    "InsufficientDataError",
    "ThresholdGrid",
    "CurvePoint",
    "MetricCurve",
    "SweepReport",
    "sweep",
    "aumcc",
    "rank",
]

# Metrics that get a curve and an area summary in every sweep report.
THRESHOLD_METRICS = ("cwsa", "cwsa_plus", "selective_accuracy")
# Coverage is carried as a curve of its own for plotting, but a
# coverage-vs-coverage area would be meaningless, so it gets no scalar.
CURVE_METRICS = THRESHOLD_METRICS + ("coverage",)

THREADS_ENV_VAR = "CWSA_EVAL_THREADS"


class InsufficientDataError(ValueError):
    """A curve does not span enough distinct coverage to integrate."""


@dataclass(frozen=True)
class ThresholdGrid:
    """Evenly spaced thresholds ``start, start+step, ..., <= end``.

    Thresholds are generated by integer multiples of ``step`` (rounded to
    10 decimals) so the default 0.50..0.99 grid is exactly 50 clean
    points with no accumulated float drift.
    """

    start: float = 0.50
    end: float = 0.99
    step: float = 0.01

    def __post_init__(self) -> None:
        if not 0.0 <= self.start <= self.end < 1.0:
            raise ValueError(
                f"grid must satisfy 0 <= start <= end < 1, got [{self.start}, {self.end}]"
            )
        if self.step <= 0.0:
            raise ValueError(f"step must be positive, got {self.step}")

    def thresholds(self) -> List[float]:
        span = self.end - self.start
        count = int(math.floor(span / self.step + 1e-9)) + 1
        return [round(self.start + i * self.step, 10) for i in range(count)]

    def __len__(self) -> int:
        return len(self.thresholds())

    @classmethod
    def parse(cls, text: str) -> "ThresholdGrid":
        """Parse a ``start:end:step`` CLI string."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must look like start:end:step, got {text!r}")
        try:
            start, end, step = (float(p) for p in parts)
        except ValueError:
            raise ValueError(f"grid must be three numbers start:end:step, got {text!r}") from None
        return cls(start=start, end=end, step=step)


@dataclass(frozen=True)
class CurvePoint:
    """One sweep sample: ``value`` is ``None`` where the metric is undefined."""

    tau: float
    coverage: float
    value: Optional[float]


class MetricCurve:
    """A per-threshold series of one metric, sorted by threshold.

    Accepts points in any order and normalizes; duplicate thresholds are
    rejected, and coverage must be non-increasing along the curve.
    """

    __slots__ = ("metric_name", "points")

    def __init__(self, metric_name: str, points: Sequence[CurvePoint]) -> None:
        pts = tuple(sorted(points, key=lambda p: p.tau))
        for a, b in zip(pts, pts[1:]):
            if b.tau == a.tau:
                raise ValueError(f"duplicate threshold {a.tau} in curve {metric_name!r}")
            if b.coverage > a.coverage:
                raise ValueError(
                    f"coverage must be non-increasing along the curve, rises at tau={b.tau}"
                )
        self.metric_name = metric_name
        self.points = pts

    def taus(self) -> List[float]:
        return [p.tau for p in self.points]

    def coverages(self) -> List[float]:
        return [p.coverage for p in self.points]

    def values(self) -> List[Optional[float]]:
        return [p.value for p in self.points]

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        return f"MetricCurve({self.metric_name!r}, {len(self.points)} points)"


@dataclass
class SweepReport:
    """Curves plus scalar summaries for one evaluation set on one grid."""

    source_id: str
    grid: ThresholdGrid
    curves: Dict[str, MetricCurve]
    scalars: Dict[str, Optional[float]] = field(default_factory=dict)


def _collapse_by_coverage(points: Sequence[CurvePoint]) -> List[Tuple[float, float]]:
    """Defined points as (coverage, value), coverage ascending, duplicates averaged.

    Group means use exact summation so the result does not depend on the
    order the points were supplied in.
    """
    usable = [(p.coverage, p.value) for p in points if p.value is not None]
    usable.sort(key=lambda cv: cv[0])
    collapsed: List[Tuple[float, float]] = []
    i = 0
    while i < len(usable):
        j = i
        while j < len(usable) and usable[j][0] == usable[i][0]:
            j += 1
        values = [v for _, v in usable[i:j]]
        collapsed.append((usable[i][0], math.fsum(values) / len(values)))
        i = j
    return collapsed


def _trapezoid_mean_height(collapsed: Sequence[Tuple[float, float]]) -> float:
    area = math.fsum(
        (v0 + v1) * 0.5 * (c1 - c0)
        for (c0, v0), (c1, v1) in zip(collapsed, collapsed[1:])
    )
    span = collapsed[-1][0] - collapsed[0][0]
    return area / span


def aumcc(curve: MetricCurve) -> float:
    """Area under the metric-coverage curve, normalized by the coverage span.

    Points are taken in coverage-ascending order; points sharing a
    coverage (plateaus where no record enters or leaves) are averaged
    into one; undefined points are dropped, and fewer than two defined
    points is an error.  Dividing the trapezoidal area by the spanned
    coverage turns the result into a mean height, so models covering
    different ranges remain comparable.  A curve whose coverage never
    moves collapses to a single point and the mean height is just its
    (averaged) value.
    """
    usable = sum(1 for p in curve.points if p.value is not None)
    if usable < 2:
        raise InsufficientDataError(
            f"curve {curve.metric_name!r} has {usable} defined point(s); need at least 2"
        )
    collapsed = _collapse_by_coverage(curve.points)
    if len(collapsed) == 1:
        return collapsed[0][1]
    return _trapezoid_mean_height(collapsed)


def _curve_scalar(curve: MetricCurve) -> Optional[float]:
    """Sweep-report scalar for a curve; degenerate curves fall back gracefully.

    Same computation as :func:`aumcc`, except that a single defined point
    (a one-threshold grid) yields that value and an all-undefined curve
    yields ``None`` instead of an error.
    """
    collapsed = _collapse_by_coverage(curve.points)
    if not collapsed:
        return None
    if len(collapsed) == 1:
        return collapsed[0][1]
    return _trapezoid_mean_height(collapsed)


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}") from None
    return max(1, value)


def sweep(
    dataset: EvaluationSet,
    grid: ThresholdGrid = ThresholdGrid(),
    bins: BinningSpec = BinningSpec(),
    threads: Optional[int] = None,
) -> SweepReport:
    """Evaluate every metric across ``grid`` and summarize.

    Threshold evaluations are independent; with ``threads > 1`` (or the
    ``CWSA_EVAL_THREADS`` environment variable set) they run in a thread
    pool.  The report is assembled in grid order either way, so the
    output is identical regardless of parallelism.
    """
    taus = grid.thresholds()
    if threads is None:
        threads = _thread_count()

    if threads > 1 and len(taus) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            points: List[PointMetrics] = list(
                pool.map(lambda t: point_metrics(dataset, t), taus)
            )
    else:
        points = [point_metrics(dataset, t) for t in taus]

    curves: Dict[str, MetricCurve] = {}
    for name in CURVE_METRICS:
        curve_points = []
        for pm in points:
            value = pm.coverage if name == "coverage" else getattr(pm, name)
            curve_points.append(CurvePoint(tau=pm.tau, coverage=pm.coverage, value=value))
        curves[name] = MetricCurve(name, curve_points)

    scalars: Dict[str, Optional[float]] = {}
    for name in THRESHOLD_METRICS:
        scalars[f"auc_mcc_{name}"] = _curve_scalar(curves[name])
    scalars["ece"] = ece(dataset, bins)
    scalars["mce"] = mce(dataset, bins)
    scalars["brier"] = brier(dataset)
    scalars["aurc"] = aurc(dataset)
    scalars["eaurc"] = eaurc(dataset)

    return SweepReport(source_id=dataset.source_id, grid=grid, curves=curves, scalars=scalars)


def rank(
    reports: Sequence[SweepReport], by: str = "cwsa_plus"
) -> List[Tuple[str, Optional[float]]]:
    """Order reports by the chosen metric's area summary, best first.

    All reports must share the same grid.  Ties (and undefined scalars,
    which sort last) break lexicographically by source id, so the
    ordering is deterministic.
    """
    if by not in THRESHOLD_METRICS:
        raise ValueError(f"cannot rank by {by!r}; choose one of {THRESHOLD_METRICS}")
    if not reports:
        raise ValueError("need at least one report to rank")
    grid = reports[0].grid
    for r in reports[1:]:
        if r.grid != grid:
            raise ValueError(
                f"incompatible reports: {r.source_id!r} uses grid {r.grid}, expected {grid}"
            )
    key = f"auc_mcc_{by}"
    entries = [(r.source_id, r.scalars.get(key)) for r in reports]
    entries.sort(
        key=lambda e: (e[1] is None, -(e[1] if e[1] is not None else 0.0), e[0])
    )
    return entries
