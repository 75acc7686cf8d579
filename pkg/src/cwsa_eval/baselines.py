"""Classical comparison metrics: calibration error, Brier score and the
risk-coverage family.

These are whole-set summaries (no abstention threshold): they are the
baselines the weighted selective scores are judged against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from .core import EvaluationSet

__all__ = [
    "BinningSpec",
    "RiskCoveragePoint",
    "ece",
    "mce",
    "brier",
    "aurc",
    "eaurc",
    "risk_coverage_points",
]


@dataclass(frozen=True)
class BinningSpec:
    """Equal-width confidence binning over [0, 1] for calibration error.

    The top bin is closed at 1.0.  Per-bin confidence is the mean of the
    member confidences, not the bin midpoint.  15 bins is the common
    convention.
    """

    bin_count: int = 15

    def __post_init__(self) -> None:
        if self.bin_count < 1:
            raise ValueError(f"bin_count must be >= 1, got {self.bin_count}")


@dataclass(frozen=True)
class RiskCoveragePoint:
    """One prefix of the confidence-descending ordering.

    ``coverage`` is k/n for a prefix of size k and ``risk`` is the error
    rate within that prefix.
    """

    coverage: float
    risk: float


def _bin_gaps(dataset: EvaluationSet, bins: BinningSpec):
    """Per-bin (occupancy, |accuracy - mean confidence|) over non-empty bins."""
    b = bins.bin_count
    conf = dataset.confidence
    correct = dataset.correct_u8.astype(np.float64)
    idx = np.minimum((conf * b).astype(np.int64), b - 1)
    counts = np.bincount(idx, minlength=b).astype(np.float64)
    sum_correct = np.bincount(idx, weights=correct, minlength=b)
    sum_conf = np.bincount(idx, weights=conf, minlength=b)
    occupied = counts > 0
    acc = sum_correct[occupied] / counts[occupied]
    avg_conf = sum_conf[occupied] / counts[occupied]
    return counts[occupied], np.abs(acc - avg_conf)


def ece(dataset: EvaluationSet, bins: BinningSpec = BinningSpec()) -> float:
    """Expected calibration error: occupancy-weighted mean gap between
    per-bin accuracy and per-bin mean confidence."""
    counts, gaps = _bin_gaps(dataset, bins)
    n = len(dataset)
    return float(np.sum((counts / n) * gaps))


def mce(dataset: EvaluationSet, bins: BinningSpec = BinningSpec()) -> float:
    """Maximum calibration error: the largest per-bin gap."""
    _, gaps = _bin_gaps(dataset, bins)
    return float(gaps.max())


def brier(dataset: EvaluationSet) -> float:
    """Top-1 Brier score: mean squared gap between confidence and correctness.

    Uses the binary (confidence vs. correctness-indicator) form since the
    record model keeps only the top-1 confidence, not the full
    probability vector.
    """
    correct = dataset.correct_u8.astype(np.float64)
    return float(np.mean((dataset.confidence - correct) ** 2))


def _prefix_risks(dataset: EvaluationSet) -> np.ndarray:
    """Error rate of every confidence-descending prefix, stable on ties."""
    order = np.argsort(-dataset.confidence, kind="stable")
    wrong = 1 - dataset.correct_u8[order].astype(np.int64)
    k = np.arange(1, len(dataset) + 1, dtype=np.float64)
    return np.cumsum(wrong) / k


def aurc(dataset: EvaluationSet) -> float:
    """Area under the risk-coverage curve.

    Records are ordered by descending confidence (stable sort, input order
    breaks ties); the score is the mean error rate over all prefixes
    k = 1..n.  The final reduction is sequential so the result matches a
    naive per-prefix loop bit for bit.
    """
    risks = _prefix_risks(dataset)
    return sum(risks.tolist()) / len(dataset)


def eaurc(dataset: EvaluationSet) -> float:
    """Excess AURC over the best achievable ordering.

    The oracle orders every correct record ahead of every wrong one, so
    its prefix risks are ``max(0, k - n_correct) / k``.  Those dominate
    the actual prefix risks elementwise, which keeps the result
    non-negative even in floating point.
    """
    n = len(dataset)
    risks = _prefix_risks(dataset)
    n_correct = int(dataset.correct_u8.sum())
    k = np.arange(1, n + 1, dtype=np.float64)
    oracle = np.maximum(0.0, k - n_correct) / k
    return sum(risks.tolist()) / n - sum(oracle.tolist()) / n


def risk_coverage_points(dataset: EvaluationSet) -> List[RiskCoveragePoint]:
    """The full risk-coverage curve as prefix points, coverage ascending."""
    n = len(dataset)
    risks = _prefix_risks(dataset)
    return [
        RiskCoveragePoint(coverage=(i + 1) / n, risk=float(risks[i])) for i in range(n)
    ]
