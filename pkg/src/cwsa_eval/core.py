"""Shared domain types for selective-prediction evaluation.

Everything downstream (metrics, baselines, sweeps) consumes the types
defined here: single prediction records, validated evaluation sets, the
threshold filter, and the linear confidence weight that rescales the
retained confidence range onto [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

__all__ = [
    "PredictionRecord",
    "EvaluationSet",
    "RetainedSubset",
    "validate_threshold",
    "select",
    "confidence_weight",
    "coverage",
]


def validate_threshold(tau: float) -> float:
    """Check that ``tau`` is a usable abstention threshold.

    Thresholds live in the half-open interval [0, 1): at exactly 1 the
    confidence weight would divide by zero, and threshold sweeps never
    need it.  Returns ``tau`` as a plain float.
    """
    tau = float(tau)
    if not 0.0 <= tau < 1.0:
        raise ValueError(f"threshold must lie in [0, 1), got {tau!r}")
    return tau


@dataclass(frozen=True)
class PredictionRecord:
    """One model prediction together with its confidence.

    Attributes
    ----------
    true_label : int
        Ground-truth class index, non-negative.
    predicted_label : int
        Predicted class index, non-negative.
    confidence : float
        Top-1 confidence in [0, 1].  Taken as given: the metrics exist to
        judge the supplied confidences, so no clipping or renormalizing.
    credit : float, optional
        Graded-correctness score in [0, 1] for structured outputs;
        ``None`` for plain right/wrong classification.
    """

    true_label: int
    predicted_label: int
    confidence: float
    credit: Optional[float] = None

    def __post_init__(self) -> None:
        if self.true_label < 0 or self.predicted_label < 0:
            raise ValueError(
                f"labels must be non-negative, got ({self.true_label}, {self.predicted_label})"
            )
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence must lie in [0, 1], got {self.confidence!r}")
        if self.credit is not None and not 0.0 <= self.credit <= 1.0:
            raise ValueError(f"credit must lie in [0, 1], got {self.credit!r}")

    @property
    def correct(self) -> bool:
        return self.true_label == self.predicted_label


class EvaluationSet:
    """An immutable, validated collection of predictions from one model.

    Stores column arrays internally so metric evaluation can run as a
    single pass over contiguous memory; record-level access is available
    through iteration and :meth:`record`.

    Parameters
    ----------
    y_true, y_pred : array-like of int
        Ground-truth and predicted class indices, both in
        ``[0, class_count)``.
    confidence : array-like of float
        Top-1 confidences in [0, 1].
    credit : array-like of float, optional
        Graded-correctness values in [0, 1]; NaN marks "absent".  ``None``
        when no record carries a credit.
    class_count : int, optional
        Size of the label universe; inferred as ``1 + max(label)`` when
        omitted.
    source_id : str
        Free-form tag naming the model/dataset this set came from.
    """

    __slots__ = ("y_true", "y_pred", "confidence", "credit", "class_count", "source_id", "correct_u8")

    def __init__(
        self,
        y_true,
        y_pred,
        confidence,
        credit=None,
        class_count: Optional[int] = None,
        source_id: str = "",
    ) -> None:
        y_true = np.ascontiguousarray(y_true, dtype=np.int64)
        y_pred = np.ascontiguousarray(y_pred, dtype=np.int64)
        confidence = np.ascontiguousarray(confidence, dtype=np.float64)
        if y_true.ndim != 1 or y_true.shape != y_pred.shape or y_true.shape != confidence.shape:
            raise ValueError("y_true, y_pred and confidence must be 1-d arrays of equal length")
        n = y_true.shape[0]
        if n == 0:
            raise ValueError("an evaluation set must contain at least one record")

        if class_count is None:
            class_count = int(max(y_true.max(), y_pred.max())) + 1
        class_count = int(class_count)
        if class_count < 1:
            raise ValueError(f"class_count must be positive, got {class_count}")

        self._check_labels(y_true, class_count, "y_true")
        self._check_labels(y_pred, class_count, "y_pred")
        bad = np.flatnonzero((confidence < 0.0) | (confidence > 1.0) | np.isnan(confidence))
        if bad.size:
            i = int(bad[0])
            raise ValueError(f"record {i}: confidence {confidence[i]!r} outside [0, 1]")

        if credit is not None:
            credit = np.ascontiguousarray(credit, dtype=np.float64)
            if credit.shape != confidence.shape:
                raise ValueError("credit must match the record count")
            present = ~np.isnan(credit)
            bad = np.flatnonzero(present & ((credit < 0.0) | (credit > 1.0)))
            if bad.size:
                i = int(bad[0])
                raise ValueError(f"record {i}: credit {credit[i]!r} outside [0, 1]")
            credit.setflags(write=False)

        correct_u8 = np.ascontiguousarray(y_true == y_pred, dtype=np.uint8)
        for arr in (y_true, y_pred, confidence, correct_u8):
            arr.setflags(write=False)

        self.y_true = y_true
        self.y_pred = y_pred
        self.confidence = confidence
        self.credit = credit
        self.class_count = class_count
        self.source_id = source_id
        self.correct_u8 = correct_u8

    @staticmethod
    def _check_labels(labels: np.ndarray, class_count: int, name: str) -> None:
        bad = np.flatnonzero((labels < 0) | (labels >= class_count))
        if bad.size:
            i = int(bad[0])
            raise ValueError(
                f"record {i}: {name} {labels[i]} outside [0, {class_count})"
            )

    @classmethod
    def from_records(
        cls,
        records: Sequence[PredictionRecord],
        class_count: Optional[int] = None,
        source_id: str = "",
    ) -> "EvaluationSet":
        """Build a set from :class:`PredictionRecord` instances."""
        records = list(records)
        if not records:
            raise ValueError("an evaluation set must contain at least one record")
        y_true = np.array([r.true_label for r in records], dtype=np.int64)
        y_pred = np.array([r.predicted_label for r in records], dtype=np.int64)
        confidence = np.array([r.confidence for r in records], dtype=np.float64)
        if any(r.credit is not None for r in records):
            credit = np.array(
                [np.nan if r.credit is None else r.credit for r in records], dtype=np.float64
            )
        else:
            credit = None
        return cls(y_true, y_pred, confidence, credit, class_count, source_id)

    def record(self, i: int) -> PredictionRecord:
        credit = None
        if self.credit is not None and not np.isnan(self.credit[i]):
            credit = float(self.credit[i])
        return PredictionRecord(
            true_label=int(self.y_true[i]),
            predicted_label=int(self.y_pred[i]),
            confidence=float(self.confidence[i]),
            credit=credit,
        )

    def __len__(self) -> int:
        return int(self.y_true.shape[0])

    def __iter__(self) -> Iterator[PredictionRecord]:
        for i in range(len(self)):
            yield self.record(i)

    def __repr__(self) -> str:
        return (
            f"EvaluationSet(n={len(self)}, class_count={self.class_count}, "
            f"source_id={self.source_id!r})"
        )


@dataclass(frozen=True)
class RetainedSubset:
    """Positions of the records whose confidence clears a threshold.

    ``indices`` is strictly increasing, i.e. input order is preserved.
    """

    indices: np.ndarray
    tau: float


def select(dataset: EvaluationSet, tau: float) -> RetainedSubset:
    """Filter ``dataset`` down to the records with confidence >= ``tau``.

    Ties at the threshold are retained (they later receive confidence
    weight exactly 0, so they count toward coverage but contribute
    nothing to the weighted metrics).  The result may be empty.
    """
    tau = validate_threshold(tau)
    indices = np.flatnonzero(dataset.confidence >= tau)
    indices.setflags(write=False)
    return RetainedSubset(indices=indices, tau=tau)


def confidence_weight(confidence: float, tau: float) -> float:
    """Linear weight ``(confidence - tau) / (1 - tau)`` on the retained range.

    Maps the retained confidence interval [tau, 1] onto [0, 1]: a record
    sitting exactly at the threshold weighs 0, a fully confident record
    weighs 1.  Callers must filter first; confidence below ``tau`` is a
    contract violation.
    """
    tau = validate_threshold(tau)
    confidence = float(confidence)
    if confidence < tau:
        raise ValueError(
            f"confidence {confidence!r} is below the threshold {tau!r}; filter before weighting"
        )
    if confidence > 1.0:
        raise ValueError(f"confidence must lie in [0, 1], got {confidence!r}")
    return (confidence - tau) / (1.0 - tau)


def coverage(dataset: EvaluationSet, tau: float) -> float:
    """Fraction of records retained at ``tau``."""
    tau = validate_threshold(tau)
    retained = int(np.count_nonzero(dataset.confidence >= tau))
    return retained / len(dataset)
