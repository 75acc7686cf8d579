"""Pure-NumPy fallback for the compiled accumulation kernels.

Same signatures and same arithmetic (per-element division by ``1 - tau``)
as ``_kernels_c``; used when the extension was not built.
"""

from __future__ import annotations

import numpy as np


def point_accumulate(confidence: np.ndarray, correct: np.ndarray, tau: float):
    mask = confidence >= tau
    retained = int(np.count_nonzero(mask))
    if retained == 0:
        return 0, 0, 0.0, 0.0
    weights = (confidence[mask] - tau) / (1.0 - tau)
    hit = correct[mask].astype(bool)
    hits = int(np.count_nonzero(hit))
    s_correct = float(weights[hit].sum())
    s_wrong = float(weights[~hit].sum())
    return retained, hits, s_correct, s_wrong


def credit_accumulate(confidence: np.ndarray, credit: np.ndarray, tau: float):
    mask = confidence >= tau
    retained = int(np.count_nonzero(mask))
    kept = credit[mask]
    missing = np.isnan(kept)
    if missing.any():
        first_missing = int(np.flatnonzero(mask)[np.argmax(missing)])
        return retained, 0.0, first_missing
    weights = (confidence[mask] - tau) / (1.0 - tau)
    signed = float((weights * (2.0 * kept - 1.0)).sum())
    return retained, signed, -1
