# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled single-pass accumulation kernels.

Each kernel walks the record arrays exactly once, in input order, with
sequential float64 accumulation (no reordering, no fused-multiply
shortcuts), so results are reproducible and match a naive loop bit for
bit.
"""


def point_accumulate(const double[::1] confidence,
                     const unsigned char[::1] correct,
                     double tau):
    """Accumulate retained-count, correct-count and the confidence-weight
    sums split by correctness, for one threshold."""
    cdef Py_ssize_t i, n = confidence.shape[0]
    cdef Py_ssize_t retained = 0, hits = 0
    cdef double one_minus_tau = 1.0 - tau
    cdef double s_correct = 0.0
    cdef double s_wrong = 0.0
    cdef double w

    with nogil:
        for i in range(n):
            if confidence[i] >= tau:
                retained += 1
                w = (confidence[i] - tau) / one_minus_tau
                if correct[i]:
                    hits += 1
                    s_correct += w
                else:
                    s_wrong += w
    return retained, hits, s_correct, s_wrong


def credit_accumulate(const double[::1] confidence,
                      const double[::1] credit,
                      double tau):
    """Accumulate the signed graded-correctness sum over retained records.

    ``credit`` uses NaN for "missing"; returns (retained, signed_sum,
    first_missing_index) where the index is -1 when every retained record
    carries a credit value.  The sums are meaningless when an index is
    reported.
    """
    cdef Py_ssize_t i, n = confidence.shape[0]
    cdef Py_ssize_t retained = 0
    cdef Py_ssize_t first_missing = -1
    cdef double one_minus_tau = 1.0 - tau
    cdef double s = 0.0
    cdef double w, k

    with nogil:
        for i in range(n):
            if confidence[i] >= tau:
                k = credit[i]
                if k != k:  # NaN
                    first_missing = i
                    break
                retained += 1
                w = (confidence[i] - tau) / one_minus_tau
                s += w * (2.0 * k - 1.0)
    return retained, s, first_missing
