# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled DTW accumulation kernel.

Same contract as ``seqaug._dtw_py.accumulate``; this version carries the
hot O(n * band) inner loop in C for the pattern-mixing methods that run
thousands of alignments per generated series.
"""

import numpy as np

cimport numpy as cnp

KERNEL_NAME = "cython"

DEF START = 3
DEF DIAG = 0
DEF VERT = 1
DEF HORIZ = 2


def accumulate(local, long w, long oi=0, long oj=0, double start_weight=2.0):
    """Banded symmetric-step DP; see the pure-Python twin for the contract."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] loc = np.ascontiguousarray(local, dtype=np.float64)
    cdef Py_ssize_t n = loc.shape[0]
    cdef Py_ssize_t m = loc.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] acc = np.full((n, m), np.inf)
    cdef cnp.ndarray[cnp.int8_t, ndim=2] step = np.full((n, m), -1, dtype=np.int8)

    cdef double[:, ::1] L = loc
    cdef double[:, ::1] A = acc
    cdef signed char[:, ::1] S = step

    cdef Py_ssize_t i, j, lo, hi
    cdef double d, best, cand
    cdef signed char direction
    cdef double inf = np.inf

    for i in range(n):
        lo = i + oi - oj - w
        if lo < 0:
            lo = 0
        hi = i + oi - oj + w
        if hi > m - 1:
            hi = m - 1
        for j in range(lo, hi + 1):
            d = L[i, j]
            if i == 0 and j == 0:
                A[0, 0] = start_weight * d
                S[0, 0] = START
                continue
            best = inf
            direction = -1
            if i > 0 and j > 0:
                cand = A[i - 1, j - 1] + 2.0 * d
                if cand < best:
                    best = cand
                    direction = DIAG
            if i > 0:
                cand = A[i - 1, j] + d
                if cand < best:
                    best = cand
                    direction = VERT
            if j > 0:
                cand = A[i, j - 1] + d
                if cand < best:
                    best = cand
                    direction = HORIZ
            A[i, j] = best
            S[i, j] = direction

    if A[n - 1, m - 1] == inf:
        return np.inf, None

    cdef cnp.ndarray[cnp.int64_t, ndim=2] rev = np.empty((n + m, 2), dtype=np.int64)
    cdef long[:, ::1] R = rev
    cdef Py_ssize_t k = 0
    cdef signed char s
    i = n - 1
    j = m - 1
    while True:
        R[k, 0] = i
        R[k, 1] = j
        k += 1
        s = S[i, j]
        if s == START:
            break
        if s == DIAG:
            i -= 1
            j -= 1
        elif s == VERT:
            i -= 1
        else:
            j -= 1
    return float(A[n - 1, m - 1]), rev[:k][::-1].copy()
