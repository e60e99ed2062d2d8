"""Pure-Python DTW accumulation kernel.

Fallback for environments where the compiled extension is unavailable;
semantics are identical to ``seqaug._dtw_cy.accumulate``. The inner loop
is plain Python, so it is only fast enough for short sequences and tests.
"""

from __future__ import annotations

import numpy as np

KERNEL_NAME = "python"

# backtrack codes
_START, _DIAG, _VERT, _HORIZ = 3, 0, 1, 2


def accumulate(local, w, oi=0, oj=0, start_weight=2.0):
    """Run the banded symmetric-step DP over a local-cost matrix.

    Parameters
    ----------
    local : (n, m) float array of local costs d(i, j).
    w : band half-width; cell (i, j) is allowed iff |(i+oi) - (j+oj)| <= w.
    oi, oj : global index offsets, used when solving a sub-block of a
        larger alignment so the band stays in global coordinates.
    start_weight : weight on the (0, 0) cell; 2.0 for a standalone
        alignment (diagonal start-cell weight), 0.0 for a suffix
        sub-problem whose start cell was already paid for.

    Returns
    -------
    (distance, path) with path an (L, 2) int array from (0, 0) to
    (n-1, m-1), or (inf, None) if the end cell is band-unreachable.
    Ties prefer the diagonal predecessor, then the vertical one.
    """
    local = np.asarray(local, dtype=np.float64)
    n, m = local.shape
    inf = np.inf
    acc = np.full((n, m), inf)
    step = np.full((n, m), -1, dtype=np.int8)

    for i in range(n):
        lo = max(0, i + oi - oj - w)
        hi = min(m - 1, i + oi - oj + w)
        for j in range(lo, hi + 1):
            d = local[i, j]
            if i == 0 and j == 0:
                acc[0, 0] = start_weight * d
                step[0, 0] = _START
                continue
            best = inf
            direction = -1
            if i > 0 and j > 0 and acc[i - 1, j - 1] + 2.0 * d < best:
                best = acc[i - 1, j - 1] + 2.0 * d
                direction = _DIAG
            if i > 0 and acc[i - 1, j] + d < best:
                best = acc[i - 1, j] + d
                direction = _VERT
            if j > 0 and acc[i, j - 1] + d < best:
                best = acc[i, j - 1] + d
                direction = _HORIZ
            acc[i, j] = best
            step[i, j] = direction

    if not np.isfinite(acc[n - 1, m - 1]):
        return inf, None

    path = []
    i, j = n - 1, m - 1
    while True:
        path.append((i, j))
        s = step[i, j]
        if s == _START:
            break
        if s == _DIAG:
            i, j = i - 1, j - 1
        elif s == _VERT:
            i -= 1
        else:
            j -= 1
    path.reverse()
    return float(acc[n - 1, m - 1]), np.asarray(path, dtype=np.int64)
