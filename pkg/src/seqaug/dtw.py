"""Constrained dynamic time warping: distance, optimal path, forced-point
suboptimal path, and shapeDTW descriptor alignment.

The O(T^2) accumulation loop runs in a compiled Cython kernel when the
extension built; a pure-Python twin is selected at import otherwise.
Set SEQAUG_FORCE_PY_KERNEL=1 to force the fallback.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from . import _dtw_py
from .core import as_series
from .errors import ArgumentError, ConstraintError, DimensionError

if os.environ.get("SEQAUG_FORCE_PY_KERNEL") == "1":
    _kernel = _dtw_py
else:
    try:
        from . import _dtw_cy as _kernel
    except ImportError:
        _kernel = _dtw_py

KERNEL = _kernel.KERNEL_NAME

__all__ = ["DtwConfig", "WarpingPath", "dtw", "dtw_forced_point", "shape_dtw", "KERNEL"]


@dataclass(frozen=True)
class DtwConfig:
    """Alignment settings.

    window_fraction: Sakoe-Chiba band half-width as a fraction of the
    longer length. slope is fixed to the symmetric step pattern
    (diagonal weight 2, axis moves weight 1). descriptor_len is the
    shapeDTW subsequence length (odd), used only by shape_dtw.
    """

    window_fraction: float = 1.0
    slope: str = "symmetric"
    descriptor_len: int | None = 5

    def __post_init__(self):
        if not 0 < self.window_fraction <= 1:
            raise ArgumentError("window_fraction must be in (0, 1]")
        if self.slope != "symmetric":
            raise ArgumentError("only the symmetric step pattern is supported")

    def window(self, n: int, m: int) -> int:
        """Effective band half-width; widened so a path always exists."""
        return max(math.ceil(self.window_fraction * max(n, m)), abs(n - m))


@dataclass(frozen=True)
class WarpingPath:
    """Monotone sequence of (i, j) index pairs from (0, 0) to the ends."""

    pairs: np.ndarray

    def validate(self, n: int, m: int, w: int | None = None) -> None:
        p = self.pairs
        if tuple(p[0]) != (0, 0) or tuple(p[-1]) != (n - 1, m - 1):
            raise AssertionError("path endpoints are wrong")
        steps = np.diff(p, axis=0)
        if np.any(steps < 0) or np.any(steps > 1) or np.any(steps.sum(axis=1) == 0):
            raise AssertionError("path is not step-wise monotone")
        if w is not None and np.any(np.abs(p[:, 0] - p[:, 1]) > w):
            raise AssertionError("path leaves the band")

    def transpose(self) -> "WarpingPath":
        return WarpingPath(self.pairs[:, ::-1].copy())

    def __len__(self) -> int:
        return len(self.pairs)


def _prepare(x, y):
    xa, ya = as_series(x), as_series(y)
    if xa.shape[1] != ya.shape[1]:
        raise DimensionError(
            f"channel counts differ: {xa.shape[1]} vs {ya.shape[1]}"
        )
    return xa, ya


def dtw(x, y, cfg: DtwConfig = DtwConfig(),
        squared: bool = False) -> tuple[float, WarpingPath]:
    """Banded DTW distance and optimal path under the symmetric step
    pattern. Ties in backtracking prefer diagonal, then vertical.

    ``squared=True`` uses squared-Euclidean local costs; barycenter
    averaging aligns under that objective so its update step provably
    decreases the cost."""
    xa, ya = _prepare(x, y)
    local = cdist(xa, ya, metric="sqeuclidean" if squared else "euclidean")
    w = cfg.window(xa.shape[0], ya.shape[0])
    dist, pairs = _kernel.accumulate(local, w)
    return dist, WarpingPath(pairs)


def dtw_forced_point(x, y, cfg: DtwConfig, point) -> tuple[float, WarpingPath]:
    """Suboptimal DTW whose path is forced through ``point`` = (i, j).

    Solves the prefix problem to the point and the suffix problem from
    it; the returned distance is the cost of the best path containing
    the point, which is >= the unconstrained dtw distance.
    """
    xa, ya = _prepare(x, y)
    n, m = xa.shape[0], ya.shape[0]
    i, j = int(point[0]), int(point[1])
    w = cfg.window(n, m)
    if not (0 <= i < n and 0 <= j < m):
        raise ConstraintError(f"forced point {point} outside the cost matrix")
    if abs(i - j) > w:
        raise ConstraintError(f"forced point {point} outside the band (w={w})")

    local = cdist(xa, ya)
    d_pre, p_pre = _kernel.accumulate(local[: i + 1, : j + 1], w)
    # suffix start cell is already paid for by the prefix
    d_suf, p_suf = _kernel.accumulate(local[i:, j:], w, oi=i, oj=j, start_weight=0.0)
    if p_pre is None or p_suf is None:
        raise ConstraintError(f"forced point {point} is band-infeasible")
    suffix = p_suf[1:] + np.array([i, j]) if len(p_suf) > 1 else np.empty((0, 2), np.int64)
    pairs = np.concatenate([p_pre, suffix], axis=0)
    return d_pre + d_suf, WarpingPath(pairs)


def _descriptors(arr: np.ndarray, length: int) -> np.ndarray:
    """Raw-subsequence shapeDTW descriptors with edge-replication padding.

    Each row is the flattened length-``length`` window centered at t,
    shape (T, length * D)."""
    half = length // 2
    padded = np.concatenate(
        [np.repeat(arr[:1], half, axis=0), arr, np.repeat(arr[-1:], half, axis=0)]
    )
    t = arr.shape[0]
    windows = np.stack([padded[k : k + t] for k in range(length)], axis=1)
    return windows.reshape(t, -1)


def shape_dtw(x, y, cfg: DtwConfig = DtwConfig()) -> tuple[float, WarpingPath]:
    """DTW whose local cost compares fixed-length subsequence descriptors
    centered at each step instead of single samples."""
    ell = cfg.descriptor_len
    if ell is None:
        return dtw(x, y, cfg)
    if ell < 1 or ell % 2 == 0:
        raise ArgumentError("descriptor_len must be odd and positive")
    xa, ya = _prepare(x, y)
    local = cdist(_descriptors(xa, ell), _descriptors(ya, ell))
    w = cfg.window(xa.shape[0], ya.shape[0])
    dist, pairs = _kernel.accumulate(local, w)
    return dist, WarpingPath(pairs)
