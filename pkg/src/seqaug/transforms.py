"""The eight random-transformation augmentations.

Defaults follow the evaluated parameterizations: jitter sigma 0.03,
scaling and warping sigma 0.2 with four spline knots, 90% slicing,
two-to-five equal permutation segments, and 10% window warping by
0.5x or 2x. Every transform preserves the input length and channel
count and is a pure function of (input, params, seed).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Knots, as_series, cubic_spline_eval, even_knots, resample_linear, resolve_rng
from .errors import ArgumentError, ConstraintError, DimensionError

__all__ = [
    "TransformParams",
    "jitter",
    "flip",
    "rotate",
    "scale",
    "magnitude_warp",
    "permute",
    "window_slice",
    "time_warp",
    "time_warp_curve",
    "window_warp",
]


@dataclass(frozen=True)
class TransformParams:
    jitter_sigma: float = 0.03
    scale_sigma: float = 0.2
    scale_per_channel: bool = True
    magwarp_sigma: float = 0.2
    magwarp_knots: int = 4
    magwarp_per_channel: bool = True
    magwarp_random_positions: bool = False
    timewarp_sigma: float = 0.2
    timewarp_knots: int = 4
    slice_ratio: float = 0.9
    permute_segments: tuple[int, int] = (2, 5)
    permute_mode: str = "equal"
    windowwarp_ratio: float = 0.1
    windowwarp_scales: tuple[float, ...] = (0.5, 2.0)
    rotation_sigma: float = 0.2

    def __post_init__(self):
        for name in ("jitter_sigma", "scale_sigma", "magwarp_sigma",
                     "timewarp_sigma", "rotation_sigma"):
            if getattr(self, name) < 0:
                raise ArgumentError(f"{name} must be >= 0")
        if not 0 < self.slice_ratio <= 1:
            raise ArgumentError("slice_ratio must be in (0, 1]")
        if not 0 < self.windowwarp_ratio < 1:
            raise ArgumentError("windowwarp_ratio must be in (0, 1)")
        if self.permute_mode not in ("equal", "variable"):
            raise ArgumentError("permute_mode must be 'equal' or 'variable'")
        lo, hi = self.permute_segments
        if lo < 1 or hi < lo:
            raise ArgumentError("permute_segments must be a range with 1 <= lo <= hi")
        if self.magwarp_knots < 2 or self.timewarp_knots < 2:
            raise ArgumentError("knot counts must be >= 2")
        if not self.windowwarp_scales or min(self.windowwarp_scales) <= 0:
            raise ArgumentError("windowwarp_scales must be positive")


def _shaped(x, out: np.ndarray) -> np.ndarray:
    return out[:, 0] if np.asarray(x).ndim == 1 else out


def jitter(x, params: TransformParams = TransformParams(), seed=0) -> np.ndarray:
    """Add i.i.d. Gaussian noise per time step and channel."""
    arr = as_series(x)
    if params.jitter_sigma == 0:
        return _shaped(x, arr.copy())
    rng = resolve_rng(seed)
    return _shaped(x, arr + rng.normal(0.0, params.jitter_sigma, size=arr.shape))


def flip(x) -> np.ndarray:
    """Invert the signal about zero (univariate rotation)."""
    arr = as_series(x)
    return _shaped(x, -arr)


def rotate(x, params: TransformParams = TransformParams(), seed=0,
           force_theta: float | None = None) -> np.ndarray:
    """Rotate multivariate samples by one random angle in one random
    coordinate plane; per-sample norms are preserved."""
    arr = as_series(x)
    d = arr.shape[1]
    if d < 2:
        raise DimensionError("rotate needs D >= 2; use flip for univariate series")
    rng = resolve_rng(seed)
    planes = [(p, q) for p in range(d) for q in range(p + 1, d)]
    p, q = planes[rng.integers(len(planes))]
    if force_theta is not None:
        theta = force_theta
    else:
        theta = rng.normal(0.0, params.rotation_sigma) if params.rotation_sigma > 0 else 0.0
    out = arr.copy()
    c, s = np.cos(theta), np.sin(theta)
    out[:, p] = c * arr[:, p] - s * arr[:, q]
    out[:, q] = s * arr[:, p] + c * arr[:, q]
    return _shaped(x, out)


def scale(x, params: TransformParams = TransformParams(), seed=0,
          force_alpha: float | None = None) -> np.ndarray:
    """Multiply the whole series by alpha ~ N(1, sigma^2)."""
    arr = as_series(x)
    if force_alpha is not None:
        return _shaped(x, arr * force_alpha)
    if params.scale_sigma == 0:
        return _shaped(x, arr.copy())
    rng = resolve_rng(seed)
    size = arr.shape[1] if params.scale_per_channel else 1
    alpha = rng.normal(1.0, params.scale_sigma, size=size)
    return _shaped(x, arr * alpha)


def _knot_heights(rng, n_knots, sigma, channels):
    return rng.normal(1.0, sigma, size=(n_knots, channels))


def _warp_knots(rng, n_knots, length, params) -> np.ndarray:
    """Knot positions over [0, T-1]; interior positions optionally random."""
    if not params.magwarp_random_positions or n_knots == 2:
        return np.linspace(0.0, length - 1.0, n_knots)
    interior = np.sort(rng.uniform(0.0, length - 1.0, size=n_knots - 2))
    # keep positions strictly increasing
    interior = np.clip(interior, 1e-6, length - 1 - 1e-6)
    for k in range(1, len(interior)):
        if interior[k] <= interior[k - 1]:
            interior[k] = np.nextafter(interior[k - 1], np.inf)
    return np.concatenate([[0.0], interior, [length - 1.0]])


def magnitude_warp(x, params: TransformParams = TransformParams(), seed=0,
                   force_heights=None) -> np.ndarray:
    """Multiply each step by a smooth random curve: a natural cubic
    spline through knots with heights ~ N(1, sigma^2)."""
    arr = as_series(x)
    t, d = arr.shape
    if params.magwarp_sigma == 0 and force_heights is None:
        return _shaped(x, arr.copy())
    rng = resolve_rng(seed)
    positions = _warp_knots(rng, params.magwarp_knots, t, params)
    channels = d if params.magwarp_per_channel else 1
    if force_heights is not None:
        heights = np.tile(np.asarray(force_heights, dtype=np.float64)[:, None],
                          (1, channels))
    else:
        heights = _knot_heights(rng, params.magwarp_knots, params.magwarp_sigma, channels)
    steps = np.arange(t, dtype=np.float64)
    curve = np.column_stack(
        [cubic_spline_eval(Knots(positions, heights[:, c]), steps) for c in range(channels)]
    )
    return _shaped(x, arr * curve)


def permute(x, params: TransformParams = TransformParams(), seed=0) -> np.ndarray:
    """Split into N segments and concatenate them in random order."""
    arr = as_series(x)
    t = arr.shape[0]
    rng = resolve_rng(seed)
    lo, hi = params.permute_segments
    n = int(rng.integers(lo, hi + 1))
    if n > t:
        raise ConstraintError(f"cannot split {t} steps into {n} segments")
    if n == 1:
        return _shaped(x, arr.copy())
    if params.permute_mode == "equal":
        # remainder goes to the leading segments
        segments = np.array_split(arr, n, axis=0)
    else:
        cuts = np.sort(rng.choice(np.arange(1, t), size=n - 1, replace=False))
        segments = np.split(arr, cuts, axis=0)
    order = rng.permutation(n)
    return _shaped(x, np.concatenate([segments[k] for k in order], axis=0))


def window_slice(x, params: TransformParams = TransformParams(), seed=0) -> np.ndarray:
    """Crop a random window of round(ratio * T) steps, then linearly
    resample it back to the original length."""
    arr = as_series(x)
    t = arr.shape[0]
    if params.slice_ratio == 1:
        return _shaped(x, arr.copy())
    window = int(round(params.slice_ratio * t))
    if window < 2:
        raise ConstraintError(f"slice window of {window} steps is too short")
    rng = resolve_rng(seed)
    start = int(rng.integers(0, t - window + 1))
    return _shaped(x, resample_linear(arr[start : start + window], t))


def time_warp_curve(params: TransformParams, length: int, rng) -> np.ndarray:
    """The cumulative warp tau: strictly increasing, tau(0) = 0 and
    tau(T-1) = T-1, from a spline rate curve with N(1, sigma^2) knots.

    Non-positive rate draws are rejected and redrawn (bounded)."""
    steps = np.arange(length, dtype=np.float64)
    for _ in range(16):
        heights = rng.normal(1.0, params.timewarp_sigma, size=params.timewarp_knots)
        rate = cubic_spline_eval(even_knots(params.timewarp_knots, length, heights), steps)
        if np.all(rate > 0):
            cum = np.concatenate([[0.0], np.cumsum(rate[1:])])
            tau = cum * (length - 1.0) / cum[-1]
            tau[-1] = length - 1.0
            return tau
    raise ConstraintError("could not draw a positive time-warp rate curve")


def time_warp(x, params: TransformParams = TransformParams(), seed=0) -> np.ndarray:
    """Resample the series along a smooth random monotone warp of the
    time axis; endpoints are preserved."""
    arr = as_series(x)
    t = arr.shape[0]
    if params.timewarp_sigma == 0:
        return _shaped(x, arr.copy())
    rng = resolve_rng(seed)
    tau = time_warp_curve(params, t, rng)
    steps = np.arange(t, dtype=np.float64)
    out = np.column_stack(
        [np.interp(steps, tau, arr[:, c]) for c in range(arr.shape[1])]
    )
    out[0] = arr[0]
    out[-1] = arr[-1]
    return _shaped(x, out)


def window_warp(x, params: TransformParams = TransformParams(), seed=0,
                force_scale: float | None = None) -> np.ndarray:
    """Stretch or contract a random window by a scale from the allowed
    set, then resample the whole series back to the original length."""
    arr = as_series(x)
    t = arr.shape[0]
    rng = resolve_rng(seed)
    window = int(round(params.windowwarp_ratio * t))
    if window < 2:
        raise ConstraintError(f"warp window of {window} steps is too short")
    scales = tuple(params.windowwarp_scales)
    chosen = force_scale if force_scale is not None else scales[rng.integers(len(scales))]
    start = int(rng.integers(0, t - window + 1))
    if chosen == 1.0:
        return _shaped(x, arr.copy())
    warped = resample_linear(arr[start : start + window], max(2, int(round(window * chosen))))
    full = np.concatenate([arr[:start], warped, arr[start + window :]], axis=0)
    return _shaped(x, resample_linear(full, t))
