"""Shared numeric primitives: seeded randomness, linear resampling and
natural cubic-spline evaluation.

Series are plain float64 numpy arrays of shape (T, D); helpers accept 1-D
arrays and treat them as a single channel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ArgumentError, DomainError

__all__ = [
    "SeedSpec",
    "Knots",
    "resolve_rng",
    "as_series",
    "resample_linear",
    "even_knots",
    "cubic_spline_eval",
    "draw_gaussian",
]


@dataclass(frozen=True)
class SeedSpec:
    """Master seed plus a per-pattern substream index.

    The same (master_seed, stream_id) always yields the same random
    stream, regardless of execution order or worker count: the stream is
    derived directly from the pair rather than by sequential spawning.
    """

    master_seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_id,))
        return np.random.default_rng(seq)


def resolve_rng(seed) -> np.random.Generator:
    """Accept a Generator, SeedSpec, or plain int and return a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, SeedSpec):
        return seed.generator()
    if isinstance(seed, (int, np.integer)):
        return SeedSpec(int(seed)).generator()
    raise ArgumentError(f"cannot build a random generator from {seed!r}")


def as_series(x) -> np.ndarray:
    """Coerce input to a float64 (T, D) array. 1-D input becomes (T, 1)."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ArgumentError(f"expected a (T, D) series, got shape {arr.shape}")
    return arr


def resample_linear(x: np.ndarray, new_length: int) -> np.ndarray:
    """Piecewise-linear resampling to ``new_length`` steps per channel.

    Endpoints are preserved exactly; a same-length call returns an exact
    copy (no floating-point round-trip through interpolation).
    """
    squeeze = np.asarray(x).ndim == 1
    arr = as_series(x)
    if new_length < 1:
        raise ArgumentError("new_length must be >= 1")
    t = arr.shape[0]
    if new_length == t:
        out = arr.copy()
    elif t == 1:
        out = np.repeat(arr, new_length, axis=0)
    else:
        old_idx = np.arange(t, dtype=np.float64)
        new_idx = np.linspace(0.0, t - 1.0, new_length)
        out = np.column_stack(
            [np.interp(new_idx, old_idx, arr[:, d]) for d in range(arr.shape[1])]
        )
        # guard endpoints against linspace rounding
        out[0] = arr[0]
        out[-1] = arr[-1]
    return out[:, 0] if squeeze else out


@dataclass(frozen=True)
class Knots:
    """Spline knots: strictly increasing positions with matching heights."""

    positions: np.ndarray
    heights: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=np.float64)
        h = np.asarray(self.heights, dtype=np.float64)
        if pos.ndim != 1 or pos.size < 2:
            raise ArgumentError("need at least two knots")
        if h.shape != pos.shape:
            raise ArgumentError("positions and heights must have the same length")
        if np.any(np.diff(pos) <= 0):
            raise ArgumentError("knot positions must be strictly increasing")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "heights", h)


def even_knots(n_knots: int, length: int, heights) -> Knots:
    """Knots evenly spaced over [0, length - 1] including both endpoints."""
    if n_knots < 2:
        raise ArgumentError("n_knots must be >= 2")
    positions = np.linspace(0.0, length - 1.0, n_knots)
    return Knots(positions=positions, heights=np.asarray(heights, dtype=np.float64))


def cubic_spline_eval(knots: Knots, query_points) -> np.ndarray:
    """Natural cubic spline through the knots, evaluated at the queries.

    Queries must lie inside the knot span; extrapolation is refused.
    """
    q = np.asarray(query_points, dtype=np.float64)
    lo, hi = knots.positions[0], knots.positions[-1]
    if np.any(q < lo) or np.any(q > hi):
        raise DomainError(f"query outside knot span [{lo}, {hi}]")
    spline = CubicSpline(knots.positions, knots.heights, bc_type="natural")
    return spline(q)


def draw_gaussian(seed, mean: float, sigma: float, count: int) -> np.ndarray:
    """``count`` i.i.d. Normal(mean, sigma^2) draws, fully seed-determined."""
    if sigma < 0:
        raise ArgumentError("sigma must be >= 0")
    if count < 1:
        raise ArgumentError("count must be >= 1")
    rng = resolve_rng(seed)
    if sigma == 0:
        return np.full(count, float(mean))
    return rng.normal(loc=mean, scale=sigma, size=count)
