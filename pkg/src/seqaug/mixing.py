"""Pattern-mixing augmentations: SPAWNER, (w)DBA with ASD weighting, and
random / discriminative guided warping, on top of the DTW engine.

All outputs keep the reference pattern's length and channel count, and
teachers/partners always come from the reference's class; other-class
patterns are only ever used to *select* a teacher in DGW.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .core import as_series, resample_linear, resolve_rng
from .dtw import DtwConfig, dtw, dtw_forced_point, shape_dtw
from .errors import ArgumentError, ConstraintError

__all__ = ["MixingParams", "spawner", "dba", "asd_weights", "wdba_asd", "rgw", "dgw"]


@dataclass(frozen=True)
class MixingParams:
    spawner_sigma: float = 0.5
    spawner_relative_noise: bool = True
    dtw_window: float = 0.1
    dba_iterations: int = 10
    dgw_batch: int = 6
    use_shape_dtw_for_dgw: bool = True
    descriptor_len: int = 5

    def __post_init__(self):
        if not 0 < self.dtw_window <= 1:
            raise ArgumentError("dtw_window must be in (0, 1]")
        if self.spawner_sigma < 0:
            raise ArgumentError("spawner_sigma must be >= 0")
        if self.dba_iterations < 1 or self.dgw_batch < 1:
            raise ArgumentError("dba_iterations and dgw_batch must be >= 1")

    def dtw_config(self) -> DtwConfig:
        return DtwConfig(window_fraction=self.dtw_window,
                         descriptor_len=self.descriptor_len)


def spawner(a, b, params: MixingParams = MixingParams(), seed=0,
            point=None) -> np.ndarray:
    """Average two same-class patterns along a suboptimal warping path
    forced through a random band-feasible point, plus Gaussian noise.

    With the default relative-noise mode the noise std at each step is
    spawner_sigma times the local disagreement |a - b| along the path,
    so sigma = 0.5 perturbs without swamping [-1, 1]-normalized data.
    """
    aa, bb = as_series(a), as_series(b)
    rng = resolve_rng(seed)
    cfg = params.dtw_config()
    n, m = aa.shape[0], bb.shape[0]
    w = cfg.window(n, m)

    if point is None:
        i = int(rng.integers(1, n - 1)) if n > 2 else 0
        j_lo, j_hi = max(0, i - w), min(m - 1, i + w)
        j = int(rng.integers(j_lo, j_hi + 1))
        point = (i, j)
    _, path = dtw_forced_point(aa, bb, cfg, point)

    pi, pj = path.pairs[:, 0], path.pairs[:, 1]
    avg = 0.5 * (aa[pi] + bb[pj])
    out = resample_linear(avg, n)
    if params.spawner_sigma > 0:
        if params.spawner_relative_noise:
            local_std = params.spawner_sigma * resample_linear(np.abs(aa[pi] - bb[pj]), n)
            out = out + rng.standard_normal(out.shape) * local_std
        else:
            out = out + rng.normal(0.0, params.spawner_sigma, size=out.shape)
    return out[:, 0] if np.asarray(a).ndim == 1 else out


def dba(seeds, weights=None, iterations: int = 10,
        cfg: DtwConfig = DtwConfig(window_fraction=0.1),
        init=None) -> np.ndarray:
    """Weighted DTW barycenter averaging.

    Starts from the highest-weight seed (or ``init``); each round aligns
    every seed to the centroid and replaces each centroid element with
    the weighted mean of all seed elements matched to it. Alignment uses
    squared-Euclidean local costs and the mean is weighted by the step
    multiplicity (diagonal matches count twice), so the weighted
    alignment cost is non-increasing across rounds.
    """
    if len(seeds) == 0:
        raise ArgumentError("dba needs at least one seed series")
    arrs = [as_series(s) for s in seeds]
    if weights is None:
        weights = np.full(len(arrs), 1.0 / len(arrs))
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != (len(arrs),):
        raise ArgumentError("weights must match the number of seeds")
    if np.any(weights < 0):
        raise ArgumentError("weights must be non-negative")

    centroid = as_series(init).copy() if init is not None else arrs[int(np.argmax(weights))].copy()
    for _ in range(iterations):
        sums = np.zeros_like(centroid)
        wsum = np.zeros(centroid.shape[0])
        for arr, wgt in zip(arrs, weights):
            if wgt == 0:
                continue
            _, path = dtw(centroid, arr, cfg, squared=True)
            ci, sj = path.pairs[:, 0], path.pairs[:, 1]
            mult = _step_multiplicity(path.pairs)
            np.add.at(sums, ci, (wgt * mult)[:, None] * arr[sj])
            np.add.at(wsum, ci, wgt * mult)
        centroid = sums / wsum[:, None]
    return centroid


def _step_multiplicity(pairs: np.ndarray) -> np.ndarray:
    """DP step weights along a path: 2 for the start cell and diagonal
    moves, 1 for axis moves (the symmetric pattern's weights)."""
    mult = np.ones(len(pairs))
    mult[0] = 2.0
    if len(pairs) > 1:
        diag = np.all(np.diff(pairs, axis=0) == 1, axis=1)
        mult[1:][diag] = 2.0
    return mult


def dba_alignment_cost(centroid, seeds, weights,
                       cfg: DtwConfig = DtwConfig(window_fraction=0.1)) -> float:
    """The objective dba minimizes: weighted squared-cost DTW of every
    seed against the centroid."""
    return float(sum(w * dtw(centroid, s, cfg, squared=True)[0]
                     for w, s in zip(weights, seeds)))


def asd_weights(distances: np.ndarray) -> np.ndarray:
    """Average-Selected-with-Distance weights for a reference's
    neighbors: exponential decay halving at the nearest-neighbor
    distance, w = 0.5 ** (d / d_nn). Zero-distance neighbors weigh 1."""
    d = np.asarray(distances, dtype=np.float64)
    d_nn = d.min()
    if d_nn == 0:
        return np.where(d == 0, 1.0, 0.0)
    return np.power(0.5, d / d_nn)


def wdba_asd(dataset, ref_index: int, params: MixingParams = MixingParams(),
             seed=0) -> np.ndarray:
    """wDBA over the reference's class, ASD-weighted by DTW distance to
    the reference (reference itself gets weight 1)."""
    ref = as_series(dataset.series[ref_index])
    label = dataset.labels[ref_index]
    neighbors = [k for k in range(len(dataset.series))
                 if k != ref_index and dataset.labels[k] == label]
    if not neighbors:
        warnings.warn(f"pattern {ref_index} is alone in its class; returning a copy")
        return ref.copy()
    cfg = params.dtw_config()
    dists = np.array([dtw(ref, dataset.series[k], cfg)[0] for k in neighbors])
    weights = np.concatenate([[1.0], asd_weights(dists)])
    weights = weights / weights.sum()
    seeds = [ref] + [as_series(dataset.series[k]) for k in neighbors]
    out = dba(seeds, weights, iterations=params.dba_iterations, cfg=cfg)
    return resample_linear(out, ref.shape[0])


def _guided_warp(ref: np.ndarray, teacher: np.ndarray, cfg: DtwConfig,
                 use_shape: bool) -> np.ndarray:
    align = shape_dtw if use_shape else dtw
    _, path = align(teacher, ref, cfg)
    ti, rj = path.pairs[:, 0], path.pairs[:, 1]
    sums = np.zeros((teacher.shape[0], ref.shape[1]))
    counts = np.zeros(teacher.shape[0])
    np.add.at(sums, ti, ref[rj])
    np.add.at(counts, ti, 1.0)
    warped = sums / counts[:, None]
    return resample_linear(warped, ref.shape[0])


def rgw(ref, teacher, cfg: DtwConfig = DtwConfig(window_fraction=0.1),
        use_shape: bool = False) -> np.ndarray:
    """Guided warping: set the reference onto the teacher's time steps
    via the DTW alignment, then resample back to the reference length."""
    return _guided_warp(as_series(ref), as_series(teacher), cfg, use_shape)


def dgw(ref, dataset, ref_index: int, params: MixingParams = MixingParams(),
        seed=0) -> np.ndarray:
    """Discriminative guided warping: pick the same-class candidate that
    best separates a sampled batch of same-class vs other-class patterns
    (shapeDTW scores), then guide-warp the reference by it."""
    refa = as_series(ref)
    rng = resolve_rng(seed)
    label = dataset.labels[ref_index]
    positives = [k for k in range(len(dataset.series))
                 if k != ref_index and dataset.labels[k] == label]
    negatives = [k for k in range(len(dataset.series)) if dataset.labels[k] != label]
    if not positives or not negatives:
        raise ConstraintError("dgw needs at least one same-class and one "
                              "other-class candidate")

    def sample(pool):
        take = min(params.dgw_batch, len(pool))
        picked = rng.choice(len(pool), size=take, replace=False)
        return sorted(pool[p] for p in picked)

    pos_batch, neg_batch = sample(positives), sample(negatives)
    cfg = params.dtw_config()
    align = shape_dtw if params.use_shape_dtw_for_dgw else dtw

    best_idx, best_score = None, -np.inf
    for cand in pos_batch:  # ascending index; ties keep the smallest
        c = as_series(dataset.series[cand])
        neg_score = np.mean([align(c, dataset.series[k], cfg)[0] for k in neg_batch])
        others = [k for k in pos_batch if k != cand]
        pos_score = np.mean([align(c, dataset.series[k], cfg)[0] for k in others]) if others else 0.0
        score = neg_score - pos_score
        if score > best_score:
            best_idx, best_score = cand, score

    teacher = as_series(dataset.series[best_idx])
    return _guided_warp(refa, teacher, cfg, params.use_shape_dtw_for_dgw)
