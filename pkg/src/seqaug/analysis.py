"""Dataset-property statistics, PCA projection coordinates, correlation
analysis against externally supplied accuracy deltas, and the wall-clock
augmentation timing benchmark.

Variances are population variances (no Bessel correction) per the
definitions: dataset variance is the mean per-time-step variance over
all training patterns; intra-class variance applies the
(1/(N*C)) * sum_c (N_c/T) * sum_t var weighting verbatim.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass

import numpy as np

from .dataset import AugmentConfig, LabeledDataset, augment_dataset
from .errors import ArgumentError

__all__ = [
    "PropertyReport",
    "TimingReport",
    "dataset_variance",
    "intra_class_variance",
    "compute_properties",
    "pca_project",
    "pearson_corr",
    "corr_report",
    "bench_method",
]

PROPERTY_NAMES = (
    "n_train",
    "patterns_per_class",
    "length",
    "dataset_variance",
    "intra_class_variance",
)


@dataclass(frozen=True)
class PropertyReport:
    name: str
    n_train: int
    patterns_per_class: float
    length: int
    dataset_variance: float
    intra_class_variance: float


@dataclass(frozen=True)
class TimingReport:
    dataset: str
    method: str
    seconds: float
    generated: int
    machine_note: str = ""


def _stacked(ds: LabeledDataset) -> np.ndarray:
    arrs = [np.asarray(s, dtype=np.float64) for s in ds.series]
    lengths = {a.shape[0] for a in arrs}
    if len(lengths) != 1:
        raise ArgumentError("dataset must be preprocessed to uniform length")
    return np.stack([a if a.ndim == 2 else a[:, None] for a in arrs])  # (N, T, D)


def dataset_variance(ds: LabeledDataset) -> float:
    """Mean over time steps of the per-step population variance across
    the whole training set."""
    data = _stacked(ds)
    if data.shape[0] < 2:
        raise ArgumentError("dataset variance needs at least two patterns")
    return float(np.mean(np.var(data, axis=0)))


def intra_class_variance(ds: LabeledDataset) -> float:
    """(1/(N*C)) * sum_c (N_c/T) * sum_t var_{c,t}, population variance
    within each class. Classes with a single member contribute zero."""
    data = _stacked(ds)
    n = data.shape[0]
    classes = np.unique(ds.labels)
    total = 0.0
    for c in classes:
        members = data[ds.labels == c]
        if members.shape[0] < 2:
            warnings.warn(f"class {c} has a single member; contributes 0")
            continue
        total += members.shape[0] * np.mean(np.var(members, axis=0))
    return float(total / (n * len(classes)))


def compute_properties(ds: LabeledDataset) -> PropertyReport:
    return PropertyReport(
        name=ds.name,
        n_train=len(ds),
        patterns_per_class=len(ds) / ds.n_classes,
        length=int(np.asarray(ds.series[0]).shape[0]),
        dataset_variance=dataset_variance(ds),
        intra_class_variance=intra_class_variance(ds),
    )


def _power_iteration(cov: np.ndarray, start: np.ndarray,
                     tol: float = 1e-10, max_iter: int = 10000):
    v = start / np.linalg.norm(start)
    lam = 0.0
    for _ in range(max_iter):
        nxt = cov @ v
        norm = np.linalg.norm(nxt)
        if norm == 0:
            return 0.0, v
        nxt = nxt / norm
        if nxt @ v < 0:  # remove sign flip between iterations
            nxt = -nxt
        done = np.linalg.norm(nxt - v) < tol
        v = nxt
        lam = v @ cov @ v
        if done:
            break
    return lam, v


def pca_project(series_set, k: int = 2) -> np.ndarray:
    """Project flattened, mean-centered series onto the top-k principal
    components obtained by deflated power iteration.

    Deterministic: initialization uses fixed basis vectors and each
    component's sign is fixed so its largest-magnitude loading is
    positive. Returns an (N, k) coordinate array.
    """
    rows = np.stack([np.asarray(s, dtype=np.float64).ravel() for s in series_set])
    n, t = rows.shape
    if n < 2:
        raise ArgumentError("pca needs at least two series")
    if k > min(n, t):
        raise ArgumentError(f"k={k} exceeds min(N, T)={min(n, t)}")
    centered = rows - rows.mean(axis=0)
    cov = centered.T @ centered / n

    components = []
    for comp in range(k):
        # seed-free init: basis vector not orthogonal to the remaining space
        for basis in range(t):
            start = np.zeros(t)
            start[(comp + basis) % t] = 1.0
            for prev in components:
                start -= (start @ prev) * prev
            if np.linalg.norm(start) > 1e-12:
                break
        _, v = _power_iteration(cov, start)
        for prev in components:  # re-orthogonalize against earlier components
            v -= (v @ prev) * prev
        norm = np.linalg.norm(v)
        if norm > 0:
            v = v / norm
        if v[np.argmax(np.abs(v))] < 0:
            v = -v
        components.append(v)
        lam = v @ cov @ v
        cov = cov - lam * np.outer(v, v)

    basis_mat = np.stack(components, axis=1)
    return centered @ basis_mat


def pearson_corr(a, b) -> float:
    """Standard Pearson correlation coefficient."""
    av = np.asarray(a, dtype=np.float64)
    bv = np.asarray(b, dtype=np.float64)
    if av.shape != bv.shape or av.ndim != 1 or av.size < 2:
        raise ArgumentError("inputs must be equal-length vectors of size >= 2")
    ac = av - av.mean()
    bc = bv - bv.mean()
    denom = np.sqrt((ac @ ac) * (bc @ bc))
    if denom == 0:
        raise ArgumentError("pearson correlation undefined for zero variance")
    return float(np.clip(ac @ bc / denom, -1.0, 1.0))


def corr_report(properties: list[PropertyReport],
                delta_acc: dict[str, list[float]]) -> dict[str, dict[str, float]]:
    """Correlate each method's accuracy deltas (one per dataset, aligned
    with ``properties``) against the five dataset properties.

    Zero-variance delta columns are reported as NaN (missing).
    """
    out: dict[str, dict[str, float]] = {}
    for method, deltas in delta_acc.items():
        if len(deltas) != len(properties):
            raise ArgumentError(
                f"method {method!r}: {len(deltas)} deltas for "
                f"{len(properties)} datasets"
            )
        row = {}
        for prop in PROPERTY_NAMES:
            col = [getattr(p, prop) for p in properties]
            try:
                row[prop] = pearson_corr(col, deltas)
            except ArgumentError:
                row[prop] = float("nan")
        out[method] = row
    return out


def bench_method(ds: LabeledDataset, method: str, cfg: AugmentConfig | None = None,
                 multiplier: int = 1, machine_note: str = "") -> TimingReport:
    """Wall-clock seconds for one single-threaded augmentation pass."""
    if cfg is None:
        cfg = AugmentConfig(method=method, multiplier=multiplier)
    else:
        from dataclasses import replace

        cfg = replace(cfg, method=method, multiplier=multiplier)
    start = time.perf_counter()
    generated = augment_dataset(ds, cfg, workers=1)
    elapsed = time.perf_counter() - start
    return TimingReport(dataset=ds.name, method=method, seconds=elapsed,
                        generated=len(generated), machine_note=machine_note)
