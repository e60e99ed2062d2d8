"""UCR-archive TSV ingestion, preprocessing (train-set min/max scaling to
[-1, 1], zero padding, NaN imputation), and augmented-dataset emission.

File format: one series per line, label first, tab-separated real values,
"NaN" allowed for missing samples.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import mixing, transforms
from .core import SeedSpec, as_series
from .errors import ArgumentError, FormatError, ParseError
from .transforms import TransformParams
from .mixing import MixingParams

__all__ = [
    "LabeledDataset",
    "METHODS",
    "load_tsv",
    "write_tsv",
    "normalize_minmax",
    "pad_and_impute",
    "augment_dataset",
]

# the 12 evaluated methods, plus the identity baseline and a
# deterministic "flipping" variant of rotation
METHODS = (
    "none",
    "jittering",
    "rotation",
    "flipping",
    "scaling",
    "magnitude-warp",
    "permutation",
    "slicing",
    "time-warp",
    "window-warp",
    "spawner",
    "wdba",
    "rgw",
    "dgw",
)


@dataclass
class LabeledDataset:
    series: list[np.ndarray]
    labels: np.ndarray
    split: str = "train"
    name: str = ""
    norm_state: tuple[float, float] | None = None

    def __post_init__(self):
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if len(self.series) != len(self.labels) or len(self.series) == 0:
            raise ArgumentError("series and labels must be non-empty and equal length")

    def __len__(self) -> int:
        return len(self.series)

    @property
    def n_classes(self) -> int:
        return len(np.unique(self.labels))

    def class_indices(self, label: int) -> list[int]:
        return [k for k in range(len(self)) if self.labels[k] == label]


def load_tsv(path) -> LabeledDataset:
    """Load a label-first UCR TSV. Ragged lengths and NaN tokens are kept
    for the padding/imputation stage; labels are remapped to 0..C-1
    preserving the sorted order of the original labels."""
    raw_labels: list[float] = []
    series: list[np.ndarray] = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            tokens = line.split("\t")
            if len(tokens) < 2:
                raise ParseError("line needs a label and at least one value",
                                 line=lineno)
            try:
                raw_labels.append(float(tokens[0]))
            except ValueError:
                raise ParseError(f"bad label {tokens[0]!r}", line=lineno, column=1)
            values = np.empty(len(tokens) - 1)
            for col, tok in enumerate(tokens[1:], start=2):
                try:
                    values[col - 2] = float(tok)  # float("NaN") parses the NaN token
                except ValueError:
                    raise ParseError(f"bad value {tok!r}", line=lineno, column=col)
            series.append(values[:, None])
    if not series:
        raise FormatError(f"{path}: no series found")

    uniq = sorted(set(raw_labels))
    remap = {orig: k for k, orig in enumerate(uniq)}
    labels = np.array([remap[v] for v in raw_labels], dtype=np.int64)
    name = _stem(path)
    return LabeledDataset(series=series, labels=labels, name=name)


def _stem(path) -> str:
    import os

    base = os.path.basename(str(path))
    if base.endswith(".tsv"):
        base = base[:-4]
    for suffix in ("_TRAIN", "_TEST"):
        if base.endswith(suffix):
            base = base[: -len(suffix)]
    return base


def _fmt(v: float) -> str:
    if math.isnan(v):
        return "NaN"
    return f"{v:.6g}"


def write_tsv(ds: LabeledDataset, path) -> None:
    """Emit in the same label-first TSV format, 6 significant digits."""
    with open(path, "w") as fh:
        for arr, label in zip(ds.series, ds.labels):
            vals = np.asarray(arr)[:, 0]
            fh.write("\t".join([str(int(label))] + [_fmt(v) for v in vals]) + "\n")


def normalize_minmax(train: LabeledDataset, test: LabeledDataset | None = None):
    """Affine map putting the TRAIN-set global min at -1 and max at +1,
    applied to both splits; out-of-range test values are permitted."""
    stacked = np.concatenate([np.asarray(s).ravel() for s in train.series])
    finite = stacked[np.isfinite(stacked)]
    lo, hi = float(finite.min()), float(finite.max())
    if hi == lo:
        warnings.warn("degenerate train span: all values map to 0")

        def apply(v):
            return np.where(np.isnan(v), v, 0.0)
    else:

        def apply(v):
            return 2.0 * (v - lo) / (hi - lo) - 1.0

    def transform(ds, split):
        return replace(
            ds,
            series=[apply(np.asarray(s, dtype=np.float64)) for s in ds.series],
            norm_state=(lo, hi),
            split=split,
        )

    train_out = transform(train, "train")
    if test is None:
        return train_out
    return train_out, transform(test, "test")


def denormalize(ds: LabeledDataset) -> LabeledDataset:
    """Inverse of normalize_minmax using the recorded norm_state."""
    if ds.norm_state is None:
        raise ArgumentError("dataset carries no norm_state")
    lo, hi = ds.norm_state
    return replace(
        ds,
        series=[(np.asarray(s) + 1.0) * (hi - lo) / 2.0 + lo for s in ds.series],
        norm_state=None,
    )


def pad_and_impute(ds: LabeledDataset, target_length: int | None = None) -> LabeledDataset:
    """Right-pad every series with zeros to the longest length (or an
    explicit target, e.g. the max over a train/test pair) and replace
    NaN placeholders with zeros."""
    longest = max(np.asarray(s).shape[0] for s in ds.series)
    target = max(longest, target_length or 0)
    out = []
    for s in ds.series:
        arr = np.asarray(s, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr[:, None]
        arr = np.nan_to_num(arr, nan=0.0)
        if arr.shape[0] < target:
            pad = np.zeros((target - arr.shape[0], arr.shape[1]))
            arr = np.concatenate([arr, pad], axis=0)
        out.append(arr)
    return replace(ds, series=out)


@dataclass(frozen=True)
class AugmentConfig:
    """Method selection plus every tunable parameter and the master seed."""

    method: str = "none"
    multiplier: int = 4
    master_seed: int = 0
    transform: TransformParams = field(default_factory=TransformParams)
    mixing: MixingParams = field(default_factory=MixingParams)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ArgumentError(
                f"unknown method {self.method!r}; valid: {', '.join(METHODS)}"
            )
        if self.multiplier < 1:
            raise ArgumentError("multiplier must be >= 1")


_MIXING_METHODS = {"spawner", "wdba", "rgw", "dgw"}


def _pick_partner(ds, idx, rng):
    same = [k for k in ds.class_indices(int(ds.labels[idx])) if k != idx]
    if not same:
        return None
    return same[int(rng.integers(len(same)))]


def generate_one(ds: LabeledDataset, idx: int, cfg: AugmentConfig,
                 stream_id: int) -> np.ndarray:
    """Generate one synthetic pattern from ds.series[idx] using substream
    ``stream_id``; fully determined by (ds, idx, cfg, stream_id)."""
    rng = SeedSpec(cfg.master_seed, stream_id).generator()
    x = as_series(ds.series[idx])
    t, m = cfg.transform, cfg.mixing
    method = cfg.method

    if method == "none":
        return x.copy()
    if method == "jittering":
        return transforms.jitter(x, t, rng)
    if method == "flipping":
        return transforms.flip(x)
    if method == "rotation":
        if x.shape[1] == 1:
            # univariate rotation: invert randomly chosen patterns
            return transforms.flip(x) if rng.random() < 0.5 else x.copy()
        return transforms.rotate(x, t, rng)
    if method == "scaling":
        return transforms.scale(x, t, rng)
    if method == "magnitude-warp":
        return transforms.magnitude_warp(x, t, rng)
    if method == "permutation":
        return transforms.permute(x, t, rng)
    if method == "slicing":
        return transforms.window_slice(x, t, rng)
    if method == "time-warp":
        return transforms.time_warp(x, t, rng)
    if method == "window-warp":
        return transforms.window_warp(x, t, rng)

    # pattern mixing: partners always come from the reference's class
    if method == "spawner":
        partner = _pick_partner(ds, idx, rng)
        if partner is None:
            warnings.warn(f"pattern {idx} has no same-class partner; copying")
            return x.copy()
        return mixing.spawner(x, ds.series[partner], m, rng)
    if method == "wdba":
        return mixing.wdba_asd(ds, idx, m, rng)
    if method == "rgw":
        partner = _pick_partner(ds, idx, rng)
        if partner is None:
            warnings.warn(f"pattern {idx} has no same-class teacher; copying")
            return x.copy()
        return mixing.rgw(x, ds.series[partner], m.dtw_config(), use_shape=False)
    if method == "dgw":
        return mixing.dgw(x, ds, idx, m, rng)
    raise ArgumentError(f"unknown method {method!r}")


def _generate_chunk(args):
    ds, cfg, jobs = args
    return [generate_one(ds, idx, cfg, stream) for idx, stream in jobs]


def augment_dataset(ds: LabeledDataset, cfg: AugmentConfig,
                    workers: int = 1) -> LabeledDataset:
    """Generate multiplier * N new patterns (originals are not included).

    Generation (i, r) uses substream i * multiplier + r, so output bytes
    are independent of worker count and scheduling.
    """
    n = len(ds)
    jobs = [(i, i * cfg.multiplier + r) for i in range(n) for r in range(cfg.multiplier)]
    if workers <= 1:
        generated = [generate_one(ds, idx, cfg, stream) for idx, stream in jobs]
    else:
        chunks = [(ds, cfg, jobs[k::workers]) for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_generate_chunk, chunks))
        generated = [None] * len(jobs)
        for k, part in enumerate(parts):
            for slot, series in zip(range(k, len(jobs), workers), part):
                generated[slot] = series
    labels = np.repeat(ds.labels, cfg.multiplier)
    return LabeledDataset(series=generated, labels=labels, split=ds.split,
                          name=f"{ds.name}_{cfg.method}_x{cfg.multiplier}",
                          norm_state=ds.norm_state)
