"""seqaug: deterministic, seedable time-series data augmentation.

Implements eight random-transformation methods (jittering, rotation /
flipping, scaling, magnitude warping, permutation, slicing, time
warping, window warping) and four DTW-based pattern-mixing methods
(SPAWNER, wDBA-ASD, RGW, DGW), plus UCR-format ingestion, dataset
property analysis, and a timing benchmark.
"""

from .core import Knots, SeedSpec, cubic_spline_eval, draw_gaussian, resample_linear
from .dataset import (
    METHODS,
    AugmentConfig,
    LabeledDataset,
    augment_dataset,
    load_tsv,
    normalize_minmax,
    pad_and_impute,
    write_tsv,
)
from .dtw import KERNEL, DtwConfig, WarpingPath, dtw, dtw_forced_point, shape_dtw
from .mixing import MixingParams, dba, dgw, rgw, spawner, wdba_asd
from .transforms import (
    TransformParams,
    flip,
    jitter,
    magnitude_warp,
    permute,
    rotate,
    scale,
    time_warp,
    window_slice,
    window_warp,
)

__version__ = "0.1.0"

__all__ = [
    "AugmentConfig",
    "DtwConfig",
    "KERNEL",
    "Knots",
    "LabeledDataset",
    "METHODS",
    "MixingParams",
    "SeedSpec",
    "TransformParams",
    "WarpingPath",
    "augment_dataset",
    "cubic_spline_eval",
    "dba",
    "dgw",
    "draw_gaussian",
    "dtw",
    "dtw_forced_point",
    "flip",
    "jitter",
    "load_tsv",
    "magnitude_warp",
    "normalize_minmax",
    "pad_and_impute",
    "permute",
    "resample_linear",
    "rgw",
    "rotate",
    "scale",
    "shape_dtw",
    "spawner",
    "time_warp",
    "wdba_asd",
    "window_slice",
    "window_warp",
    "write_tsv",
]
