"""Command-line surface: augment datasets, compute property reports,
correlate against external accuracy deltas, run the timing benchmark,
and emit overlay / PCA figures.

Exit codes: 0 success, 2 parse/format errors, 3 method or constraint
errors, 4 missing accuracy-delta rows. The output directory can be set
with --out-dir or the SEQAUG_OUT_DIR environment variable.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import os
import sys
import time

import numpy as np

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
from .errors import (
    ArgumentError,
    ConstraintError,
    DimensionError,
    DomainError,
    FormatError,
    MissingDeltaError,
    ParseError,
    SeqAugError,
)
from .mixing import MixingParams
from .transforms import TransformParams
from . import analysis
from .dataset import generate_one

_TRANSFORM_KEYS = {f.name for f in dataclasses.fields(TransformParams)}
_MIXING_KEYS = {f.name for f in dataclasses.fields(MixingParams)}


def _parse_overrides(pairs: list[str]) -> tuple[dict, dict]:
    """Split key=value overrides into transform/mixing kwargs; unknown
    keys are rejected before any work starts."""
    tkw, mkw = {}, {}
    for pair in pairs:
        if "=" not in pair:
            raise ArgumentError(f"override {pair!r} is not key=value")
        key, raw = pair.split("=", 1)
        if key in _TRANSFORM_KEYS:
            target, field_ = tkw, TransformParams.__dataclass_fields__[key]
        elif key in _MIXING_KEYS:
            target, field_ = mkw, MixingParams.__dataclass_fields__[key]
        else:
            raise ArgumentError(
                f"unknown parameter {key!r}; valid: "
                + ", ".join(sorted(_TRANSFORM_KEYS | _MIXING_KEYS))
            )
        target[key] = _coerce(raw, field_.type)
    return tkw, mkw


def _coerce(raw: str, annotation: str):
    ann = str(annotation)
    if "bool" in ann:
        return raw.lower() in ("1", "true", "yes", "on")
    if "tuple[int, int]" in ann:
        lo, hi = raw.split(",")
        return (int(lo), int(hi))
    if "tuple[float" in ann:
        return tuple(float(v) for v in raw.split(","))
    if "int" in ann:
        return int(raw)
    if "float" in ann:
        return float(raw)
    return raw


def _build_config(args) -> AugmentConfig:
    tkw, mkw = _parse_overrides(args.param or [])
    return AugmentConfig(
        method=args.method,
        multiplier=args.multiplier,
        master_seed=args.seed,
        transform=TransformParams(**tkw),
        mixing=MixingParams(**mkw),
    )


def _out_dir(args, fallback: str) -> str:
    out = args.out_dir or os.environ.get("SEQAUG_OUT_DIR") or fallback
    os.makedirs(out, exist_ok=True)
    return out


def _load_preprocessed(path, normalize: bool = True) -> LabeledDataset:
    if not os.path.exists(path):
        raise FormatError(f"no such file: {path}")
    ds = load_tsv(path)
    if normalize:
        ds = normalize_minmax(ds)
    return pad_and_impute(ds)


def cmd_augment(args) -> int:
    cfg = _build_config(args)  # validates method/params before any work
    ds = _load_preprocessed(args.dataset, normalize=not args.raw)
    start = time.perf_counter()
    generated = augment_dataset(ds, cfg, workers=args.workers)
    elapsed = time.perf_counter() - start
    out_dir = _out_dir(args, os.path.dirname(os.path.abspath(args.dataset)))
    out_path = os.path.join(
        out_dir, f"{ds.name}_{cfg.method}_x{cfg.multiplier}_TRAIN.tsv"
    )
    write_tsv(generated, out_path)
    print(f"generated {len(generated)} patterns in {elapsed:.3f}s -> {out_path}")
    return 0


def _dataset_paths(args) -> list[str]:
    paths = []
    for entry in args.datasets:
        if os.path.isdir(entry):
            paths.extend(
                os.path.join(entry, f)
                for f in sorted(os.listdir(entry))
                if f.endswith("_TRAIN.tsv")
            )
        else:
            paths.append(entry)
    if not paths:
        raise FormatError("no datasets found")
    return paths


def cmd_analyze(args) -> int:
    out_dir = _out_dir(args, ".")
    rows = []
    for path in _dataset_paths(args):
        ds = _load_preprocessed(path)
        report = analysis.compute_properties(ds)
        rows.append(report)
        print(f"{report.name}: N={report.n_train} T={report.length} "
              f"var={report.dataset_variance:.6g} "
              f"intra={report.intra_class_variance:.6g}")
    out_path = os.path.join(out_dir, "properties.csv")
    with open(out_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("dataset",) + analysis.PROPERTY_NAMES)
        for r in rows:
            writer.writerow([r.name, r.n_train, f"{r.patterns_per_class:.6g}",
                             r.length, f"{r.dataset_variance:.6g}",
                             f"{r.intra_class_variance:.6g}"])
    print(f"wrote {out_path}")
    return 0


def cmd_correlate(args) -> int:
    out_dir = _out_dir(args, ".")
    reports = [analysis.compute_properties(_load_preprocessed(p))
               for p in _dataset_paths(args)]

    deltas: dict[tuple[str, str], float] = {}
    with open(args.delta, newline="") as fh:
        reader = csv.DictReader(fh)
        required = {"dataset", "method", "delta_acc"}
        if not required.issubset(reader.fieldnames or ()):
            raise FormatError(
                f"{args.delta}: header must contain {sorted(required)}"
            )
        for row in reader:
            deltas[(row["dataset"], row["method"])] = float(row["delta_acc"])

    methods = sorted({m for (_, m) in deltas})
    missing = [(r.name, m) for m in methods for r in reports
               if (r.name, m) not in deltas]
    if missing:
        raise MissingDeltaError(missing)

    table = {m: [deltas[(r.name, m)] for r in reports] for m in methods}
    corr = analysis.corr_report(reports, table)
    out_path = os.path.join(out_dir, "correlations.csv")
    with open(out_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("method",) + analysis.PROPERTY_NAMES)
        for method in methods:
            writer.writerow([method] + [f"{corr[method][p]:.6g}"
                                        for p in analysis.PROPERTY_NAMES])
    print(f"wrote {out_path}")
    return 0


def cmd_bench(args) -> int:
    out_dir = _out_dir(args, ".")
    methods = args.methods or list(METHODS)
    for m in methods:
        if m not in METHODS:
            raise ArgumentError(f"unknown method {m!r}; valid: {', '.join(METHODS)}")
    datasets = [_load_preprocessed(p) for p in _dataset_paths(args)]
    results: dict[str, dict[str, float]] = {m: {} for m in methods}
    for ds in datasets:
        for method in methods:
            report = analysis.bench_method(ds, method, multiplier=args.multiplier)
            results[method][ds.name] = report.seconds
            print(f"{method:>16} {ds.name:>20} {report.seconds:10.4f}s")
    out_path = os.path.join(out_dir, "bench.csv")
    with open(out_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method"] + [ds.name for ds in datasets])
        for method in methods:
            writer.writerow([method] + [f"{results[method][ds.name]:.6f}"
                                        for ds in datasets])
    print(f"wrote {out_path}")
    return 0


def cmd_plot(args) -> int:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    cfg = _build_config(args)
    ds = _load_preprocessed(args.dataset)
    out_dir = _out_dir(args, ".")
    base = os.path.join(out_dir, f"{ds.name}_{cfg.method}")

    if args.mode in ("overlay", "both"):
        idx = args.index
        original = np.asarray(ds.series[idx])[:, 0]
        generated = generate_one(ds, idx, cfg, stream_id=idx * cfg.multiplier)[:, 0]
        fig, ax = plt.subplots(figsize=(4, 3))
        ax.plot(original, "b:", label="original")
        ax.plot(generated, "r-", label="generated")
        ax.set_title(f"{ds.name}: {cfg.method}")
        ax.legend()
        fig.tight_layout()
        fig.savefig(base + "_overlay.svg")
        plt.close(fig)
        with open(base + "_overlay.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["step", "original", "generated"])
            for t, (o, g) in enumerate(zip(original, generated)):
                writer.writerow([t, f"{o:.6g}", f"{g:.6g}"])
        print(f"wrote {base}_overlay.svg")

    if args.mode in ("pca", "both"):
        generated = augment_dataset(ds, cfg, workers=1)
        coords = analysis.pca_project(list(ds.series) + list(generated.series), k=2)
        n = len(ds)
        labels = np.concatenate([ds.labels, generated.labels])
        fig, ax = plt.subplots(figsize=(4, 4))
        cmap = plt.get_cmap("tab10")
        for c in np.unique(labels):
            orig_mask = (labels[:n] == c)
            gen_mask = (labels[n:] == c)
            ax.scatter(coords[:n][orig_mask, 0], coords[:n][orig_mask, 1],
                       color=cmap(int(c) % 10), marker="o", label=f"class {c}")
            ax.scatter(coords[n:][gen_mask, 0], coords[n:][gen_mask, 1],
                       facecolors="none", edgecolors=cmap(int(c) % 10), marker="o")
        ax.set_xlabel("PC1")
        ax.set_ylabel("PC2")
        ax.set_title(f"{ds.name}: {cfg.method} (solid original, hollow generated)")
        ax.legend()
        fig.tight_layout()
        fig.savefig(base + "_pca.svg")
        plt.close(fig)
        with open(base + "_pca.csv", "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["kind", "label", "pc1", "pc2"])
            kinds = ["original"] * n + ["generated"] * len(generated)
            for kind, lab, (p1, p2) in zip(kinds, labels, coords):
                writer.writerow([kind, int(lab), f"{p1:.6g}", f"{p2:.6g}"])
        print(f"wrote {base}_pca.svg")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqaug",
        description="Deterministic time-series data augmentation toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_method=True):
        if with_method:
            p.add_argument("--method", default="none", help="augmentation method")
            p.add_argument("--multiplier", type=int, default=4)
            p.add_argument("--seed", type=int, default=0, dest="seed")
            p.add_argument("--param", action="append", metavar="KEY=VALUE",
                           help="parameter override, repeatable")
        p.add_argument("--out-dir", default=None)

    p_aug = sub.add_parser("augment", help="write an augmented TRAIN file")
    p_aug.add_argument("dataset", help="path to a *_TRAIN.tsv file")
    add_common(p_aug)
    p_aug.add_argument("--workers", type=int, default=1)
    p_aug.add_argument("--raw", action="store_true",
                       help="skip min/max normalization")
    p_aug.set_defaults(func=cmd_augment)

    p_ana = sub.add_parser("analyze", help="dataset property reports")
    p_ana.add_argument("datasets", nargs="+")
    add_common(p_ana, with_method=False)
    p_ana.set_defaults(func=cmd_analyze)

    p_cor = sub.add_parser("correlate", help="correlate properties vs delta-acc CSV")
    p_cor.add_argument("datasets", nargs="+")
    p_cor.add_argument("--delta", required=True,
                       help="CSV with header dataset,method,delta_acc")
    add_common(p_cor, with_method=False)
    p_cor.set_defaults(func=cmd_correlate)

    p_ben = sub.add_parser("bench", help="timing benchmark table")
    p_ben.add_argument("datasets", nargs="+")
    p_ben.add_argument("--methods", nargs="*", default=None)
    p_ben.add_argument("--multiplier", type=int, default=1)
    add_common(p_ben, with_method=False)
    p_ben.set_defaults(func=cmd_bench)

    p_plot = sub.add_parser("plot", help="overlay and/or PCA figures")
    p_plot.add_argument("dataset")
    add_common(p_plot)
    p_plot.add_argument("--mode", choices=("overlay", "pca", "both"), default="both")
    p_plot.add_argument("--index", type=int, default=0,
                        help="pattern index for the overlay")
    p_plot.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, FormatError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MissingDeltaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (ArgumentError, ConstraintError, DimensionError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except SeqAugError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
