"""Benchmark protocol: repeated resample/train/test runs with aggregation."""

from __future__ import annotations

import statistics
import time

from . import __version__
from .boosting import train as train_model
from .config import build_boost_config
from .data import Dataset, SplitSpec, load_csv, split
from .metrics import accuracy, f1

__all__ = ["run_benchmark", "run_single"]


def _load_dataset(cfg: dict) -> Dataset:
    ds_cfg = cfg["dataset"]
    label_map = {str(k): int(v) for k, v in ds_cfg["label_map"].items()}
    return load_csv(ds_cfg["path"], ds_cfg["label_column"], label_map)


def _split_spec(cfg: dict, seed: int) -> SplitSpec:
    s = cfg["split"]
    return SplitSpec(
        s["train_fraction"], s["val_fraction"], s["test_fraction"], s["stratified"], seed
    )


def run_single(cfg: dict, ds: Dataset, mode: str, seed: int) -> dict:
    """Train one model on one split and evaluate it on the test part."""
    train_ds, val_ds, test_ds = split(ds, _split_spec(cfg, seed))
    t0 = time.perf_counter()
    boost_cfg = build_boost_config(cfg, mode, seed)
    classifier, trace = train_model(
        boost_cfg, train_ds, val_ds, adaboost_rounds=cfg["boost"]["adaboost_rounds"]
    )
    seconds = time.perf_counter() - t0
    pred_test = classifier.predict(test_ds.features)
    pred_train = classifier.predict(train_ds.features)
    return {
        "mode": mode,
        "seed": seed,
        "accuracy": accuracy(test_ds.labels, pred_test),
        "f1": f1(test_ds.labels, pred_test),
        "train_accuracy": accuracy(train_ds.labels, pred_train),
        "ensemble_size": len(classifier),
        "train_seconds": seconds,
        "classifier": classifier,
        "trace": trace,
    }


def run_benchmark(cfg: dict, ds: Dataset | None = None) -> dict:
    """Run every configured mode over `repeats` reshuffled splits.

    Repeat r uses seed base_seed + r for splitting and training; all modes in
    a repeat share the same split. Aggregates are means and sample standard
    deviations (0 for a single repeat).
    """
    if ds is None:
        ds = _load_dataset(cfg)
    base_seed = int(cfg["seed"])
    rows = []
    for r in range(int(cfg["repeats"])):
        seed = base_seed + r
        for mode in cfg["modes"]:
            result = run_single(cfg, ds, mode, seed)
            rows.append({"repeat": r, **{k: v for k, v in result.items() if k not in ("classifier", "trace")}})

    aggregates = {}
    for mode in cfg["modes"]:
        mode_rows = [row for row in rows if row["mode"] == mode]
        agg = {}
        for key in ("accuracy", "f1", "train_accuracy", "ensemble_size", "train_seconds"):
            values = [row[key] for row in mode_rows]
            agg[f"{key}_mean"] = statistics.fmean(values)
            agg[f"{key}_std"] = statistics.stdev(values) if len(values) > 1 else 0.0
        aggregates[mode] = agg

    return {
        "version": __version__,
        "config": cfg,
        "rows": rows,
        "aggregates": aggregates,
    }


def report_to_csv(report: dict) -> str:
    """Summary table, one line per mode, mirroring the per-metric layout."""
    lines = ["mode,accuracy_mean,accuracy_std,f1_mean,f1_std,ensemble_size_mean,ensemble_size_std"]
    for mode, agg in report["aggregates"].items():
        lines.append(
            f"{mode},{agg['accuracy_mean']:.6f},{agg['accuracy_std']:.6f},"
            f"{agg['f1_mean']:.6f},{agg['f1_std']:.6f},"
            f"{agg['ensemble_size_mean']:.6f},{agg['ensemble_size_std']:.6f}"
        )
    return "\n".join(lines) + "\n"
