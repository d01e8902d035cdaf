"""Dataset container, CSV ingestion, stratified splitting, and bootstrap draws."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import LabelError, ParseError, SchemaError, SizeError, SplitError


@dataclass(frozen=True)
class Dataset:
    """Feature matrix with labels in {-1, +1}.

    Immutable after construction; safe to share across threads.
    """

    features: np.ndarray  # (S, F) float64
    labels: np.ndarray  # (S,) int, entries in {-1, +1}
    feature_names: tuple[str, ...]
    positive_label_name: str = "+1"

    def __post_init__(self):
        feats = np.asarray(self.features, dtype=np.float64)
        labs = np.asarray(self.labels, dtype=np.int64)
        object.__setattr__(self, "features", feats)
        object.__setattr__(self, "labels", labs)
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        if feats.ndim != 2:
            raise SchemaError("features must be a 2-D matrix")
        if labs.shape != (feats.shape[0],):
            raise SchemaError("labels length must match feature rows")
        if len(self.feature_names) != feats.shape[1]:
            raise SchemaError("feature_names length must match feature columns")
        if not np.all(np.isin(labs, (-1, 1))):
            raise LabelError("labels must be exactly -1 or +1")
        if not np.all(np.isfinite(feats)):
            raise ParseError("features contain non-finite values")
        feats.setflags(write=False)
        labs.setflags(write=False)

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def subset(self, indices) -> "Dataset":
        idx = np.asarray(indices, dtype=np.int64)
        return Dataset(
            self.features[idx],
            self.labels[idx],
            self.feature_names,
            self.positive_label_name,
        )

    def check_trainable(self) -> None:
        """Raise unless the set has >= 2 rows and both classes present."""
        if self.n_samples < 2:
            raise SizeError("training data needs at least 2 samples")
        if len(np.unique(self.labels)) < 2:
            raise LabelError("training data must contain both classes")


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float
    val_fraction: float
    test_fraction: float
    stratified: bool = True
    seed: int = 0

    def __post_init__(self):
        parts = (self.train_fraction, self.val_fraction, self.test_fraction)
        if any(not (0.0 < p < 1.0) for p in parts):
            raise SplitError("each fraction must lie in (0, 1)")
        if abs(sum(parts) - 1.0) > 1e-9:
            raise SplitError("fractions must sum to 1")


@dataclass(frozen=True)
class BootstrapPool:
    """Pre-drawn disjoint (train, val) index-set pairs."""

    draws: tuple[tuple[np.ndarray, np.ndarray], ...]
    seed: int

    @property
    def k(self) -> int:
        return len(self.draws)


def load_csv(path, label_column: str, label_map: dict) -> Dataset:
    """Load a header-first CSV, mapping the label column onto {-1, +1}.

    Any feature cell that does not parse to a finite float raises ParseError
    naming the offending row and column. Row order is preserved.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected a header row")
        if label_column not in header:
            raise SchemaError(f"label column {label_column!r} not found in header")
        label_idx = header.index(label_column)
        feature_names = [h for i, h in enumerate(header) if i != label_idx]

        rows = []
        labels = []
        for row_no, row in enumerate(reader, start=2):  # line numbers, 1-based
            if len(row) != len(header):
                raise SchemaError(f"row {row_no}: expected {len(header)} cells, got {len(row)}")
            raw_label = row[label_idx]
            if raw_label not in label_map:
                raise LabelError(f"row {row_no}: label value {raw_label!r} not in label map")
            mapped = int(label_map[raw_label])
            if mapped not in (-1, 1):
                raise LabelError(f"label map must send {raw_label!r} to -1 or +1, got {mapped}")
            feats = []
            for col_pos, cell in enumerate(row):
                if col_pos == label_idx:
                    continue
                name = header[col_pos]
                try:
                    value = float(cell)
                except ValueError:
                    raise ParseError(f"row {row_no}, column {name!r}: cannot parse {cell!r}")
                if not math.isfinite(value):
                    raise ParseError(f"row {row_no}, column {name!r}: non-finite value {cell!r}")
                feats.append(value)
            rows.append(feats)
            labels.append(mapped)

    if not rows:
        raise SchemaError(f"{path}: no data rows")
    positive_names = [k for k, v in label_map.items() if int(v) == 1]
    positive_name = positive_names[0] if positive_names else "+1"
    return Dataset(
        np.array(rows, dtype=np.float64),
        np.array(labels, dtype=np.int64),
        tuple(feature_names),
        positive_label_name=positive_name,
    )


def _cut_points(n: int, spec: SplitSpec) -> tuple[int, int]:
    b1 = int(round(n * spec.train_fraction))
    b2 = int(round(n * (spec.train_fraction + spec.val_fraction)))
    return b1, b2


def split_indices(ds: Dataset, spec: SplitSpec):
    """Partition row indices into (train, val, test) index arrays."""
    rng = np.random.default_rng(spec.seed)
    n = ds.n_samples
    parts = ([], [], [])
    if spec.stratified:
        for cls in np.unique(ds.labels):
            cls_idx = np.flatnonzero(ds.labels == cls)
            rng.shuffle(cls_idx)
            b1, b2 = _cut_points(len(cls_idx), spec)
            parts[0].extend(cls_idx[:b1])
            parts[1].extend(cls_idx[b1:b2])
            parts[2].extend(cls_idx[b2:])
    else:
        order = rng.permutation(n)
        b1, b2 = _cut_points(n, spec)
        parts[0].extend(order[:b1])
        parts[1].extend(order[b1:b2])
        parts[2].extend(order[b2:])
    out = tuple(np.sort(np.array(p, dtype=np.int64)) for p in parts)
    if any(len(p) == 0 for p in out):
        raise SplitError("split produced an empty part; adjust fractions or data size")
    return out


def split(ds: Dataset, spec: SplitSpec):
    """Stratified (or plain shuffled) train/val/test split, deterministic under seed."""
    tr, va, te = split_indices(ds, spec)
    return ds.subset(tr), ds.subset(va), ds.subset(te)


def draw_bootstrap_pool(ds: Dataset, k: int, train_size: int, val_size: int, seed: int) -> BootstrapPool:
    """Pre-draw k disjoint (train, val) index-set pairs without replacement."""
    if k < 1:
        raise SizeError("k must be >= 1")
    if train_size < 1 or val_size < 1:
        raise SizeError("train_size and val_size must be >= 1")
    if train_size + val_size > ds.n_samples:
        raise SizeError(
            f"train_size + val_size = {train_size + val_size} exceeds {ds.n_samples} samples"
        )
    rng = np.random.default_rng(seed)
    draws = []
    for _ in range(k):
        order = rng.permutation(ds.n_samples)
        draws.append((np.sort(order[:train_size]), np.sort(order[train_size:train_size + val_size])))
    return BootstrapPool(tuple(draws), seed)
