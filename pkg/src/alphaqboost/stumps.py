"""Weighted decision-stump training and candidate-pool generation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .errors import DegenerateFeatureError, SizeError

__all__ = [
    "DecisionStump",
    "PoolConfig",
    "SampleWeights",
    "train_stump",
    "propose_candidates",
    "default_max_features",
]


@dataclass(frozen=True)
class DecisionStump:
    """Single-feature threshold classifier.

    Predicts `polarity` where feature > threshold and `-polarity` otherwise.
    """

    feature_index: int
    threshold: float
    polarity: int  # +1 or -1

    def __post_init__(self):
        if self.polarity not in (-1, 1):
            raise ValueError("polarity must be +1 or -1")

    def predict(self, X: np.ndarray) -> np.ndarray:
        col = np.asarray(X)[:, self.feature_index]
        return np.where(col > self.threshold, self.polarity, -self.polarity).astype(np.int64)

    def to_json(self, feature_names=None) -> dict:
        name = feature_names[self.feature_index] if feature_names else str(self.feature_index)
        return {
            "feature_index": int(self.feature_index),
            "feature_name": name,
            "threshold": float(self.threshold),
            "polarity": int(self.polarity),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DecisionStump":
        return cls(int(obj["feature_index"]), float(obj["threshold"]), int(obj["polarity"]))


def default_max_features(n_features: int) -> int:
    """Features per stump: floor(sqrt(F)) - 1, clamped to >= 1."""
    return max(1, int(math.floor(math.sqrt(n_features))) - 1)


@dataclass(frozen=True)
class PoolConfig:
    pool_size: int
    max_features: int | None = None  # None -> default_max_features(F)
    pool_multiplier: float = 2.0
    seed: int = 0

    def __post_init__(self):
        if self.pool_size < 1:
            raise SizeError("pool_size must be >= 1")
        if self.max_features is not None and self.max_features < 1:
            raise SizeError("max_features must be >= 1")

    def resolved_max_features(self, n_features: int) -> int:
        if self.max_features is None:
            return default_max_features(n_features)
        return min(self.max_features, n_features)


class SampleWeights:
    """Non-negative per-sample weights summing to 1."""

    def __init__(self, d):
        d = np.asarray(d, dtype=np.float64)
        if d.ndim != 1 or len(d) == 0:
            raise ValueError("weights must be a non-empty 1-D vector")
        if np.any(d < 0):
            raise ValueError("weights must be non-negative")
        if abs(d.sum() - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")
        self.d = d
        self.d.setflags(write=False)

    def __len__(self):
        return len(self.d)

    @classmethod
    def uniform(cls, n: int) -> "SampleWeights":
        return cls(np.full(n, 1.0 / n))


def _best_split_for_feature(values, y, d):
    """Best (threshold, polarity, error) for one feature, or None if constant.

    Thresholds are midpoints between consecutive distinct sorted values;
    boundary splits yielding constant classifiers are excluded.
    """
    order = np.argsort(values, kind="stable")
    v = values[order]
    if v[0] == v[-1]:
        return None
    ys = y[order]
    ds = d[order]

    # error of polarity +1 with split after position p (first p rows predicted -1):
    #   sum(d | y=+1, pos < p) + sum(d | y=-1, pos >= p)
    pos_cum = np.cumsum(ds * (ys == 1))
    neg_cum = np.cumsum(ds * (ys == -1))
    total_neg = neg_cum[-1]

    boundaries = np.flatnonzero(v[:-1] != v[1:]) + 1  # split positions p in 1..n-1
    err_plus = pos_cum[boundaries - 1] + (total_neg - neg_cum[boundaries - 1])
    total = pos_cum[-1] + total_neg
    err_minus = total - err_plus

    best = None  # (error, threshold, polarity)
    for errs, pol in ((err_plus, 1), (err_minus, -1)):
        i = int(np.argmin(errs))
        err = float(errs[i])
        thr = 0.5 * (v[boundaries[i] - 1] + v[boundaries[i]])
        # prefer smaller threshold, then polarity +1, on exact ties
        cand = (err, thr, -pol)
        if best is None or cand < best:
            best = cand
    return best[1], -best[2], best[0]


def train_stump(train: Dataset, d: SampleWeights, candidate_features, rng=None) -> DecisionStump:
    """Exhaustively pick the stump minimizing d-weighted 0-1 error.

    Ties break on lowest feature index, then smallest threshold, then
    polarity +1, so pools are deterministic under a fixed seed.
    """
    feats = sorted(int(f) for f in candidate_features)
    if not feats:
        raise ValueError("candidate_features must be non-empty")
    y = train.labels
    best = None  # (error, feature, threshold, polarity_rank)
    for f in feats:
        res = _best_split_for_feature(train.features[:, f], y, d.d)
        if res is None:
            continue
        thr, pol, err = res
        key = (err, f, thr, -pol)
        if best is None or key < best:
            best = key
    if best is None:
        raise DegenerateFeatureError("all candidate features are constant")
    err, f, thr, neg_pol = best
    return DecisionStump(f, thr, -neg_pol)


def weighted_error(stump: DecisionStump, train: Dataset, d: SampleWeights) -> float:
    pred = stump.predict(train.features)
    return float(np.sum(d.d[pred != train.labels]))


def propose_candidates(
    train: Dataset, d: SampleWeights, how_many: int, cfg: PoolConfig, rng=None
) -> list[DecisionStump]:
    """Train `how_many` stumps, each on a fresh random feature subset.

    Duplicates are permitted; the result is sorted ascending by d-weighted
    error (stable sort, so equal-error candidates keep draw order).
    """
    if how_many < 1:
        raise SizeError("how_many must be >= 1")
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    m = cfg.resolved_max_features(train.n_features)
    candidates = []
    degenerate = 0
    for _ in range(how_many):
        subset = rng.choice(train.n_features, size=m, replace=False)
        try:
            stump = train_stump(train, d, subset)
        except DegenerateFeatureError:
            degenerate += 1
            continue
        candidates.append((weighted_error(stump, train, d), stump))
    if not candidates:
        raise DegenerateFeatureError("every drawn feature subset was degenerate")
    candidates.sort(key=lambda pair: pair[0])
    return [stump for _, stump in candidates]
