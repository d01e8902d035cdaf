"""Binary classification metrics over {-1, +1} labels; positive class is +1."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError

__all__ = ["Confusion", "confusion", "accuracy", "f1"]


@dataclass(frozen=True)
class Confusion:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


def _check(y_true, y_pred):
    t = np.asarray(y_true)
    p = np.asarray(y_pred)
    if t.shape != p.shape or t.ndim != 1 or len(t) == 0:
        raise DimensionError("y_true and y_pred must be equal-length non-empty vectors")
    if not (np.all(np.isin(t, (-1, 1))) and np.all(np.isin(p, (-1, 1)))):
        raise ValueError("entries must be -1 or +1")
    return t, p


def confusion(y_true, y_pred) -> Confusion:
    t, p = _check(y_true, y_pred)
    return Confusion(
        tp=int(np.sum((t == 1) & (p == 1))),
        fp=int(np.sum((t == -1) & (p == 1))),
        tn=int(np.sum((t == -1) & (p == -1))),
        fn=int(np.sum((t == 1) & (p == -1))),
    )


def accuracy(y_true, y_pred) -> float:
    t, p = _check(y_true, y_pred)
    return float(np.mean(t == p))


def f1(y_true, y_pred) -> float:
    """2*tp / (2*tp + fp + fn), with 0 when the denominator vanishes."""
    c = confusion(y_true, y_pred)
    denom = 2 * c.tp + c.fp + c.fn
    return 2.0 * c.tp / denom if denom > 0 else 0.0
