"""Finding alpha: bisection toward a target ensemble size, and derivative-free
minimization of validation error over alpha in [0, 1]."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .data import Dataset
from .errors import DegenerateSelectionError, SizeError
from .qubo import PredictionMatrix, build_alpha_qubo, predictions
from .stumps import DecisionStump

__all__ = ["AlphaSearchResult", "OptConfig", "select_by_count", "optimize_alpha"]


@dataclass(frozen=True)
class AlphaSearchResult:
    weights: np.ndarray  # 0/1 per stump
    alpha: float
    count: int
    iterations: int
    exact: bool  # True when count == desired_count

    def __iter__(self):  # allow (weights, alpha) unpacking
        return iter((self.weights, self.alpha))


@dataclass(frozen=True)
class OptConfig:
    strategy: str = "grid_refine"  # or "nelder_mead_1d"
    grid_points: int = 11
    refine_rounds: int = 2
    max_evals: int = 40

    def __post_init__(self):
        if self.strategy not in ("grid_refine", "nelder_mead_1d"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.grid_points < 3:
            raise ValueError("grid_points must be >= 3")
        if self.max_evals < self.grid_points:
            raise ValueError("max_evals must be >= grid_points")


def _solve_at_alpha(pm: PredictionMatrix, alpha: float, solver) -> np.ndarray:
    result = solver.solve(build_alpha_qubo(pm, alpha))
    return np.asarray(result.assignment, dtype=np.int8)


def select_by_count(
    stumps: list[DecisionStump],
    train: Dataset,
    desired_count: int,
    solver,
    max_iters: int = 30,
) -> AlphaSearchResult:
    """Bisection on alpha until the QUBO solution selects desired_count stumps.

    Larger alpha favors the label-correlation term and selects more learners,
    so the bracket shrinks toward alpha when the count overshoots. If the
    target count is never hit within max_iters, the probed alpha with the
    nearest count is returned (ties prefer the smaller count).
    """
    if not (1 <= desired_count <= len(stumps)):
        raise SizeError(f"desired_count must be in [1, {len(stumps)}], got {desired_count}")
    if max_iters < 1:
        raise SizeError("max_iters must be >= 1")

    pm = predictions(stumps, train)
    a, b = 0.0, 1.0
    alpha = 0.5
    probed = []  # (|count - desired|, count, order, alpha, weights)
    for it in range(max_iters + 1):  # initial solve plus max_iters bisection steps
        weights = _solve_at_alpha(pm, alpha, solver)
        count = int(weights.sum())
        if count == desired_count:
            return AlphaSearchResult(weights, alpha, count, it, True)
        probed.append((abs(count - desired_count), count, it, alpha, weights))
        if count > desired_count:
            b = alpha
        else:
            a = alpha
        alpha = (a + b) / 2.0
    _, count, it, alpha, weights = min(probed)
    return AlphaSearchResult(weights, alpha, count, max_iters, False)


def optimize_alpha(
    stumps: list[DecisionStump],
    train: Dataset,
    val: Dataset,
    solver,
    cfg: OptConfig = OptConfig(),
    metric=None,
):
    """Minimize validation error of the selected ensemble over alpha in [0, 1].

    The objective is piecewise constant in alpha (finitely many QUBO argmins),
    so the default strategy evaluates a uniform grid and refines the bracket
    around the best point. Alphas selecting zero stumps score infinity; if
    every probed alpha does, DegenerateSelectionError is raised. Ties resolve
    to the smallest alpha.

    Returns (weights, alpha, val_error).
    """
    if val.n_samples < 1:
        raise SizeError("validation set must be non-empty")
    if metric is None:
        metric = _one_minus_accuracy

    pm_train = predictions(stumps, train)
    pm_val = predictions(stumps, val)
    cache: dict[float, tuple[float, np.ndarray]] = {}

    def evaluate(alpha) -> float:
        if np.ndim(alpha) > 0:  # scipy passes a length-1 array
            alpha = alpha.item()
        alpha = min(1.0, max(0.0, float(alpha)))
        if alpha in cache:
            return cache[alpha][0]
        if len(cache) >= cfg.max_evals:
            return np.inf  # budget exhausted; never better than a cached point
        weights = _solve_at_alpha(pm_train, alpha, solver)
        if weights.sum() == 0:
            err = np.inf
        else:
            votes = weights @ pm_val.H
            pred = np.where(votes >= 0, 1, -1)
            err = float(metric(pm_val.y, pred))
        cache[alpha] = (err, weights)
        return err

    if cfg.strategy == "grid_refine":
        lo, hi = 0.0, 1.0
        for _ in range(cfg.refine_rounds + 1):
            grid = np.linspace(lo, hi, cfg.grid_points)
            for alpha in grid:
                evaluate(alpha)
            best_alpha = _best_cached_alpha(cache)
            if best_alpha is None:
                raise DegenerateSelectionError("every probed alpha selected zero classifiers")
            step = (hi - lo) / (cfg.grid_points - 1)
            lo = max(0.0, best_alpha - step)
            hi = min(1.0, best_alpha + step)
    else:  # nelder_mead_1d
        from scipy.optimize import minimize

        for start in np.linspace(0.1, 0.9, 3):
            minimize(
                evaluate,
                x0=[start],
                method="Nelder-Mead",
                options={"maxfev": cfg.max_evals // 3, "xatol": 1e-3, "fatol": 1e-12},
            )

    best_alpha = _best_cached_alpha(cache)
    if best_alpha is None:
        raise DegenerateSelectionError("every probed alpha selected zero classifiers")
    err, weights = cache[best_alpha]
    return weights, best_alpha, err


def _best_cached_alpha(cache):
    finite = [(err, alpha) for alpha, (err, _) in cache.items() if np.isfinite(err)]
    if not finite:
        return None
    return min(finite)[1]


def _one_minus_accuracy(y_true, y_pred):
    return float(np.mean(np.asarray(y_true) != np.asarray(y_pred)))
