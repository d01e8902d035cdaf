"""Outer boosting loops: lambda-grid QBoost, QBoost with classifier selection,
the alpha-optimized variant, and the AdaBoost baseline."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .alpha_search import OptConfig, optimize_alpha, select_by_count
from .data import BootstrapPool, Dataset
from .errors import DegenerateSelectionError, PoolError, SchemaError, SizeError, TrainingError
from .qubo import EncodingSpec, build_lambda_qubo, decode_weights, predictions
from .solvers import AnnealConfig, make_solver
from .stumps import DecisionStump, PoolConfig, SampleWeights, propose_candidates

__all__ = [
    "StrongClassifier",
    "BoostConfig",
    "TrainTrace",
    "update_weights_d",
    "train_qboost_lambda",
    "train_qboost_select",
    "train_alpha_qboost",
    "train_adaboost",
]

MODES = ("qboost_lambda", "qboost_select", "alpha_qboost", "adaboost")


@dataclass(frozen=True)
class StrongClassifier:
    """Sign-weighted vote over weak learners; sign(0) counts as +1."""

    members: tuple  # of (DecisionStump, float weight > 0)

    def __post_init__(self):
        members = tuple((s, float(w)) for s, w in self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise TrainingError("a strong classifier needs at least one member")
        if any(w <= 0 for _, w in members):
            raise ValueError("member weights must be positive")

    def __len__(self):
        return len(self.members)

    def predict(self, X) -> np.ndarray:
        X = np.asarray(X)
        if X.ndim != 2:
            raise SchemaError("prediction input must be a 2-D matrix")
        max_feature = max(s.feature_index for s, _ in self.members)
        if X.shape[1] <= max_feature:
            raise SchemaError(f"input has {X.shape[1]} features, classifier needs > {max_feature}")
        votes = np.zeros(X.shape[0])
        for stump, weight in self.members:
            votes += weight * stump.predict(X)
        return np.where(votes >= 0, 1, -1).astype(np.int64)

    def to_json(self, feature_names=None, metadata=None) -> dict:
        return {
            "members": [
                {"stump": s.to_json(feature_names), "weight": w} for s, w in self.members
            ],
            "metadata": metadata or {},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "StrongClassifier":
        members = tuple(
            (DecisionStump.from_json(m["stump"]), float(m["weight"])) for m in obj["members"]
        )
        return cls(members)


@dataclass
class IterationRecord:
    iteration: int
    val_error: float | None
    train_error: float
    ensemble_size: int
    param: float | None  # accepted lambda or alpha (or adaboost vote weight)
    accepted: bool
    seconds: float


@dataclass
class TrainTrace:
    records: list = field(default_factory=list)

    def add(self, **kwargs):
        self.records.append(IterationRecord(**kwargs))

    def to_json(self) -> list:
        return [vars(r) for r in self.records]


@dataclass(frozen=True)
class BoostConfig:
    mode: str
    pool: PoolConfig
    solver_backend: str = "anneal"
    anneal: AnnealConfig = AnnealConfig()
    max_outer_iters: int = 10
    patience: int = 1
    # qboost_lambda
    lambda_min: float = 0.0
    lambda_max: float = 0.5
    lambda_step: float = 0.1
    encoding_bits: int = 1
    # qboost_select
    desired_count: int | None = None
    # alpha_qboost
    opt: OptConfig = OptConfig()
    bootstrap: BootstrapPool | None = None
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.patience < 1:
            raise ValueError("patience must be >= 1")
        if self.max_outer_iters < 1:
            raise ValueError("max_outer_iters must be >= 1")
        if self.mode == "qboost_lambda":
            if self.lambda_min > self.lambda_max or self.lambda_step <= 0:
                raise ValueError("need lambda_min <= lambda_max and lambda_step > 0")
        if self.mode == "qboost_select" and (self.desired_count is None or self.desired_count < 1):
            raise SizeError("qboost_select needs desired_count >= 1")

    def lambda_grid(self) -> np.ndarray:
        n = int(math.floor((self.lambda_max - self.lambda_min) / self.lambda_step + 1e-12)) + 1
        return self.lambda_min + self.lambda_step * np.arange(n)

    def make_solver(self):
        return make_solver(self.solver_backend, self.anneal)


def update_weights_d(d: SampleWeights, y_train, predictions_vec) -> SampleWeights | None:
    """Boosting reweight: d_s <- d_s * (y_s * H(x_s) - 1)^2, then normalize.

    Correctly classified samples get factor 0 and misclassified factor 4.
    Returns None when every sample is classified correctly (zero-sum update),
    which the outer loops treat as convergence.
    """
    y = np.asarray(y_train)
    p = np.asarray(predictions_vec)
    if y.shape != p.shape or y.shape != d.d.shape:
        raise ValueError("d, labels, and predictions must have equal lengths")
    updated = d.d * (y * p - 1.0) ** 2
    total = updated.sum()
    if total == 0.0:
        return None
    return SampleWeights(updated / total)


def _error_rate(y_true, y_pred) -> float:
    return float(np.mean(np.asarray(y_true) != np.asarray(y_pred)))


class _OuterLoop:
    """Shared state of the iterative pool-building loops."""

    def __init__(self, cfg: BoostConfig, train: Dataset, val: Dataset):
        train.check_trainable()
        self.cfg = cfg
        self.train = train
        self.val = val
        self.rng = np.random.default_rng(cfg.seed)
        self.pool: list[DecisionStump] = []
        self.d = SampleWeights.uniform(train.n_samples)
        self.best_error = np.inf
        self.best_members: tuple | None = None
        self.best_weights: np.ndarray | None = None
        self.best_param: float | None = None
        self.trace = TrainTrace()

    def refill_pool(self, train: Dataset, d: SampleWeights):
        need = self.cfg.pool.pool_size - len(self.pool)
        if need > 0:
            self.pool.extend(propose_candidates(train, d, need, self.cfg.pool, self.rng))
        if not self.pool:
            raise PoolError("candidate pool is empty")

    def accept_if_better(self, members, weights, param, err) -> bool:
        if members and err < self.best_error:  # strict improvement, per the grid rule
            self.best_error = err
            self.best_members = tuple(members)
            self.best_weights = weights
            self.best_param = param
            return True
        return False

    def finish(self, metadata_param_name: str):
        if self.best_members is None:
            raise TrainingError("no candidate classifier was ever accepted")
        return StrongClassifier(self.best_members), self.trace

    def end_of_iteration(self, iteration, improved, train: Dataset, t0) -> bool:
        """Update d, prune the pool, record the trace. Returns True to stop."""
        classifier = StrongClassifier(self.best_members) if self.best_members else None
        train_err = (
            _error_rate(train.labels, classifier.predict(train.features)) if classifier else 1.0
        )
        self.trace.add(
            iteration=iteration,
            val_error=self.best_error if np.isfinite(self.best_error) else None,
            train_error=train_err,
            ensemble_size=len(self.best_members) if self.best_members else 0,
            param=self.best_param,
            accepted=improved,
            seconds=time.perf_counter() - t0,
        )
        converged = False
        if classifier is not None:
            # delete zero-weight learners: the pool shrinks to the accepted members
            self.pool = [s for s, _ in self.best_members]
            updated = update_weights_d(self.d, train.labels, classifier.predict(train.features))
            if updated is None:
                converged = True  # perfect fit; the paper's update is undefined here
            else:
                self.d = updated
        return converged


def _members_from_weights(pool, weights) -> list:
    return [(s, float(w)) for s, w in zip(pool, weights) if w > 0]


def train_qboost_lambda(cfg: BoostConfig, train: Dataset, val: Dataset):
    """QBoost with a linear lambda grid searched inside every outer iteration."""
    assert cfg.mode == "qboost_lambda"
    loop = _OuterLoop(cfg, train, val)
    solver = cfg.make_solver()
    grid = cfg.lambda_grid()
    no_improve = 0

    for outer in range(cfg.max_outer_iters):
        t0 = time.perf_counter()
        loop.refill_pool(train, loop.d)
        pm_train = predictions(loop.pool, train)
        improved = False
        for lam in grid:
            enc = EncodingSpec(
                K=cfg.encoding_bits,
                use_aux_reg=cfg.encoding_bits > 1,
                kappa=EncodingSpec.default_kappa(lam) if cfg.encoding_bits > 1 else 0.0,
                lam=float(lam),
            )
            problem = build_lambda_qubo(pm_train, enc)
            result = solver.solve(problem)
            w = decode_weights(problem, result.assignment, len(loop.pool), enc.bit_values())
            members = _members_from_weights(loop.pool, w)
            if not members:
                continue
            temp = StrongClassifier(tuple(members))
            err = _error_rate(val.labels, temp.predict(val.features))
            if loop.accept_if_better(members, w, float(lam), err):
                improved = True
        if loop.end_of_iteration(outer, improved, train, t0):
            break
        no_improve = 0 if improved else no_improve + 1
        if no_improve >= cfg.patience:
            break
    return loop.finish("lambda")


def train_qboost_select(cfg: BoostConfig, train: Dataset, val: Dataset):
    """Outer QBoost loop with alpha bisection toward a fixed ensemble size."""
    assert cfg.mode == "qboost_select"
    loop = _OuterLoop(cfg, train, val)
    solver = cfg.make_solver()
    no_improve = 0

    for outer in range(cfg.max_outer_iters):
        t0 = time.perf_counter()
        loop.refill_pool(train, loop.d)
        target = min(cfg.desired_count, len(loop.pool))
        result = select_by_count(loop.pool, train, target, solver)
        members = _members_from_weights(loop.pool, result.weights)
        improved = False
        if members:
            temp = StrongClassifier(tuple(members))
            err = _error_rate(val.labels, temp.predict(val.features))
            improved = loop.accept_if_better(members, result.weights, result.alpha, err)
        if loop.end_of_iteration(outer, improved, train, t0):
            break
        no_improve = 0 if improved else no_improve + 1
        if no_improve >= cfg.patience:
            break
    return loop.finish("alpha")


def train_alpha_qboost(cfg: BoostConfig, train: Dataset, val: Dataset):
    """Main alpha-weighted variant: derivative-free alpha search per iteration.

    With a bootstrap pool configured, each outer iteration draws one
    pre-sampled (train, val) index pair (indices into `train`) and optimizes
    on those subsets; the sample-weight vector d stays defined over the full
    training set.
    """
    assert cfg.mode == "alpha_qboost"
    loop = _OuterLoop(cfg, train, val)
    solver = cfg.make_solver()
    no_improve = 0

    for outer in range(cfg.max_outer_iters):
        t0 = time.perf_counter()
        if cfg.bootstrap is not None:
            draw = cfg.bootstrap.draws[int(loop.rng.integers(cfg.bootstrap.k))]
            it_train = train.subset(draw[0])
            it_val = train.subset(draw[1])
            d_sub = loop.d.d[draw[0]]
            total = d_sub.sum()
            it_d = SampleWeights(d_sub / total) if total > 0 else SampleWeights.uniform(len(draw[0]))
        else:
            it_train, it_val, it_d = train, val, loop.d

        loop.refill_pool(it_train, it_d)
        improved = False
        try:
            weights, alpha, err = optimize_alpha(loop.pool, it_train, it_val, solver, cfg.opt)
        except DegenerateSelectionError:
            if loop.best_members is None:
                raise
            weights = None
        if weights is not None:
            members = _members_from_weights(loop.pool, weights)
            improved = loop.accept_if_better(members, weights, alpha, err)
        if loop.end_of_iteration(outer, improved, train, t0):
            break
        no_improve = 0 if improved else no_improve + 1
        if no_improve >= cfg.patience:
            break
    return loop.finish("alpha")


def train_adaboost(train: Dataset, n_rounds: int, pool_cfg: PoolConfig | None = None):
    """Classic discrete AdaBoost over the same stump trainer.

    Member weight is 0.5 * ln((1 - eps) / eps). A perfect stump gets the
    capped weight for eps = 1 / (2 * S) and stops the loop; a stump with
    eps >= 0.5 is discarded and stops the loop.
    """
    if n_rounds < 1:
        raise SizeError("n_rounds must be >= 1")
    train.check_trainable()
    from .stumps import train_stump, weighted_error

    all_features = range(train.n_features)
    d = SampleWeights.uniform(train.n_samples)
    members = []
    trace = TrainTrace()
    eps_min = 1.0 / (2.0 * train.n_samples)

    for t in range(n_rounds):
        t0 = time.perf_counter()
        stump = train_stump(train, d, all_features)
        eps = weighted_error(stump, train, d)
        if eps >= 0.5:
            break
        capped = max(eps, eps_min)
        beta = 0.5 * math.log((1.0 - capped) / capped)
        members.append((stump, beta))
        pred = stump.predict(train.features)
        d_new = d.d * np.exp(-beta * train.labels * pred)
        d = SampleWeights(d_new / d_new.sum())
        classifier = StrongClassifier(tuple(members))
        trace.add(
            iteration=t,
            val_error=None,
            train_error=_error_rate(train.labels, classifier.predict(train.features)),
            ensemble_size=len(members),
            param=beta,
            accepted=True,
            seconds=time.perf_counter() - t0,
        )
        if eps == 0.0:
            break
    if not members:
        raise TrainingError("no stump achieved weighted error below 0.5")
    return StrongClassifier(tuple(members)), trace


def train(cfg: BoostConfig, train_ds: Dataset, val_ds: Dataset, adaboost_rounds: int = 30):
    """Dispatch on cfg.mode."""
    if cfg.mode == "qboost_lambda":
        return train_qboost_lambda(cfg, train_ds, val_ds)
    if cfg.mode == "qboost_select":
        return train_qboost_select(cfg, train_ds, val_ds)
    if cfg.mode == "alpha_qboost":
        return train_alpha_qboost(cfg, train_ds, val_ds)
    if cfg.mode == "adaboost":
        return train_adaboost(train_ds, adaboost_rounds, cfg.pool)
    raise ValueError(f"unknown mode {cfg.mode!r}")
