"""QUBO construction for the square-loss boosting objectives.

Two builders are provided: the alpha-weighted form (a convex combination of
the learner-label correlation and the learner-learner correlation over binary
selection variables) and the lambda-regularized square-loss form with optional
fractional binary encoding of the weights plus auxiliary count variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .data import Dataset
from .errors import DimensionError, SchemaError
from .stumps import DecisionStump

__all__ = [
    "PredictionMatrix",
    "EncodingSpec",
    "VarMeta",
    "QuboProblem",
    "predictions",
    "build_alpha_qubo",
    "build_lambda_qubo",
    "energy",
]


@dataclass(frozen=True)
class PredictionMatrix:
    """Stump predictions H (N learners x S samples, entries +/-1) and labels y."""

    H: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        H = np.asarray(self.H, dtype=np.int64)
        y = np.asarray(self.y, dtype=np.int64)
        object.__setattr__(self, "H", H)
        object.__setattr__(self, "y", y)
        if H.ndim != 2 or H.shape[0] < 1 or H.shape[1] < 1:
            raise DimensionError("H must be a non-empty N x S matrix")
        if y.shape != (H.shape[1],):
            raise DimensionError("y length must equal the sample dimension of H")
        if not np.all(np.isin(H, (-1, 1))) or not np.all(np.isin(y, (-1, 1))):
            raise ValueError("H and y entries must be +/-1")

    @property
    def n_learners(self) -> int:
        return self.H.shape[0]

    @property
    def n_samples(self) -> int:
        return self.H.shape[1]

    def label_correlations(self) -> np.ndarray:
        """c_i = (1/S) sum_s H[i,s] * y_s."""
        return (self.H @ self.y) / self.n_samples

    def learner_correlations(self) -> np.ndarray:
        """g_ij = (1/S) sum_s H[i,s] * H[j,s]; diagonal is 1."""
        return (self.H @ self.H.T) / self.n_samples


@dataclass(frozen=True)
class EncodingSpec:
    """Weight encoding and regularization knobs for the lambda objective.

    K = 1 keeps weights binary (w_i is the bit itself); K >= 2 uses the
    fractional encoding w_i = sum_k 2^-k b_ik. With auxiliary count variables
    enabled the regularizer is kappa * w_i * (1 - r_i) + lambda * r_i per
    learner; otherwise lambda * sum_i w_i.
    """

    K: int = 1
    use_aux_reg: bool = False
    kappa: float = 0.0
    lam: float = 0.0

    def __post_init__(self):
        if self.K < 1:
            raise ValueError("K must be >= 1")
        if self.lam < 0 or self.kappa < 0:
            raise ValueError("lambda and kappa must be >= 0")
        if self.K == 1 and self.use_aux_reg:
            raise ValueError("K=1 selection weights need no auxiliary variables")
        if self.use_aux_reg and self.kappa <= self.lam:
            raise ValueError("kappa must exceed lambda for the auxiliary penalty to bind")

    def bit_values(self) -> np.ndarray:
        if self.K == 1:
            return np.array([1.0])
        return 2.0 ** -np.arange(1, self.K + 1)

    @staticmethod
    def default_kappa(lam: float) -> float:
        return 10.0 * max(1.0, lam)


@dataclass(frozen=True)
class VarMeta:
    learner_index: int
    bit_index: int
    is_aux: bool = False


@dataclass
class QuboProblem:
    """Upper-triangular QUBO: energy(b) = offset + sum_{i<=j} coeffs[i,j] b_i b_j."""

    n_vars: int
    coeffs: dict  # (i, j) with i <= j -> float
    var_meta: list = field(default_factory=list)
    constant_offset: float = 0.0

    def __post_init__(self):
        for (i, j) in self.coeffs:
            if not (0 <= i <= j < self.n_vars):
                raise DimensionError(f"coefficient key ({i}, {j}) out of range")

    def dense(self) -> np.ndarray:
        """Upper-triangular dense matrix (diagonal = linear terms)."""
        M = np.zeros((self.n_vars, self.n_vars))
        for (i, j), c in self.coeffs.items():
            M[i, j] = c
        return M

    def to_json(self) -> dict:
        return {
            "n_vars": self.n_vars,
            "offset": self.constant_offset,
            "entries": [[int(i), int(j), float(c)] for (i, j), c in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "QuboProblem":
        coeffs = {(int(i), int(j)): float(c) for i, j, c in obj.get("entries", [])}
        return cls(int(obj["n_vars"]), coeffs, [], float(obj.get("offset", 0.0)))


def predictions(stumps: list[DecisionStump], ds: Dataset) -> PredictionMatrix:
    """Evaluate each stump on every row of the dataset."""
    if not stumps:
        raise ValueError("stumps must be non-empty")
    for s in stumps:
        if not (0 <= s.feature_index < ds.n_features):
            raise SchemaError(f"stump references feature {s.feature_index}, dataset has {ds.n_features}")
    H = np.stack([s.predict(ds.features) for s in stumps])
    return PredictionMatrix(H, ds.labels)


def build_alpha_qubo(pm: PredictionMatrix, alpha: float) -> QuboProblem:
    """QUBO over one selection bit per learner.

    energy(w) = alpha * Cor1(w) + (1 - alpha) * Cor2(w) with
    Cor1 = -(2/N) sum_i w_i c_i and Cor2 = (1/N^2) sum_ij w_i w_j g_ij.
    """
    if not (0.0 <= alpha <= 1.0):
        raise ValueError("alpha must lie in [0, 1]")
    N = pm.n_learners
    c = pm.label_correlations()
    g = pm.learner_correlations()
    coeffs = {}
    for i in range(N):
        # diagonal: linear Cor1 term plus Cor2's i=j contribution (g_ii = 1)
        coeffs[(i, i)] = alpha * (-2.0 / N) * c[i] + (1.0 - alpha) / (N * N)
        for j in range(i + 1, N):
            v = (1.0 - alpha) * 2.0 * g[i, j] / (N * N)
            if v != 0.0:
                coeffs[(i, j)] = v
    meta = [VarMeta(i, 1, False) for i in range(N)]
    return QuboProblem(N, coeffs, meta, 0.0)


def build_lambda_qubo(pm: PredictionMatrix, enc: EncodingSpec) -> QuboProblem:
    """QUBO for the regularized square loss over encoded weights.

    energy equals (1/S) sum_s ((1/N) sum_i w_i H[i,s] - y_s)^2 + R(w); the
    data-independent +1 from the squared labels is kept in constant_offset.
    """
    N = pm.n_learners
    K = enc.K
    a = enc.bit_values()
    c = pm.label_correlations()
    g = pm.learner_correlations()

    n_bits = N * K
    n_aux = N if enc.use_aux_reg else 0
    n_vars = n_bits + n_aux
    coeffs = {}

    def bit(i, k):  # variable index of bit k (0-based) of learner i
        return i * K + k

    def add(i, j, v):
        if i > j:
            i, j = j, i
        if v != 0.0:
            coeffs[(i, j)] = coeffs.get((i, j), 0.0) + v

    # quadratic square-loss part: (1/N^2) sum_ij w_i w_j g_ij over encoded bits
    for i in range(N):
        for j in range(N):
            gij = g[i, j] / (N * N)
            for k in range(K):
                for l in range(K):
                    # add() folds the symmetric ordered terms into one entry
                    add(bit(i, k), bit(j, l), a[k] * a[l] * gij)

    # linear square-loss part: -(2/N) sum_i w_i c_i
    for i in range(N):
        for k in range(K):
            add(bit(i, k), bit(i, k), -(2.0 / N) * c[i] * a[k])

    # regularization
    if enc.use_aux_reg:
        for i in range(N):
            r = n_bits + i
            add(r, r, enc.lam)
            for k in range(K):
                add(bit(i, k), bit(i, k), enc.kappa * a[k])
                add(bit(i, k), r, -enc.kappa * a[k])
    else:
        for i in range(N):
            for k in range(K):
                add(bit(i, k), bit(i, k), enc.lam * a[k])

    meta = [VarMeta(i, k + 1, False) for i in range(N) for k in range(K)]
    meta += [VarMeta(i, 0, True) for i in range(N)] if enc.use_aux_reg else []
    return QuboProblem(n_vars, coeffs, meta, 1.0)


def energy(q: QuboProblem, assignment) -> float:
    """Evaluate offset + sum_{i<=j} coeffs[i,j] b_i b_j."""
    b = np.asarray(assignment)
    if b.shape != (q.n_vars,):
        raise DimensionError(f"assignment length {b.shape} does not match {q.n_vars} variables")
    total = q.constant_offset
    for (i, j), c in q.coeffs.items():
        if b[i] and b[j]:
            total += c
    return float(total)


def decode_weights(q: QuboProblem, assignment, n_learners: int, bit_values: np.ndarray) -> np.ndarray:
    """Recover encoded learner weights from a solved bit assignment."""
    w = np.zeros(n_learners)
    for idx, meta in enumerate(q.var_meta):
        if meta.is_aux:
            continue
        k = meta.bit_index - 1
        w[meta.learner_index] += bit_values[k] * int(assignment[idx])
    return w
