"""QUBO minimizers: an exhaustive oracle and a seeded simulated annealer."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SizeError
from .qubo import QuboProblem, energy

__all__ = [
    "AnnealConfig",
    "SolverResult",
    "solve_exhaustive",
    "solve_anneal",
    "ExhaustiveSolver",
    "AnnealSolver",
    "make_solver",
]

MAX_EXHAUSTIVE_VARS = 24
_CHUNK_BITS = 18  # enumerate at most 2^18 assignments per numpy batch


@dataclass(frozen=True)
class AnnealConfig:
    num_reads: int = 32
    sweeps: int = 256
    beta_start: float | None = None  # None -> derived from coefficient magnitudes
    beta_end: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.num_reads < 1:
            raise ValueError("num_reads must be >= 1")
        if self.sweeps < 0:
            raise ValueError("sweeps must be >= 0")
        if self.beta_start is not None and self.beta_start <= 0:
            raise ValueError("beta_start must be positive")
        if (
            self.beta_start is not None
            and self.beta_end is not None
            and self.beta_end <= self.beta_start
        ):
            raise ValueError("beta_end must exceed beta_start")


@dataclass(frozen=True)
class SolverResult:
    assignment: np.ndarray  # (n_vars,) of 0/1
    energy: float
    reads_used: int
    seed: int

    def __post_init__(self):
        a = np.asarray(self.assignment, dtype=np.int8)
        object.__setattr__(self, "assignment", a)
        a.setflags(write=False)


def _symmetric_parts(q: QuboProblem):
    """Linear vector h and symmetric off-diagonal matrix W (W[i,j] = c_ij for i != j)."""
    n = q.n_vars
    h = np.zeros(n)
    W = np.zeros((n, n))
    for (i, j), c in q.coeffs.items():
        if i == j:
            h[i] = c
        else:
            W[i, j] = c
            W[j, i] = c
    return h, W


def solve_exhaustive(q: QuboProblem) -> SolverResult:
    """Global minimum by full enumeration; ties break lexicographically.

    Bit 0 is the most significant position of the enumeration order, so the
    first minimal-energy assignment found is the lexicographically smallest.
    """
    n = q.n_vars
    if n > MAX_EXHAUSTIVE_VARS:
        raise SizeError(f"exhaustive solve supports at most {MAX_EXHAUSTIVE_VARS} variables, got {n}")
    if n == 0:
        return SolverResult(np.zeros(0, dtype=np.int8), q.constant_offset, 1, 0)

    h, W = _symmetric_parts(q)
    total = 1 << n
    shifts = np.arange(n - 1, -1, -1)  # bit 0 most significant
    best_energy = np.inf
    best_assignment = None
    chunk = 1 << min(n, _CHUNK_BITS)
    for start in range(0, total, chunk):
        m = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        A = ((m[:, None] >> shifts[None, :].astype(np.uint64)) & 1).astype(np.float64)
        E = A @ h + 0.5 * np.einsum("ki,kj,ij->k", A, A, W, optimize=True)
        i = int(np.argmin(E))
        if E[i] < best_energy:
            best_energy = float(E[i])
            best_assignment = A[i].astype(np.int8)
    return SolverResult(best_assignment, best_energy + q.constant_offset, total, 0)


def _default_betas(q: QuboProblem) -> tuple[float, float]:
    mags = np.array([abs(c) for c in q.coeffs.values() if c != 0.0])
    if len(mags) == 0:
        return 0.1, 10.0
    beta_start = 1.0 / mags.max()
    beta_end = min(100.0 / mags.min(), 1e8)
    if beta_end <= beta_start:
        beta_end = beta_start * 100.0
    return beta_start, beta_end


def solve_anneal(q: QuboProblem, cfg: AnnealConfig = AnnealConfig()) -> SolverResult:
    """Best-of-`num_reads` single-bit-flip Metropolis annealing.

    Each read draws its own random stream from a seed child indexed by read
    number, so read r's trajectory is unchanged when num_reads grows. Reads
    are advanced in lockstep (vectorized across chains); within a sweep the
    variables are visited in index order with incremental energy updates.
    """
    n = q.n_vars
    if n == 0:
        return SolverResult(np.zeros(0, dtype=np.int8), q.constant_offset, cfg.num_reads, cfg.seed)

    h, W = _symmetric_parts(q)
    beta_start = cfg.beta_start
    beta_end = cfg.beta_end
    if beta_start is None or beta_end is None:
        d_start, d_end = _default_betas(q)
        beta_start = d_start if beta_start is None else beta_start
        beta_end = d_end if beta_end is None else beta_end
    if cfg.sweeps > 1:
        betas = beta_start * (beta_end / beta_start) ** (np.arange(cfg.sweeps) / (cfg.sweeps - 1))
    else:
        betas = np.full(cfg.sweeps, beta_start)

    # per-read random material, independent of num_reads
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.num_reads)
    R = cfg.num_reads
    B = np.empty((R, n), dtype=np.float64)
    U = np.empty((R, cfg.sweeps, n), dtype=np.float64) if cfg.sweeps else None
    for r, child in enumerate(children):
        rng = np.random.default_rng(child)
        B[r] = rng.integers(0, 2, size=n)
        if cfg.sweeps:
            U[r] = rng.random((cfg.sweeps, n))

    for t in range(cfg.sweeps):
        beta = betas[t]
        for i in range(n):
            # energy change of flipping bit i in every chain
            local = h[i] + B @ W[i]
            delta = np.where(B[:, i] == 0.0, local, -local)
            accept = (delta <= 0.0) | (U[:, t, i] < np.exp(-beta * np.maximum(delta, 0.0)))
            B[accept, i] = 1.0 - B[accept, i]

    E = B @ h + 0.5 * np.einsum("ki,kj,ij->k", B, B, W, optimize=True) + q.constant_offset
    best = int(np.argmin(E))  # ties resolve to the lowest read index
    assignment = B[best].astype(np.int8)
    return SolverResult(assignment, energy(q, assignment), R, cfg.seed)


class ExhaustiveSolver:
    """Solving backend wrapper around solve_exhaustive."""

    name = "exhaustive"

    def solve(self, q: QuboProblem) -> SolverResult:
        return solve_exhaustive(q)


class AnnealSolver:
    """Solving backend wrapper around solve_anneal."""

    name = "anneal"

    def __init__(self, cfg: AnnealConfig = AnnealConfig()):
        self.cfg = cfg

    def solve(self, q: QuboProblem) -> SolverResult:
        return solve_anneal(q, self.cfg)


def make_solver(backend: str, anneal_cfg: AnnealConfig | None = None):
    if backend == "exhaustive":
        return ExhaustiveSolver()
    if backend == "anneal":
        return AnnealSolver(anneal_cfg or AnnealConfig())
    raise ValueError(f"unknown solver backend {backend!r}")
