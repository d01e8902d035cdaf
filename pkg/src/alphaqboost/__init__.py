"""QUBO-trained boosting ensembles with alpha-weighted classifier selection."""

__version__ = "0.1.0"

from .alpha_search import OptConfig, optimize_alpha, select_by_count
from .boosting import (
    BoostConfig,
    StrongClassifier,
    TrainTrace,
    train,
    train_adaboost,
    train_alpha_qboost,
    train_qboost_lambda,
    train_qboost_select,
    update_weights_d,
)
from .data import BootstrapPool, Dataset, SplitSpec, draw_bootstrap_pool, load_csv, split
from .metrics import Confusion, accuracy, confusion, f1
from .qubo import (
    EncodingSpec,
    PredictionMatrix,
    QuboProblem,
    build_alpha_qubo,
    build_lambda_qubo,
    energy,
    predictions,
)
from .solvers import AnnealConfig, SolverResult, solve_anneal, solve_exhaustive
from .stumps import DecisionStump, PoolConfig, SampleWeights, propose_candidates, train_stump
