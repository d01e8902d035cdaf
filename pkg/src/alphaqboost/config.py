"""Run-configuration schema: defaults, validation, and object construction."""

from __future__ import annotations

import copy
import json

from .alpha_search import OptConfig
from .boosting import MODES, BoostConfig
from .errors import ConfigError
from .solvers import AnnealConfig
from .stumps import PoolConfig

DEFAULTS = {
    "dataset": {
        "path": None,
        "label_column": None,
        "label_map": {},
    },
    "split": {
        "train_fraction": 0.6,
        "val_fraction": 0.2,
        "test_fraction": 0.2,
        "stratified": True,
    },
    "seed": 0,
    "mode": "alpha_qboost",
    "modes": ["alpha_qboost", "adaboost"],
    "repeats": 5,
    "out_dir": ".",
    "boost": {
        "max_outer_iters": 8,
        "patience": 1,
        "pool_size": 20,
        "max_features": None,
        "solver_backend": "anneal",
        "num_reads": 32,
        "sweeps": 256,
        "lambda_min": 0.0,
        "lambda_max": 0.5,
        "lambda_step": 0.1,
        "encoding_bits": 1,
        "desired_count": None,
        "opt_strategy": "grid_refine",
        "grid_points": 11,
        "refine_rounds": 2,
        "max_evals": 40,
        "adaboost_rounds": 30,
    },
}


def _merge(defaults: dict, supplied: dict, path: str = "") -> dict:
    out = copy.deepcopy(defaults)
    for key, value in supplied.items():
        where = f"{path}.{key}" if path else key
        if key not in defaults:
            raise ConfigError(f"unknown config key: {where!r}")
        if isinstance(defaults[key], dict) and key != "label_map":
            if not isinstance(value, dict):
                raise ConfigError(f"{where!r} must be an object")
            out[key] = _merge(defaults[key], value, where)
        else:
            out[key] = value
    return out


def resolve_config(supplied: dict) -> dict:
    """Apply defaults and reject unknown keys; returns the fully-resolved document."""
    if not isinstance(supplied, dict):
        raise ConfigError("config root must be a JSON object")
    cfg = _merge(DEFAULTS, supplied)
    ds = cfg["dataset"]
    if not ds["path"] or not ds["label_column"] or not ds["label_map"]:
        raise ConfigError("dataset.path, dataset.label_column, and dataset.label_map are required")
    if cfg["mode"] not in MODES:
        raise ConfigError(f"mode must be one of {MODES}")
    for mode in cfg["modes"]:
        if mode not in MODES:
            raise ConfigError(f"modes entries must be one of {MODES}, got {mode!r}")
    if cfg["repeats"] < 1:
        raise ConfigError("repeats must be >= 1")
    return cfg


def load_config(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}")
    return resolve_config(doc)


def build_boost_config(cfg: dict, mode: str, seed: int) -> BoostConfig:
    b = cfg["boost"]
    return BoostConfig(
        mode=mode,
        pool=PoolConfig(pool_size=b["pool_size"], max_features=b["max_features"], seed=seed),
        solver_backend=b["solver_backend"],
        anneal=AnnealConfig(num_reads=b["num_reads"], sweeps=b["sweeps"], seed=seed),
        max_outer_iters=b["max_outer_iters"],
        patience=b["patience"],
        lambda_min=b["lambda_min"],
        lambda_max=b["lambda_max"],
        lambda_step=b["lambda_step"],
        encoding_bits=b["encoding_bits"],
        desired_count=b["desired_count"],
        opt=OptConfig(
            strategy=b["opt_strategy"],
            grid_points=b["grid_points"],
            refine_rounds=b["refine_rounds"],
            max_evals=b["max_evals"],
        ),
        seed=seed,
    )
