"""Command-line interface: train, benchmark, solve-qubo."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .benchmark import _load_dataset, report_to_csv, run_benchmark, run_single
from .config import load_config
from .errors import (
    AlphaQBoostError,
    ConfigError,
    DegenerateFeatureError,
    DegenerateSelectionError,
    PoolError,
    TrainingError,
)
from .qubo import QuboProblem
from .solvers import AnnealConfig, solve_anneal, solve_exhaustive

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DEGENERATE = 3


def _apply_overrides(cfg: dict, args) -> dict:
    if args.seed is not None:
        cfg["seed"] = args.seed
    if args.out_dir is not None:
        cfg["out_dir"] = args.out_dir
    if getattr(args, "repeats", None) is not None:
        cfg["repeats"] = args.repeats
    return cfg


def _out_dir(cfg: dict) -> Path:
    out = Path(cfg["out_dir"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_train(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    ds = _load_dataset(cfg)
    result = run_single(cfg, ds, cfg["mode"], int(cfg["seed"]))
    out = _out_dir(cfg)
    model = result["classifier"].to_json(
        feature_names=ds.feature_names,
        metadata={
            "mode": result["mode"],
            "seed": result["seed"],
            "test_accuracy": result["accuracy"],
            "test_f1": result["f1"],
            "version": __version__,
        },
    )
    (out / "model.json").write_text(json.dumps(model, indent=2))
    (out / "trace.json").write_text(json.dumps(result["trace"].to_json(), indent=2))
    (out / "resolved_config.json").write_text(json.dumps(cfg, indent=2))
    print(
        f"trained {result['mode']}: test accuracy {result['accuracy']:.4f}, "
        f"f1 {result['f1']:.4f}, {result['ensemble_size']} members -> {out / 'model.json'}"
    )
    return EXIT_OK


def cmd_benchmark(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    report = run_benchmark(cfg)
    out = _out_dir(cfg)
    (out / "report.json").write_text(json.dumps(report, indent=2))
    (out / "report.csv").write_text(report_to_csv(report))
    print(report_to_csv(report), end="")
    print(f"report written to {out / 'report.json'}")
    return EXIT_OK


def cmd_solve_qubo(args) -> int:
    try:
        doc = json.loads(Path(args.qubo).read_text())
    except FileNotFoundError:
        raise ConfigError(f"QUBO file not found: {args.qubo}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"QUBO file is not valid JSON: {exc}")
    problem = QuboProblem.from_json(doc)
    if args.backend == "exhaustive":
        result = solve_exhaustive(problem)
    else:
        result = solve_anneal(problem, AnnealConfig(seed=args.seed or 0))
    print(f"assignment: {''.join(str(int(b)) for b in result.assignment)}")
    print(f"energy: {result.energy}")
    print(f"seed: {result.seed}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="alphaqboost", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="train one model from a config file")
    p_train.add_argument("--config", required=True)
    p_train.add_argument("--seed", type=int)
    p_train.add_argument("--out-dir")
    p_train.set_defaults(func=cmd_train)

    p_bench = sub.add_parser("benchmark", help="repeat split/train/test and report aggregates")
    p_bench.add_argument("--config", required=True)
    p_bench.add_argument("--seed", type=int)
    p_bench.add_argument("--out-dir")
    p_bench.add_argument("--repeats", type=int)
    p_bench.set_defaults(func=cmd_benchmark)

    p_solve = sub.add_parser("solve-qubo", help="solve a QUBO JSON debug file")
    p_solve.add_argument("qubo")
    p_solve.add_argument("--backend", choices=("exhaustive", "anneal"), default="exhaustive")
    p_solve.add_argument("--seed", type=int)
    p_solve.set_defaults(func=cmd_solve_qubo)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TrainingError, DegenerateFeatureError, DegenerateSelectionError, PoolError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except AlphaQBoostError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
