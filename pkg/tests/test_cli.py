import json

import numpy as np
import pytest

from alphaqboost.cli import main
from alphaqboost.config import resolve_config
from alphaqboost.errors import ConfigError


@pytest.fixture
def toy_csv(tmp_path):
    rng = np.random.default_rng(0)
    lines = ["x0,x1,x2,label"]
    for _ in range(60):
        x = rng.normal(size=3)
        label = "pos" if x[0] + 0.2 * rng.normal() > 0 else "neg"
        lines.append(f"{x[0]:.6f},{x[1]:.6f},{x[2]:.6f},{label}")
    p = tmp_path / "toy.csv"
    p.write_text("\n".join(lines) + "\n")
    return p


def write_config(tmp_path, csv_path, **overrides):
    cfg = {
        "dataset": {
            "path": str(csv_path),
            "label_column": "label",
            "label_map": {"pos": 1, "neg": -1},
        },
        "split": {"train_fraction": 0.6, "val_fraction": 0.2, "test_fraction": 0.2},
        "seed": 0,
        "out_dir": str(tmp_path / "out"),
        "boost": {
            "pool_size": 6,
            "max_features": 2,
            "solver_backend": "exhaustive",
            "max_outer_iters": 2,
            "adaboost_rounds": 5,
        },
    }
    cfg.update(overrides)
    p = tmp_path / "config.json"
    p.write_text(json.dumps(cfg))
    return p


class TestTrain:
    def test_train_writes_model_and_trace(self, tmp_path, toy_csv):
        cfg = write_config(tmp_path, toy_csv, mode="alpha_qboost")
        assert main(["train", "--config", str(cfg)]) == 0
        out = tmp_path / "out"
        model = json.loads((out / "model.json").read_text())
        assert model["members"]
        assert model["metadata"]["mode"] == "alpha_qboost"
        assert json.loads((out / "trace.json").read_text())
        resolved = json.loads((out / "resolved_config.json").read_text())
        assert resolved["boost"]["pool_size"] == 6

    def test_unknown_config_key_exits_2(self, tmp_path, toy_csv, capsys):
        cfg = write_config(tmp_path, toy_csv)
        doc = json.loads(cfg.read_text())
        doc["bogus_key"] = 1
        cfg.write_text(json.dumps(doc))
        assert main(["train", "--config", str(cfg)]) == 2
        assert "bogus_key" in capsys.readouterr().err

    def test_missing_dataset_exits_2(self, tmp_path, toy_csv):
        cfg = write_config(tmp_path, tmp_path / "nope.csv")
        assert main(["train", "--config", str(cfg)]) == 2

    def test_missing_config_exits_2(self, tmp_path):
        assert main(["train", "--config", str(tmp_path / "nope.json")]) == 2


class TestBenchmark:
    def test_report_shape(self, tmp_path, toy_csv):
        cfg = write_config(
            tmp_path, toy_csv, modes=["alpha_qboost", "adaboost"], repeats=2
        )
        assert main(["benchmark", "--config", str(cfg)]) == 0
        report = json.loads((tmp_path / "out" / "report.json").read_text())
        assert len(report["rows"]) == 4
        assert set(report["aggregates"]) == {"alpha_qboost", "adaboost"}
        csv_text = (tmp_path / "out" / "report.csv").read_text()
        assert csv_text.startswith("mode,accuracy_mean")

    def test_single_repeat_std_is_zero(self, tmp_path, toy_csv):
        cfg = write_config(tmp_path, toy_csv, modes=["adaboost"], repeats=1)
        assert main(["benchmark", "--config", str(cfg)]) == 0
        report = json.loads((tmp_path / "out" / "report.json").read_text())
        agg = report["aggregates"]["adaboost"]
        assert agg["accuracy_std"] == 0.0
        assert agg["accuracy_mean"] == report["rows"][0]["accuracy"]

    def test_aggregates_match_rows(self, tmp_path, toy_csv):
        cfg = write_config(tmp_path, toy_csv, modes=["adaboost"], repeats=3)
        main(["benchmark", "--config", str(cfg)])
        report = json.loads((tmp_path / "out" / "report.json").read_text())
        accs = [r["accuracy"] for r in report["rows"]]
        assert report["aggregates"]["adaboost"]["accuracy_mean"] == pytest.approx(
            sum(accs) / len(accs), abs=1e-9
        )

    def test_deterministic_reports_modulo_timing(self, tmp_path, toy_csv):
        cfg = write_config(tmp_path, toy_csv, modes=["alpha_qboost"], repeats=2)
        main(["benchmark", "--config", str(cfg)])
        first = json.loads((tmp_path / "out" / "report.json").read_text())
        main(["benchmark", "--config", str(cfg)])
        second = json.loads((tmp_path / "out" / "report.json").read_text())
        assert strip_timing(first) == strip_timing(second)


def strip_timing(report):
    out = json.loads(json.dumps(report))
    for row in out["rows"]:
        row.pop("train_seconds")
    for agg in out["aggregates"].values():
        agg.pop("train_seconds_mean")
        agg.pop("train_seconds_std")
    return out


class TestSolveQubo:
    def test_two_var_debug_instance(self, tmp_path, capsys):
        # the two-learner instance: minimum at (1, 0) with energy -0.375
        doc = {
            "n_vars": 2,
            "offset": 0.0,
            "entries": [[0, 0, -0.375], [1, 1, 0.625], [0, 1, -0.25]],
        }
        p = tmp_path / "q.json"
        p.write_text(json.dumps(doc))
        assert main(["solve-qubo", str(p)]) == 0
        out = capsys.readouterr().out
        assert "assignment: 10" in out
        assert "-0.375" in out

    def test_empty_problem(self, tmp_path, capsys):
        p = tmp_path / "q.json"
        p.write_text(json.dumps({"n_vars": 0, "offset": 1.25, "entries": []}))
        assert main(["solve-qubo", str(p)]) == 0
        out = capsys.readouterr().out
        assert "assignment: \n" in out
        assert "1.25" in out

    def test_oversize_exhaustive_exits_2(self, tmp_path):
        p = tmp_path / "q.json"
        p.write_text(json.dumps({"n_vars": 25, "offset": 0.0, "entries": []}))
        assert main(["solve-qubo", str(p), "--backend", "exhaustive"]) == 2

    def test_anneal_backend(self, tmp_path, capsys):
        doc = {"n_vars": 3, "offset": 0.0, "entries": [[0, 0, -1.0], [1, 1, 0.5], [2, 2, -0.2]]}
        p = tmp_path / "q.json"
        p.write_text(json.dumps(doc))
        assert main(["solve-qubo", str(p), "--backend", "anneal", "--seed", "3"]) == 0
        assert "assignment: 101" in capsys.readouterr().out


class TestResolveConfig:
    def test_requires_dataset_fields(self):
        with pytest.raises(ConfigError):
            resolve_config({"dataset": {"path": "x.csv"}})

    def test_unknown_nested_key(self):
        with pytest.raises(ConfigError, match="boost.mystery"):
            resolve_config(
                {
                    "dataset": {"path": "x", "label_column": "y", "label_map": {"a": 1}},
                    "boost": {"mystery": 1},
                }
            )
