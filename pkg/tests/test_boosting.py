import math

import numpy as np
import pytest

from alphaqboost import (
    BoostConfig,
    DecisionStump,
    PoolConfig,
    SampleWeights,
    StrongClassifier,
    train_adaboost,
    train_alpha_qboost,
    train_qboost_lambda,
    train_qboost_select,
    update_weights_d,
)
from alphaqboost.data import draw_bootstrap_pool
from alphaqboost.errors import SizeError, TrainingError
from alphaqboost.stumps import train_stump, weighted_error
from conftest import make_dataset


def separable(n=24, seed=0):
    rng = np.random.default_rng(seed)
    x0 = np.concatenate([rng.uniform(0, 1, n // 2), rng.uniform(2, 3, n // 2)])
    x1 = rng.normal(size=n)
    y = np.array([-1] * (n // 2) + [1] * (n // 2))
    return make_dataset(np.column_stack([x0, x1]), y)


class TestUpdateWeightsD:
    def test_factors_zero_and_four(self):
        d = SampleWeights.uniform(3)
        y = np.array([1, 1, -1])
        pred = np.array([1, 1, 1])  # y*pred = [1, 1, -1]
        out = update_weights_d(d, y, pred)
        assert np.allclose(out.d, [0, 0, 1])

    def test_all_correct_returns_convergence_signal(self):
        d = SampleWeights.uniform(4)
        y = np.array([1, -1, 1, -1])
        assert update_weights_d(d, y, y) is None

    def test_mixed_weights_arithmetic(self):
        d = SampleWeights([0.5, 0.25, 0.25])
        y = np.array([1, 1, 1])
        pred = np.array([-1, 1, -1])  # y*pred = [-1, +1, -1]
        out = update_weights_d(d, y, pred)
        assert np.allclose(out.d, [2 / 3, 0, 1 / 3])

    def test_all_sign_combinations(self):
        # margin +1 -> factor 0, margin -1 -> factor 4, pre-normalization
        for y_val in (-1, 1):
            for p_val in (-1, 1):
                factor = (y_val * p_val - 1) ** 2
                assert factor == (0 if y_val == p_val else 4)

    def test_remains_probability_vector(self):
        rng = np.random.default_rng(0)
        d = SampleWeights.uniform(10)
        y = rng.choice([-1, 1], 10)
        for _ in range(5):
            pred = rng.choice([-1, 1], 10)
            out = update_weights_d(d, y, pred)
            if out is None:
                break
            assert out.d.sum() == pytest.approx(1.0)
            assert np.all(out.d >= 0)
            d = out


class TestStrongClassifier:
    def test_single_member_equals_stump(self, random_dataset):
        stump = DecisionStump(0, 0.0, 1)
        clf = StrongClassifier(((stump, 1.0),))
        assert np.array_equal(clf.predict(random_dataset.features), stump.predict(random_dataset.features))

    def test_tie_breaks_positive(self):
        X = np.array([[1.0, 1.0]])
        clf = StrongClassifier(
            ((DecisionStump(0, 0.5, 1), 1.0), (DecisionStump(1, 0.5, -1), 1.0))
        )
        assert clf.predict(X)[0] == 1

    def test_majority_vote(self):
        X = np.array([[0.0]])
        stumps = [DecisionStump(0, 0.5, -1), DecisionStump(0, 0.5, -1), DecisionStump(0, -0.5, -1)]
        clf = StrongClassifier(tuple((s, 1.0) for s in stumps))
        # two members predict +1 (x <= 0.5 with polarity -1), one predicts -1
        assert clf.predict(X)[0] == 1

    def test_rescaling_weights_preserves_predictions(self, random_dataset):
        members = tuple(
            (DecisionStump(i % random_dataset.n_features, 0.0, 1), w)
            for i, w in enumerate((0.2, 1.3, 0.7))
        )
        a = StrongClassifier(members)
        b = StrongClassifier(tuple((s, 10.0 * w) for s, w in members))
        assert np.array_equal(a.predict(random_dataset.features), b.predict(random_dataset.features))

    def test_empty_rejected(self):
        with pytest.raises(TrainingError):
            StrongClassifier(())

    def test_json_roundtrip(self):
        clf = StrongClassifier(((DecisionStump(2, 1.5, -1), 0.8),))
        again = StrongClassifier.from_json(clf.to_json(feature_names=("a", "b", "c")))
        assert again.members == clf.members


class TestQBoostLambda:
    def test_separable_converges_to_zero_val_error(self):
        ds = separable()
        cfg = BoostConfig(
            mode="qboost_lambda",
            pool=PoolConfig(pool_size=6, max_features=2, seed=0),
            solver_backend="exhaustive",
            lambda_min=0.0,
            lambda_max=0.0,
            lambda_step=0.1,
            max_outer_iters=4,
        )
        clf, trace = train_qboost_lambda(cfg, ds, ds)
        assert len(clf) >= 1
        assert np.array_equal(clf.predict(ds.features), ds.labels)
        assert trace.records[-1].val_error == 0.0

    def test_huge_lambda_never_accepts(self):
        # linear terms lambda - 2*corr all positive -> all-zero solution -> no model
        ds = separable()
        cfg = BoostConfig(
            mode="qboost_lambda",
            pool=PoolConfig(pool_size=4, max_features=2, seed=0),
            solver_backend="exhaustive",
            lambda_min=10.0,
            lambda_max=10.0,
            lambda_step=1.0,
            max_outer_iters=2,
        )
        with pytest.raises(TrainingError):
            train_qboost_lambda(cfg, ds, ds)

    def test_accepted_val_errors_strictly_decrease(self, random_dataset):
        cfg = BoostConfig(
            mode="qboost_lambda",
            pool=PoolConfig(pool_size=8, max_features=2, seed=1),
            solver_backend="exhaustive",
            lambda_min=0.0,
            lambda_max=0.2,
            lambda_step=0.1,
            max_outer_iters=5,
            patience=2,
        )
        tr = random_dataset.subset(range(0, 60))
        va = random_dataset.subset(range(60, 80))
        clf, trace = train_qboost_lambda(cfg, tr, va)
        accepted = [r.val_error for r in trace.records if r.accepted]
        assert all(b < a for a, b in zip(accepted, accepted[1:]))

    def test_patience_stops_loop(self):
        ds = separable()
        cfg = BoostConfig(
            mode="qboost_lambda",
            pool=PoolConfig(pool_size=4, max_features=2, seed=0),
            solver_backend="exhaustive",
            lambda_min=0.0,
            lambda_max=0.0,
            lambda_step=0.1,
            max_outer_iters=10,
            patience=1,
        )
        clf, trace = train_qboost_lambda(cfg, ds, ds)
        # separable: iteration 0 reaches 0 error, iteration 1 cannot improve
        assert len(trace.records) <= 2


class TestQBoostSelect:
    def test_single_dominant_feature_gives_one_stump(self):
        ds = separable()
        cfg = BoostConfig(
            mode="qboost_select",
            pool=PoolConfig(pool_size=5, max_features=2, seed=0),
            solver_backend="exhaustive",
            desired_count=1,
            max_outer_iters=2,
        )
        clf, _ = train_qboost_select(cfg, ds, ds)
        assert len(clf) == 1

    def test_desired_count_zero_rejected(self):
        with pytest.raises(SizeError):
            BoostConfig(
                mode="qboost_select",
                pool=PoolConfig(pool_size=5),
                desired_count=0,
            )

    def test_respects_target_size(self, random_dataset):
        tr = random_dataset.subset(range(0, 60))
        va = random_dataset.subset(range(60, 80))
        cfg = BoostConfig(
            mode="qboost_select",
            pool=PoolConfig(pool_size=8, max_features=2, seed=3),
            solver_backend="exhaustive",
            desired_count=3,
            max_outer_iters=3,
        )
        clf, _ = train_qboost_select(cfg, tr, va)
        assert 1 <= len(clf) <= 8


class TestAlphaQBoost:
    def test_perfect_pool_yields_zero_val_error(self):
        ds = separable()
        cfg = BoostConfig(
            mode="alpha_qboost",
            pool=PoolConfig(pool_size=5, max_features=2, seed=0),
            solver_backend="exhaustive",
            max_outer_iters=1,
        )
        clf, trace = train_alpha_qboost(cfg, ds, ds)
        assert trace.records[0].val_error == 0.0

    def test_deterministic_without_bootstrap(self, random_dataset):
        tr = random_dataset.subset(range(0, 60))
        va = random_dataset.subset(range(60, 80))
        cfg = BoostConfig(
            mode="alpha_qboost",
            pool=PoolConfig(pool_size=6, max_features=2, seed=9),
            solver_backend="exhaustive",
            max_outer_iters=3,
            seed=9,
        )
        a = train_alpha_qboost(cfg, tr, va)
        b = train_alpha_qboost(cfg, tr, va)
        assert a[0].members == b[0].members
        assert _traces_equal_ignoring_time(a[1], b[1])

    def test_bootstrap_runs(self, random_dataset):
        pool = draw_bootstrap_pool(random_dataset, k=4, train_size=50, val_size=20, seed=2)
        cfg = BoostConfig(
            mode="alpha_qboost",
            pool=PoolConfig(pool_size=6, max_features=2, seed=1),
            solver_backend="exhaustive",
            max_outer_iters=3,
            bootstrap=pool,
            seed=1,
        )
        clf, trace = train_alpha_qboost(cfg, random_dataset, random_dataset)
        assert len(clf) >= 1


def _traces_equal_ignoring_time(a, b):
    for ra, rb in zip(a.records, b.records):
        da, db = dict(vars(ra)), dict(vars(rb))
        da.pop("seconds"), db.pop("seconds")
        if da != db:
            return False
    return len(a.records) == len(b.records)


class TestAdaBoost:
    def test_beta_formula(self):
        # eps = 0.25 -> beta = 0.5 * ln 3
        assert 0.5 * math.log(3) == pytest.approx(0.5493, abs=1e-4)

    def test_separable_reaches_full_training_accuracy(self):
        ds = separable()
        clf, trace = train_adaboost(ds, n_rounds=10)
        assert np.array_equal(clf.predict(ds.features), ds.labels)

    def test_member_weights_positive(self, random_dataset):
        clf, _ = train_adaboost(random_dataset, n_rounds=10)
        assert all(w > 0 for _, w in clf.members)

    def test_training_error_bound(self):
        # empirical training error <= prod_t 2*sqrt(eps_t (1 - eps_t))
        rng = np.random.default_rng(0)
        for seed in range(20):
            r = np.random.default_rng(seed)
            X = r.normal(size=(40, 4))
            y = np.where(X[:, 0] + 0.5 * r.normal(size=40) > 0, 1, -1)
            if len(np.unique(y)) < 2:
                continue
            ds = make_dataset(X, y)
            d = SampleWeights.uniform(40)
            members = []
            bound = 1.0
            for _ in range(8):
                stump = train_stump(ds, d, range(4))
                eps = weighted_error(stump, ds, d)
                if eps == 0 or eps >= 0.5:
                    break
                beta = 0.5 * math.log((1 - eps) / eps)
                members.append((stump, beta))
                bound *= 2 * math.sqrt(eps * (1 - eps))
                d_new = d.d * np.exp(-beta * ds.labels * stump.predict(ds.features))
                d = SampleWeights(d_new / d_new.sum())
                clf = StrongClassifier(tuple(members))
                err = float(np.mean(clf.predict(ds.features) != ds.labels))
                assert err <= bound + 1e-12

    def test_zero_rounds_rejected(self, random_dataset):
        with pytest.raises(SizeError):
            train_adaboost(random_dataset, n_rounds=0)
