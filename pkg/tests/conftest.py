import numpy as np
import pytest

from alphaqboost import Dataset


@pytest.fixture
def separable_dataset():
    """Two features; feature 0 separates the classes perfectly at 2.5."""
    X = np.array(
        [
            [1.0, 5.0],
            [2.0, 1.0],
            [3.0, 4.0],
            [4.0, 2.0],
            [1.5, 3.0],
            [3.5, 0.5],
        ]
    )
    y = np.array([-1, -1, 1, 1, -1, 1])
    return Dataset(X, y, ("a", "b"))


@pytest.fixture
def random_dataset():
    rng = np.random.default_rng(7)
    X = rng.normal(size=(80, 6))
    y = np.where(X[:, 0] + 0.5 * X[:, 1] + 0.3 * rng.normal(size=80) > 0, 1, -1)
    if len(np.unique(y)) < 2:  # pragma: no cover - seed chosen to avoid this
        y[0] = -y[0]
    return Dataset(X, y, tuple(f"f{i}" for i in range(6)))


def make_dataset(X, y, names=None):
    X = np.asarray(X, dtype=float)
    names = names or tuple(f"f{i}" for i in range(X.shape[1]))
    return Dataset(X, np.asarray(y), names)
