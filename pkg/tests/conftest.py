import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from lindladder import build_model


def matched_distance(a, b):
    """Max distance over the optimal pairing of two eigenvalue multisets."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    assert a.size == b.size, f"multiset sizes differ: {a.size} vs {b.size}"
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


PATTERNS = ("uniform", "sqrt_l", "shifted_inverse_sqrt")


def random_model_config(rng, max_l=8, boundary=None, pattern=None, gamma2=None):
    """Seeded random model draw used by the property-style tests."""
    l_max = int(rng.integers(2, max_l + 1))
    pattern = pattern or PATTERNS[int(rng.integers(len(PATTERNS)))]
    cfg = {
        "l_max": l_max,
        "omega": float(rng.uniform(0.0, 2.0)),
        "rabi_pattern": pattern,
        "rabi": float(rng.uniform(0.0, 2.0)),
        "rabi0": float(rng.uniform(0.0, 2.0)),
        "gamma0": float(rng.uniform(0.0, 2.0)),
        "gamma1": float(rng.uniform(0.0, 2.0)),
        "gamma2": float(rng.uniform(0.0, 2.0)) if gamma2 is None else gamma2,
        "boundary": boundary or ("obc", "pbc")[int(rng.integers(2))],
    }
    return cfg


def random_density_matrix(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


@pytest.fixture
def rng():
    return np.random.default_rng(91231)


@pytest.fixture
def paper_model():
    """Uniform OBC model at the anchor parameters (gap = gamma1/4)."""
    return build_model({"l_max": 8, "rabi": 0.25, "gamma1": 1.0})
