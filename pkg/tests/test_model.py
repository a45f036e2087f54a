import math

import pytest

from lindladder import CouplingPattern, build_model, coupling_at, index_state, state_index
from lindladder.errors import (
    LengthMismatchError,
    NegativeRateError,
    NonPositiveSizeError,
    OutOfRangeError,
)
from lindladder.model import EXCITED, GROUND


def test_build_model_anchor_case():
    m = build_model({"l_max": 30, "omega": 0.0, "rabi": 0.25, "gamma0": 0.0,
                     "gamma1": 1.0, "gamma2": 0.0, "boundary": "obc"})
    assert m.dim == 60
    assert len(m.omega) == 29
    assert len(m.rabi) == 30
    assert all(v == 0.25 for v in m.rabi)


def test_build_model_rejects_degenerate_ladder():
    with pytest.raises(NonPositiveSizeError):
        build_model({"l_max": 1})


def test_build_model_rejects_negative_rates():
    with pytest.raises(NegativeRateError):
        build_model({"l_max": 3, "gamma1": -0.5})
    with pytest.raises(NegativeRateError):
        build_model({"l_max": 3, "rabi": -0.1})


def test_build_model_rejects_wrong_omega_length():
    with pytest.raises(LengthMismatchError):
        build_model({"l_max": 4, "omega": [0.1, 0.2]})


def test_sqrt_pattern_expansion():
    m = build_model({"l_max": 4, "rabi_pattern": "sqrt_l", "rabi": 0.25})
    expected = (0.25, 0.3535533905932738, 0.4330127018922193)
    for got, want in zip(m.rabi[:3], expected):
        assert abs(got - want) < 1e-12


def test_state_index_anchors():
    assert state_index(1, GROUND, 30) == 1
    assert state_index(15, GROUND, 30) == 29
    assert index_state(2, 30) == (1, EXCITED)


def test_state_index_round_trip_exhaustive():
    l_max = 100
    for n in range(1, 2 * l_max + 1):
        l, sector = index_state(n, l_max)
        assert state_index(l, sector, l_max) == n
    for l in range(1, l_max + 1):
        for sector in (GROUND, EXCITED):
            assert index_state(state_index(l, sector, l_max), l_max) == (l, sector)


def test_state_index_out_of_range():
    with pytest.raises(OutOfRangeError):
        state_index(0, GROUND, 5)
    with pytest.raises(OutOfRangeError):
        state_index(6, GROUND, 5)
    with pytest.raises(OutOfRangeError):
        index_state(11, 5)


def test_coupling_at_values():
    assert coupling_at(CouplingPattern("uniform", rabi=0.25), 7) == 0.25
    assert abs(coupling_at(CouplingPattern("sqrt_l", rabi=0.25), 4) - 0.5) < 1e-15
    shifted = CouplingPattern("shifted_inverse_sqrt", rabi=0.25, rabi0=0.15)
    assert abs(coupling_at(shifted, 1) - 0.25) < 1e-15
    assert abs(coupling_at(shifted, 4) - (0.15 + 0.10 / 2)) < 1e-15


def test_coupling_patterns_finite_nonnegative():
    patterns = [
        CouplingPattern("uniform", rabi=0.3),
        CouplingPattern("sqrt_l", rabi=0.3),
        CouplingPattern("shifted_inverse_sqrt", rabi=0.3, rabi0=0.1),
    ]
    for pattern in patterns:
        for l in (1, 2, 17, 313, 9999, 10000):
            v = coupling_at(pattern, l)
            assert math.isfinite(v) and v >= 0


def test_custom_pattern_bounds():
    pattern = CouplingPattern("custom", values=(0.1, 0.2, 0.3))
    assert coupling_at(pattern, 2) == 0.2
    with pytest.raises(OutOfRangeError):
        coupling_at(pattern, 4)


def test_pbc_wrap_default_and_override():
    m = build_model({"l_max": 4, "rabi_pattern": "sqrt_l", "rabi": 0.25,
                     "boundary": "pbc"})
    assert abs(m.rabi[-1] - 2 * 0.25) < 1e-15  # sqrt(4) * 0.25
    m2 = build_model({"l_max": 4, "rabi_pattern": "sqrt_l", "rabi": 0.25,
                      "boundary": "pbc", "pbc_wrap_rabi": 0.7})
    assert m2.rabi[-1] == 0.7
