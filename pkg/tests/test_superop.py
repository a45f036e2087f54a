import numpy as np
import pytest

from lindladder import (
    apply_generator,
    build_model,
    devectorize,
    liouvillian_matrix,
    trace_preservation_residual,
    vectorize,
)
from lindladder.errors import DimensionMismatchError
from lindladder.model import LadderModel
from lindladder.superop import SuperOperatorMatrix

from conftest import random_density_matrix, random_model_config


def test_vectorize_identity_over_two():
    rho = np.eye(2) / 2
    assert np.array_equal(vectorize(rho), np.array([0.5, 0.0, 0.0, 0.5]))


def test_vectorize_round_trip(rng):
    for _ in range(10):
        rho = random_density_matrix(rng, 5)
        assert np.array_equal(devectorize(vectorize(rho)), rho)


def test_vectorize_kron_identity(rng):
    n = 3
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    b = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = random_density_matrix(rng, n)
    lhs = vectorize(a @ rho @ b)
    rhs = np.kron(a, b.T) @ vectorize(rho)
    assert np.max(np.abs(lhs - rhs)) < 1e-13


def test_vectorize_rejects_non_square():
    with pytest.raises(DimensionMismatchError):
        vectorize(np.zeros((2, 3)))
    with pytest.raises(DimensionMismatchError):
        devectorize(np.zeros(5))


def test_superoperator_tag_is_asserted():
    with pytest.raises(DimensionMismatchError):
        SuperOperatorMatrix(matrix=np.zeros((4, 4)), vectorization="column-major")


def test_single_rung_static_generator():
    # Direct construction: a single closed rung has a vanishing generator.
    m = LadderModel(l_max=1, omega=(), rabi=(0.0,), gamma0=0.0, gamma1=0.0,
                    gamma2=0.0)
    sop = liouvillian_matrix(m)
    assert np.array_equal(sop.matrix, np.zeros((4, 4)))


def test_pair_sector_subblock_eigenvalues():
    # 4x4 sub-block on the {|e,1>, |g,2>} pair sector at the critical point:
    # characteristic polynomial (x + g/2)(x^2 + g x + 4 R^2) has all roots
    # at -1/2 when 16 R^2 = g^2.
    m = build_model({"l_max": 2, "rabi": 0.25, "gamma1": 1.0})
    M = liouvillian_matrix(m).matrix
    idx = [1 * 4 + 1, 1 * 4 + 2, 2 * 4 + 1, 2 * 4 + 2]
    sub = M[np.ix_(idx, idx)]
    evals = np.linalg.eigvals(sub)
    # the root is defective here, so the eigensolver error scales as
    # sqrt(machine epsilon)
    assert np.max(np.abs(evals + 0.5)) < 1e-7


def test_generator_action_matches_matrix_form(rng):
    m = build_model({"l_max": 4, "omega": 0.15, "rabi": 0.3, "gamma0": 0.1,
                     "gamma1": 0.8, "gamma2": 0.2})
    M = liouvillian_matrix(m).matrix
    for _ in range(5):
        rho = random_density_matrix(rng, m.dim)
        lhs = devectorize(M @ vectorize(rho))
        rhs = apply_generator(m, rho)
        assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_trace_preservation_random_models(rng):
    for _ in range(10):
        m = build_model(random_model_config(rng))
        assert trace_preservation_residual(liouvillian_matrix(m)) < 1e-10


def test_trace_preservation_zero_matrix():
    sop = SuperOperatorMatrix(matrix=np.zeros((16, 16), dtype=complex))
    assert trace_preservation_residual(sop) == 0.0


def test_trace_residual_fault_injection():
    # Dropping one dissipator's anticommutator breaks trace preservation by
    # an amount of order the rate.
    m = build_model({"l_max": 3, "rabi": 0.25, "gamma1": 1.0})
    from lindladder.operators import hamiltonian, jump_operators

    H = hamiltonian(m)
    eye = np.eye(m.dim)
    M = -1j * (np.kron(H, eye) - np.kron(eye, H.conj()))
    ops = jump_operators(m)
    for i, op in enumerate(ops):
        L = op.matrix
        LdL = L.conj().T @ L
        M += np.kron(L, L.conj())
        if i != 0:  # drop the anticommutator of the first jump
            M -= 0.5 * (np.kron(LdL, eye) + np.kron(eye, LdL.T))
    residual = trace_preservation_residual(SuperOperatorMatrix(matrix=M))
    assert residual >= m.gamma1 - 1e-12


def test_spectrum_conjugation_closed(rng):
    for _ in range(5):
        m = build_model(random_model_config(rng, max_l=5))
        evals = np.linalg.eigvals(liouvillian_matrix(m).matrix)
        conj = np.conj(evals)
        cost = np.abs(evals[:, None] - conj[None, :])
        assert cost.min(axis=1).max() < 1e-8


def test_max_real_part_nonpositive(rng):
    for _ in range(5):
        m = build_model(random_model_config(rng, max_l=5))
        evals = np.linalg.eigvals(liouvillian_matrix(m).matrix)
        assert np.max(np.real(evals)) <= 1e-10
        assert np.min(np.abs(evals)) < 1e-9
