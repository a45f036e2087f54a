"""Row-major vectorization and the dense N^2 x N^2 Liouvillian matrix.

Vectorization convention: vec(rho)[i*N + j] = rho[i, j] (row-major), so
vec(A rho B) = (A kron B^T) vec(rho).  The convention is tagged on the
matrix wrapper so downstream consumers can assert it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError
from .model import LadderModel
from .operators import hamiltonian, jump_operators

VECTORIZATION = "row-major"


@dataclass(frozen=True)
class SuperOperatorMatrix:
    """Dense vectorized generator with its vectorization tag."""

    matrix: np.ndarray
    vectorization: str = VECTORIZATION
    dim: int = field(init=False)

    def __post_init__(self):
        n2 = self.matrix.shape[0]
        if self.matrix.shape != (n2, n2):
            raise DimensionMismatchError("superoperator matrix must be square")
        n = round(np.sqrt(n2))
        if n * n != n2:
            raise DimensionMismatchError(f"dimension {n2} is not a perfect square")
        if self.vectorization != VECTORIZATION:
            raise DimensionMismatchError(
                f"unknown vectorization tag {self.vectorization!r}"
            )
        object.__setattr__(self, "dim", n2)

    @property
    def hilbert_dim(self) -> int:
        return round(np.sqrt(self.dim))


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Stack a square matrix row by row into a vector."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionMismatchError(f"expected square matrix, got shape {rho.shape}")
    return rho.reshape(-1)


def devectorize(vec: np.ndarray) -> np.ndarray:
    """Inverse of vectorize."""
    vec = np.asarray(vec)
    n = round(np.sqrt(vec.size))
    if n * n != vec.size:
        raise DimensionMismatchError(f"vector length {vec.size} is not a square")
    return vec.reshape(n, n)


def liouvillian_matrix(model: LadderModel) -> SuperOperatorMatrix:
    """Full vectorized Lindblad generator of the model."""
    H = hamiltonian(model)
    N = model.dim
    eye = np.eye(N)
    M = -1j * (np.kron(H, eye) - np.kron(eye, H.conj()))
    for op in jump_operators(model):
        L = op.matrix
        LdL = L.conj().T @ L
        M += np.kron(L, L.conj())
        M -= 0.5 * (np.kron(LdL, eye) + np.kron(eye, LdL.T))
    return SuperOperatorMatrix(matrix=M)


def apply_generator(model: LadderModel, rho: np.ndarray) -> np.ndarray:
    """Matrix-form action of the generator on rho (no superoperator built)."""
    H = hamiltonian(model)
    out = -1j * (H @ rho - rho @ H)
    for op in jump_operators(model):
        L = op.matrix
        LdL = L.conj().T @ L
        out += L @ rho @ L.conj().T - 0.5 * (LdL @ rho + rho @ LdL)
    return out


def trace_preservation_residual(superop: SuperOperatorMatrix) -> float:
    """Max-norm of vec(I)^T M; zero for a trace-preserving generator."""
    N = superop.hilbert_dim
    trace_vec = vectorize(np.eye(N, dtype=complex))
    return float(np.max(np.abs(trace_vec @ superop.matrix)))


def is_density_matrix(rho: np.ndarray, herm_tol: float = 1e-12,
                      trace_tol: float = 1e-12, psd_tol: float = 1e-10) -> bool:
    """Check Hermiticity, unit trace, and positive semidefiniteness."""
    if np.max(np.abs(rho - rho.conj().T)) > herm_tol:
        return False
    if abs(np.trace(rho) - 1.0) > trace_tol:
        return False
    evals = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    return bool(evals.min() >= -psd_tol)
