"""Time evolution of the density matrix and asymptotic-rate extraction.

Two independent integrators: spectral expansion over the biorthogonal
Liouvillian eigenbasis (small systems), and adaptive Runge-Kutta on the
matrix-form master equation (any size, no superoperator ever built).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (
    DimensionMismatchError,
    DimensionTooLargeError,
    IllConditionedBasisError,
    StepSizeUnderflowError,
    WindowNotReachedError,
)
from .model import LadderModel
from .operators import hamiltonian, jump_operators
from .spectral import full_spectrum
from .superop import liouvillian_matrix, vectorize

SPECTRAL_DIM_LIMIT = 24
BASIS_COND_LIMIT = 1e8
FIT_WINDOW_UPPER = 1e-3  # relative to |ntilde(0)|
FIT_WINDOW_LOWER = 1e-8


@dataclass(frozen=True)
class DynamicsTrace:
    """Sampled trajectory with per-state populations and index observables."""

    times: np.ndarray
    states: np.ndarray        # (T, N, N) complex
    populations: np.ndarray   # (T, N) real
    mean_index: np.ndarray    # <n>(t) with 1-based flat index weights
    method: str
    ntilde: np.ndarray | None = None


def _check_initial_state(model: LadderModel, rho0: np.ndarray) -> np.ndarray:
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (model.dim, model.dim):
        raise DimensionMismatchError(
            f"initial state must be {model.dim}x{model.dim}, got {rho0.shape}"
        )
    return rho0


def _trace_from_states(times, states, method) -> DynamicsTrace:
    populations = np.real(np.einsum("tii->ti", states))
    weights = np.arange(1, states.shape[1] + 1)
    return DynamicsTrace(
        times=np.asarray(times, dtype=float),
        states=states,
        populations=populations,
        mean_index=populations @ weights,
        method=method,
    )


def evolve_spectral(model: LadderModel, rho0: np.ndarray, times) -> DynamicsTrace:
    """Evolution by spectral expansion rho(t) = sum c_mu e^{lambda_mu t} R_mu.

    Coefficients are c_mu = <L_mu|rho0> / <L_mu|R_mu> over the biorthogonal
    eigenbasis.  Requires N <= 24 and an eigenbasis condition number below
    1e8 (raises IllConditionedBasisError otherwise, e.g. at exceptional
    points; fall back to evolve_ode).
    """
    rho0 = _check_initial_state(model, rho0)
    if model.dim > SPECTRAL_DIM_LIMIT:
        raise DimensionTooLargeError(
            f"spectral evolution limited to N <= {SPECTRAL_DIM_LIMIT}"
        )
    spec = full_spectrum(liouvillian_matrix(model), want_vectors=True)
    right = spec.right_eigenvectors
    left = spec.left_eigenvectors
    cond = np.linalg.cond(right)
    if not np.isfinite(cond) or cond > BASIS_COND_LIMIT:
        raise IllConditionedBasisError(
            f"eigenbasis condition number {cond:.3e} exceeds {BASIS_COND_LIMIT:g}"
        )
    v0 = vectorize(rho0)
    overlaps = left.conj().T @ v0
    norms = np.einsum("ij,ij->j", left.conj(), right)
    if np.min(np.abs(norms)) < 1e-13:
        raise IllConditionedBasisError("biorthogonal pairing is numerically singular")
    coeff = overlaps / norms

    times = np.asarray(times, dtype=float)
    N = model.dim
    states = np.empty((times.size, N, N), dtype=complex)
    for i, t in enumerate(times):
        vec_t = right @ (coeff * np.exp(spec.eigenvalues * t))
        states[i] = vec_t.reshape(N, N)
    return _trace_from_states(times, states, "spectral")


def evolve_ode(model: LadderModel, rho0: np.ndarray, times,
               rtol: float = 1e-9, atol: float = 1e-12) -> DynamicsTrace:
    """Adaptive Runge-Kutta integration of the matrix-form master equation.

    The right-hand side works on N x N matrices directly, so no N^2 x N^2
    superoperator is needed; sampled states are re-Hermitized.
    """
    rho0 = _check_initial_state(model, rho0)
    times = np.asarray(times, dtype=float)
    N = model.dim
    H = hamiltonian(model)
    ops = [(op.matrix, op.matrix.conj().T @ op.matrix) for op in jump_operators(model)]
    decay = sum((ldl for _, ldl in ops), np.zeros((N, N), dtype=complex))

    def rhs(_t, y):
        rho = y.view(complex).reshape(N, N)
        out = -1j * (H @ rho - rho @ H)
        out -= 0.5 * (decay @ rho + rho @ decay)
        for L, _ in ops:
            out += L @ rho @ L.conj().T
        return out.reshape(-1).view(float)

    sol = solve_ivp(
        rhs,
        (float(times[0]), float(times[-1])),
        rho0.reshape(-1).view(float).copy(),
        t_eval=times,
        method="DOP853",
        rtol=rtol,
        atol=atol,
    )
    if sol.status != 0:
        raise StepSizeUnderflowError(f"integration failed: {sol.message}")
    states = np.empty((times.size, N, N), dtype=complex)
    for i in range(times.size):
        rho = sol.y[:, i].view(complex).reshape(N, N)
        states[i] = (rho + rho.conj().T) / 2
    return _trace_from_states(times, states, "ode")


def observables(trace: DynamicsTrace, rho_ss: np.ndarray) -> DynamicsTrace:
    """Attach ntilde(t) = sum_n n (rho_nn(t) - rho_ss,nn) to the trace.

    This is Tr[n_hat (rho(t) - rho_ss)] with n_hat the 1-based flat-index
    operator, i.e. <n>(t) minus its steady value.
    """
    weights = np.arange(1, trace.populations.shape[1] + 1)
    ss_mean = float(np.real(np.diag(rho_ss)) @ weights)
    return replace(trace, ntilde=trace.mean_index - ss_mean)


@dataclass(frozen=True)
class RateFit:
    """Least-squares exponential rate over the asymptotic window."""

    rate: float
    window: tuple[float, float]
    residual: float
    n_points: int


def fit_asymptotic_rate(times, ntilde) -> RateFit:
    """Fit -d log|ntilde|/dt where |ntilde| lies in [1e-8, 1e-3] x |ntilde(0)|.

    The window skips the early transient; raises WindowNotReachedError if
    the series never decays below the upper threshold.
    """
    times = np.asarray(times, dtype=float)
    values = np.abs(np.asarray(ntilde, dtype=float))
    if values.size < 3:
        raise WindowNotReachedError("series too short to fit")
    ref = values[0]
    if ref == 0.0:
        raise WindowNotReachedError("ntilde(0) vanishes; nothing to fit")
    mask = (values <= FIT_WINDOW_UPPER * ref) & (values >= FIT_WINDOW_LOWER * ref)
    if np.count_nonzero(mask) < 2 or not np.any(values <= FIT_WINDOW_UPPER * ref):
        raise WindowNotReachedError(
            "series never entered the asymptotic fit window"
        )
    tt = times[mask]
    yy = np.log(values[mask])
    design = np.vstack([tt, np.ones_like(tt)]).T
    (slope, intercept), *_ = np.linalg.lstsq(design, yy, rcond=None)
    resid = float(np.sqrt(np.mean((design @ [slope, intercept] - yy) ** 2)))
    return RateFit(
        rate=float(-slope),
        window=(float(tt[0]), float(tt[-1])),
        residual=resid,
        n_points=int(tt.size),
    )
