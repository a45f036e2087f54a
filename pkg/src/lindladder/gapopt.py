"""Gap scans, derivative classification, and 1-D gap maximization over gamma0.

For uniform open-boundary parameters the gap is independent of the system
size, so all pointwise gap evaluations here use the analytic candidate set
of the block decomposition (a handful of <= 4x4 eigensolves) rather than a
dense superoperator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .blockstruct import block_spectrum
from .model import LadderModel, build_model
from .spectral import full_spectrum, spectrum_from_eigenvalues
from .superop import liouvillian_matrix

MONOTONE_DECREASING = "monotone_decreasing"
INTERIOR_MAXIMUM = "interior_maximum"

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def uniform_candidate_eigs(rabi: float, gamma0: float, gamma1: float,
                           omega: float = 0.0) -> np.ndarray:
    """Distinct OBC eigenvalue candidates for uniform parameters.

    Contains the diagonal-sector values (dark 0, excited singleton -gamma1,
    the 4x4 pair block) and all cross-sector combinations of subsystem
    eigenvalues.  Real parts are exact and size-independent; imaginary
    parts of cross combinations are taken at zero relative rung offset.
    gamma0 may be negative here (analytic continuation used by the
    derivative probe); no physical validation is applied.
    """
    g = gamma0 + gamma1
    pair_h = np.array([[-0.5j * g, rabi], [rabi, omega]], dtype=complex)
    eps_pair = np.linalg.eigvals(pair_h)
    eps_dark = np.array([0.0 + 0.0j])
    eps_esing = np.array([-0.5j * gamma1])

    block = np.array([
        [-g, 1j * rabi, -1j * rabi, 0.0],
        [1j * rabi, 1j * omega - g / 2, 0.0, -1j * rabi],
        [-1j * rabi, 0.0, -1j * omega - g / 2, 1j * rabi],
        [gamma0, -1j * rabi, 1j * rabi, 0.0],
    ], dtype=complex)
    values = [np.array([0.0 + 0.0j, -gamma1 + 0.0j]), np.linalg.eigvals(block)]

    sets = (eps_dark, eps_pair, eps_esing)
    for r, eps_r in enumerate(sets):
        for s, eps_s in enumerate(sets):
            if r == s and r != 1:
                continue  # only one dark / excited singleton exists
            for ea in eps_r:
                for eb in eps_s:
                    if r == s == 1 and ea is eb:
                        pass  # distinct pair blocks share eigenvalues; keep all
                    values.append(np.array([-1j * (ea - np.conj(eb))]))
    return np.concatenate(values)


def gap_from_eigenvalues(values: np.ndarray) -> float:
    re = np.real(values)
    threshold = 1e-9 * max(1.0, float(np.max(np.abs(re))))
    nonzero = np.abs(re)[np.abs(re) > threshold]
    return float(nonzero.min()) if nonzero.size else 0.0


def uniform_gap(rabi: float, gamma0: float, gamma1: float,
                omega: float = 0.0) -> float:
    """Numeric OBC gap for uniform parameters (size-independent)."""
    return gap_from_eigenvalues(uniform_candidate_eigs(rabi, gamma0, gamma1, omega))


def numeric_gap(model: LadderModel) -> tuple[float, str]:
    """Gap of a model via the block path, dense fallback for gamma2 != 0."""
    if model.gamma2 == 0:
        spec = spectrum_from_eigenvalues(block_spectrum(model).eigenvalues)
        return spec.gap, "block"
    spec = full_spectrum(liouvillian_matrix(model))
    return spec.gap, "dense"


@dataclass(frozen=True)
class GapScanPoint:
    value: float
    gap: float
    method: str


_SCAN_KEYS = {
    "gamma0": "gamma0",
    "gamma2": "gamma2",
    "rabi": "rabi",
    "omega": "omega",
    "size": "l_max",
}


def gap_scan(config: dict, parameter: str, grid) -> list[GapScanPoint]:
    """Gap along a 1-D parameter grid; each point is an independent solve.

    parameter is one of gamma0, gamma2, rabi, omega, size (size values are
    Hilbert dimensions N = 2 l_max and must be even).
    """
    if parameter not in _SCAN_KEYS:
        raise ValueError(f"unknown scan parameter {parameter!r}")
    key = _SCAN_KEYS[parameter]
    points = []
    for value in grid:
        cfg = dict(config)
        if parameter == "size":
            n = int(value)
            if n % 2:
                raise ValueError(f"size scan values must be even, got {n}")
            cfg[key] = n // 2
        else:
            cfg[key] = float(value)
        gap, method = numeric_gap(build_model(cfg))
        points.append(GapScanPoint(value=float(value), gap=gap, method=method))
    return points


@dataclass(frozen=True)
class GapSlope:
    """Richardson-refined central difference of the gap in gamma0 at zero."""

    value: float
    forward: float
    backward: float
    has_kink: bool


def gap_derivative_at_zero(rabi: float, omega: float, gamma1: float) -> GapSlope:
    """d(gap)/d(gamma0) at gamma0 = 0 by central finite differences.

    The gap function extends smoothly to slightly negative gamma0 through
    the analytic candidate set, which makes the central stencil usable at
    the boundary.  One-sided kinks are flagged by comparing forward and
    backward differences.
    """
    h = 1e-5 * max(gamma1, 1.0)

    def f(g0):
        return uniform_gap(rabi, g0, gamma1, omega)

    def central(step):
        return (f(step) - f(-step)) / (2 * step)

    d_h = central(h)
    d_half = central(h / 2)
    value = (4 * d_half - d_h) / 3
    f0 = f(0.0)
    forward = (f(h) - f0) / h
    backward = (f0 - f(-h)) / h
    scale = max(1.0, abs(forward), abs(backward))
    return GapSlope(
        value=float(value),
        forward=float(forward),
        backward=float(backward),
        has_kink=bool(abs(forward - backward) > 1e-2 * scale),
    )


@dataclass(frozen=True)
class OptimizeResult:
    """Outcome of the 1-D gap maximization over gamma0."""

    gamma0_star: float
    gap_star: float
    classification: str
    trace: tuple[tuple[float, float], ...]


def _is_single_peaked(values, tol=1e-12) -> bool:
    peak = int(np.argmax(values))
    for i in range(1, peak + 1):
        if values[i] < values[i - 1] - tol:
            return False
    for i in range(peak + 1, len(values)):
        if values[i] > values[i - 1] + tol:
            return False
    return True


def maximize_gap_gamma0(rabi: float, omega: float, gamma1: float) -> OptimizeResult:
    """Maximize the uniform OBC gap over gamma0 >= 0.

    Coarse bracketing on 0 plus 32 log-spaced points, then golden-section
    refinement; a decreasing coarse scan returns the boundary solution
    gamma0* = 0 with the monotone-decreasing classification.
    """
    scale = max(gamma1, 1.0)
    lo = 1e-4 * scale
    hi = 4.0 * max(gamma1, rabi, 1.0)
    trace = []

    def f(g0):
        gap = uniform_gap(rabi, g0, gamma1, omega)
        trace.append((float(g0), float(gap)))
        return gap

    for _ in range(4):
        grid = np.concatenate([[0.0], np.geomspace(lo, hi, 32)])
        values = np.array([f(g) for g in grid])
        if int(np.argmax(values)) < len(grid) - 1:
            break
        hi *= 4.0
    peak = int(np.argmax(values))

    if peak == 0:
        return OptimizeResult(
            gamma0_star=0.0,
            gap_star=float(values[0]),
            classification=MONOTONE_DECREASING,
            trace=tuple(trace),
        )

    if not _is_single_peaked(values):
        fine = np.linspace(0.0, hi, 4001)
        fine_vals = np.array([f(g) for g in fine])
        i = int(np.argmax(fine_vals))
        return OptimizeResult(
            gamma0_star=float(fine[i]),
            gap_star=float(fine_vals[i]),
            classification=INTERIOR_MAXIMUM if i > 0 else MONOTONE_DECREASING,
            trace=tuple(trace),
        )

    a = float(grid[peak - 1])
    b = float(grid[min(peak + 1, len(grid) - 1)])
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > 1e-4 * scale:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    g_star = (a + b) / 2
    return OptimizeResult(
        gamma0_star=float(g_star),
        gap_star=float(uniform_gap(rabi, g_star, gamma1, omega)),
        classification=INTERIOR_MAXIMUM,
        trace=tuple(trace),
    )


@dataclass(frozen=True)
class GapSurface:
    """Gap over a (rabi, omega) grid; gaps[i, j] belongs to omega_grid[i], rabi_grid[j]."""

    rabi_grid: np.ndarray
    omega_grid: np.ndarray
    gaps: np.ndarray


def gap_surface(rabi_grid, omega_grid, gamma1: float) -> GapSurface:
    """Uniform OBC gap on the tensor grid of couplings and energy intervals."""
    rabi_grid = np.asarray(rabi_grid, dtype=float)
    omega_grid = np.asarray(omega_grid, dtype=float)
    gaps = np.empty((omega_grid.size, rabi_grid.size))
    for i, om in enumerate(omega_grid):
        for j, rb in enumerate(rabi_grid):
            gaps[i, j] = uniform_gap(rb, 0.0, gamma1, om)
    return GapSurface(rabi_grid=rabi_grid, omega_grid=omega_grid, gaps=gaps)
