"""Dense spectra, gap extraction, steady states, and loop enclosure.

Eigenvalues are always reported sorted by descending real part, ties
broken by ascending imaginary part, so every downstream output is
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import (
    DegenerateLoopError,
    DegenerateSteadySpaceError,
    DimensionTooLargeError,
    EmptySpectrumError,
    SolverFailureError,
)
from .superop import SuperOperatorMatrix, devectorize

DENSE_DIM_LIMIT = 1024  # N <= 32
STEADY_EPS_RELATIVE = 1e-9


def sort_spectrum(values: np.ndarray, vectors: np.ndarray | None = None):
    """Order eigenvalues by descending Re, ties by ascending Im."""
    order = np.lexsort((np.imag(values), -np.real(values)))
    if vectors is None:
        return values[order], None
    return values[order], vectors[:, order]


def steady_threshold(values: np.ndarray) -> float:
    """Steady-mode cutoff: 1e-9 relative to the largest |Re| in the spectrum."""
    if values.size == 0:
        return 0.0
    return STEADY_EPS_RELATIVE * float(np.max(np.abs(np.real(values))))


@dataclass(frozen=True)
class SpectrumResult:
    """Sorted spectrum with optional biorthogonal eigenvectors."""

    eigenvalues: np.ndarray
    right_eigenvectors: np.ndarray | None = None
    left_eigenvectors: np.ndarray | None = None
    steady_indices: tuple[int, ...] = ()
    gap: float = 0.0
    threshold: float = field(default=0.0, repr=False)


def _gap_from_sorted(values: np.ndarray, threshold: float) -> float:
    nonsteady = np.abs(np.real(values))[np.abs(np.real(values)) > threshold]
    if nonsteady.size == 0:
        return 0.0
    return float(nonsteady.min())


def spectrum_from_eigenvalues(values: np.ndarray) -> SpectrumResult:
    """Wrap a raw eigenvalue multiset (e.g. from the block path)."""
    values = np.asarray(values, dtype=complex)
    if values.size == 0:
        raise EmptySpectrumError("no eigenvalues supplied")
    values, _ = sort_spectrum(values)
    thr = steady_threshold(values)
    steady = tuple(int(i) for i in np.nonzero(np.abs(np.real(values)) <= thr)[0])
    return SpectrumResult(
        eigenvalues=values,
        steady_indices=steady,
        gap=_gap_from_sorted(values, thr),
        threshold=thr,
    )


def full_spectrum(superop: SuperOperatorMatrix, want_vectors: bool = False,
                  allow_large: bool = False) -> SpectrumResult:
    """Dense eigendecomposition of the vectorized generator.

    Capped at dimension 1024 (N = 32) unless allow_large is set; right and
    left eigenvectors are returned index-paired when requested.
    """
    M = superop.matrix
    if M.shape[0] > DENSE_DIM_LIMIT and not allow_large:
        raise DimensionTooLargeError(
            f"dense dimension {M.shape[0]} exceeds {DENSE_DIM_LIMIT}; "
            "use the block path or pass allow_large=True"
        )
    try:
        if want_vectors:
            values, left, right = scipy.linalg.eig(M, left=True, right=True)
        else:
            values = scipy.linalg.eig(M, right=False)
            left = right = None
    except np.linalg.LinAlgError as exc:
        raise SolverFailureError(f"dense eigensolver failed: {exc}") from exc

    order = np.lexsort((np.imag(values), -np.real(values)))
    values = values[order]
    if right is not None:
        right = right[:, order]
        left = left[:, order]
    thr = steady_threshold(values)
    steady = tuple(int(i) for i in np.nonzero(np.abs(np.real(values)) <= thr)[0])
    return SpectrumResult(
        eigenvalues=values,
        right_eigenvectors=right,
        left_eigenvectors=left,
        steady_indices=steady,
        gap=_gap_from_sorted(values, thr),
        threshold=thr,
    )


def liouvillian_gap(spectrum: SpectrumResult) -> float:
    """|Re| of the slowest non-steady mode; steady modes are excluded first."""
    if spectrum.eigenvalues.size == 0:
        raise EmptySpectrumError("spectrum is empty")
    return _gap_from_sorted(spectrum.eigenvalues, spectrum.threshold)


def steady_state(superop: SuperOperatorMatrix, rcond: float = 1e-9) -> np.ndarray:
    """Unique steady state of the generator as a density matrix.

    The null vector is devectorized, Hermitized and trace-normalized.
    Raises DegenerateSteadySpaceError (carrying an orthonormal basis) when
    the numerical null space has dimension > 1.
    """
    basis = scipy.linalg.null_space(superop.matrix, rcond=rcond)
    if basis.shape[1] == 0:
        raise SolverFailureError("no numerical null vector found")
    if basis.shape[1] > 1:
        mats = [devectorize(basis[:, i]) for i in range(basis.shape[1])]
        raise DegenerateSteadySpaceError(
            f"steady space has dimension {basis.shape[1]}", basis=mats
        )
    rho = devectorize(basis[:, 0])
    rho = (rho + rho.conj().T) / 2
    trace = np.trace(rho)
    if abs(trace) < 1e-12:
        raise SolverFailureError("null vector is traceless; not a state")
    return rho / trace


@dataclass(frozen=True)
class EnclosureReport:
    """Outcome of the winding-number test of OBC points against the PBC loop."""

    inside: int
    outside: int
    excluded: int
    identical: bool
    loop_size: int
    dropped_center_points: int
    outside_values: np.ndarray
    windings: np.ndarray


def _loop_vertices(pbc_eigs: np.ndarray):
    centroid = complex(np.mean(pbc_eigs))
    offsets = pbc_eigs - centroid
    radius = np.abs(offsets)
    scale = float(radius.max())
    if scale == 0.0:
        raise DegenerateLoopError("all PBC eigenvalues coincide")
    # collinearity: every offset parallel to the farthest one
    direction = offsets[int(np.argmax(radius))] / scale
    perp = np.abs(np.imag(offsets * np.conj(direction)))
    if float(perp.max()) <= 1e-12 * scale:
        raise DegenerateLoopError("PBC eigenvalues are collinear")
    # Points at (numerically) zero radius have no angle; they cannot be
    # ordered on the loop and are kept out of the polygon as interior
    # markers.  Tie rule: angle, then radius, then re, then im (ascending).
    keep = radius > 1e-6 * scale
    pts = pbc_eigs[keep]
    off = offsets[keep]
    order = np.lexsort((np.imag(pts), np.real(pts), np.abs(off), np.angle(off)))
    return pts[order], int(np.sum(~keep))


def _windings(points: np.ndarray, loop: np.ndarray) -> np.ndarray:
    px, py = np.real(loop), np.imag(loop)
    qx, qy = np.roll(px, -1), np.roll(py, -1)
    out = np.empty(points.size, dtype=int)
    for i, z in enumerate(points):
        x, y = float(np.real(z)), float(np.imag(z))
        side = (qx - px) * (y - py) - (x - px) * (qy - py)
        up = (py <= y) & (qy > y) & (side > 0)
        down = (py > y) & (qy <= y) & (side < 0)
        out[i] = int(up.sum()) - int(down.sum())
    return out


def spectrum_encloses(pbc_eigs: np.ndarray, obc_eigs: np.ndarray,
                      eps: float = 1e-6) -> EnclosureReport:
    """Winding-number enclosure test of OBC eigenvalues by the PBC loop.

    PBC eigenvalues are angularly ordered about their centroid into a
    closed polygon.  OBC eigenvalues within eps of any PBC eigenvalue are
    excluded from the test (this also covers the steady eigenvalue shared
    by both spectra); the rest are classified by nonzero winding number.
    """
    pbc_eigs = np.asarray(pbc_eigs, dtype=complex).ravel()
    obc_eigs = np.asarray(obc_eigs, dtype=complex).ravel()
    if pbc_eigs.size == 0 or obc_eigs.size == 0:
        raise EmptySpectrumError("need both spectra for the enclosure test")

    identical = False
    if pbc_eigs.size == obc_eigs.size:
        a = np.sort_complex(pbc_eigs)
        b = np.sort_complex(obc_eigs)
        identical = bool(np.max(np.abs(a - b)) <= 1e-12)

    loop, dropped = _loop_vertices(pbc_eigs)
    if loop.size < 3:
        raise DegenerateLoopError("fewer than 3 loop vertices after degeneracy drop")

    dist = np.min(np.abs(obc_eigs[:, None] - pbc_eigs[None, :]), axis=1)
    testable_mask = dist > eps
    testable = obc_eigs[testable_mask]
    windings = _windings(testable, loop)
    inside = int(np.count_nonzero(windings != 0))
    return EnclosureReport(
        inside=inside,
        outside=int(testable.size - inside),
        excluded=int(obc_eigs.size - testable.size),
        identical=identical,
        loop_size=int(loop.size),
        dropped_center_points=dropped,
        outside_values=testable[windings == 0],
        windings=windings,
    )
