import cmath

import numpy as np
import pytest

from lindladder import (
    block_spectrum,
    build_L0,
    build_Lrs,
    build_model,
    cross_sector_eigs,
    decompose_subsystems,
    diagonal_block_Bl,
    effective_hamiltonian,
    full_spectrum,
    liouvillian_matrix,
    pbc_band_matrix,
    pbc_band_spectrum,
    pbc_gap_from_bands,
    spectrum_from_eigenvalues,
)
from lindladder.blockstruct import pbc_momenta, sector_diagonal_block
from lindladder.errors import (
    InvalidSectorPairError,
    OutOfRangeError,
    UnsupportedChannelError,
    UnsupportedParametersError,
)

from conftest import matched_distance, random_model_config


def decomp_for(config):
    m = build_model(config)
    return m, decompose_subsystems(effective_hamiltonian(m))


def test_decompose_obc_components():
    _, d = decomp_for({"l_max": 4, "rabi": 0.25, "gamma1": 1.0})
    assert d.components == ((1,), (2, 3), (4, 5), (6, 7), (8,))
    assert d.sizes == (1, 2, 2, 2, 1)


def test_decompose_pbc_components():
    _, d = decomp_for({"l_max": 4, "rabi": 0.25, "gamma1": 1.0, "boundary": "pbc"})
    assert d.components == ((1, 8), (2, 3), (4, 5), (6, 7))
    # pair basis order puts the excited state first
    assert d.basis_order[0] == (8, 1)


def test_decompose_no_couplings_gives_singletons():
    _, d = decomp_for({"l_max": 4, "rabi": 0.0, "gamma1": 1.0})
    assert d.components == tuple((i,) for i in range(1, 9))


def test_build_l0_dimension():
    m, d = decomp_for({"l_max": 4, "rabi": 0.25, "gamma1": 1.0})
    assert build_L0(m, d).shape == (14, 14)  # 2N - 2 at N = 8


def test_build_l0_no_jumps_is_block_diagonal():
    m, d = decomp_for({"l_max": 4, "rabi": 0.25})
    L0 = build_L0(m, d)
    offsets = np.concatenate([[0], np.cumsum([n * n for n in d.sizes])])
    mask = np.ones_like(L0, dtype=bool)
    for j in range(len(d.sizes)):
        sl = slice(offsets[j], offsets[j + 1])
        mask[sl, sl] = False
    assert np.count_nonzero(L0[mask]) == 0


def test_build_l0_rejects_gamma2():
    m = build_model({"l_max": 4, "rabi": 0.25, "gamma1": 1.0, "gamma2": 0.3})
    with pytest.raises(UnsupportedChannelError):
        build_L0(m)


def test_union_theorem_l0_vs_diagonal_blocks():
    m, d = decomp_for({"l_max": 4, "omega": 0.1, "rabi": 0.25, "gamma0": 0.2,
                       "gamma1": 1.0})
    L0 = build_L0(m, d)
    union = np.concatenate([
        np.linalg.eigvals(sector_diagonal_block(m, d, j))
        for j in range(len(d.blocks))
    ])
    assert matched_distance(np.linalg.eigvals(L0), union) < 1e-8


def test_l0_singleton_diagonal_values():
    m, d = decomp_for({"l_max": 4, "rabi": 0.25, "gamma1": 1.0})
    dark = sector_diagonal_block(m, d, 0)
    esing = sector_diagonal_block(m, d, len(d.blocks) - 1)
    assert dark.shape == (1, 1) and abs(dark[0, 0]) == 0
    assert esing.shape == (1, 1) and abs(esing[0, 0] + 1.0) < 1e-15


def test_pbc_l0_is_block_circulant():
    m, d = decomp_for({"l_max": 4, "rabi": 0.25, "gamma1": 1.0, "boundary": "pbc"})
    L0 = build_L0(m, d)
    cells = len(d.sizes)
    diag = L0[0:4, 0:4]
    for c in range(1, cells):
        assert np.array_equal(L0[4 * c:4 * c + 4, 4 * c:4 * c + 4], diag)
    hop = L0[0:4, 4:8]
    for c in range(1, cells):
        c2 = (c + 1) % cells
        assert np.array_equal(
            L0[4 * c:4 * c + 4, 4 * c2:4 * c2 + 4], hop
        )


def test_diagonal_block_critical_point():
    m = build_model({"l_max": 3, "rabi": 0.25, "gamma1": 1.0})
    B = diagonal_block_Bl(m, 1)
    evals = np.linalg.eigvals(B)
    # defective root: eigensolver error scales as sqrt(machine epsilon)
    assert np.max(np.abs(evals + 0.5)) < 1e-7


def test_diagonal_block_decoupled_two_level():
    m = build_model({"l_max": 3, "rabi": 0.0, "gamma1": 0.8})
    # rabi = 0 splits pairs into singletons, so request the block directly
    with pytest.raises(OutOfRangeError):
        diagonal_block_Bl(m, 1)
    # with a vanishingly small coupling the eigenvalues approach the
    # decoupled multiset {-g1, -g1/2, -g1/2, 0}
    m = build_model({"l_max": 3, "rabi": 1e-9, "gamma1": 0.8})
    evals = np.sort(np.real(np.linalg.eigvals(diagonal_block_Bl(m, 1))))
    assert np.max(np.abs(evals - np.array([-0.8, -0.4, -0.4, 0.0]))) < 1e-6


def test_diagonal_block_matches_dense_restriction():
    m = build_model({"l_max": 3, "omega": 0.2, "rabi": 0.25, "gamma0": 0.3,
                     "gamma1": 0.7})
    M = liouvillian_matrix(m).matrix
    N = m.dim
    for l in (1, 2):
        e, g = 2 * l - 1, 2 * l  # 0-based flat indices of |e,l>, |g,l+1>
        idx = [e * N + e, e * N + g, g * N + e, g * N + g]
        dense_block = M[np.ix_(idx, idx)]
        got = np.linalg.eigvals(diagonal_block_Bl(m, l))
        want = np.linalg.eigvals(dense_block)
        assert matched_distance(got, want) < 1e-10
        # the block is literally the dense restriction in this basis order
        assert np.max(np.abs(diagonal_block_Bl(m, l) - dense_block)) < 1e-14


def test_build_lrs_rejects_equal_sectors():
    m, d = decomp_for({"l_max": 3, "rabi": 0.25, "gamma1": 1.0})
    with pytest.raises(InvalidSectorPairError):
        build_Lrs(m, 1, 1, d)


def test_dark_pair_cross_sector_eigenvalues():
    m, d = decomp_for({"l_max": 3, "omega": 0.1, "rabi": 0.3, "gamma1": 1.0})
    # analytic eigenvalues of the pair block (e_1, g_2)
    g1 = 1.0
    tr = 0.1 - 0.5j * g1
    det = (-0.5j * g1) * 0.1 - 0.3 * 0.3
    disc = cmath.sqrt(tr * tr - 4 * det)
    eps = [(tr + disc) / 2, (tr - disc) / 2]
    want = [-1j * (e - 0) for e in eps]  # sector (pair, dark)
    got = np.linalg.eigvals(build_Lrs(m, 1, 0, d))
    assert matched_distance(got, want) < 1e-12
    # real parts are the imaginary parts of the pair eigenvalues
    for w in want:
        assert abs(w.real - min(e.imag for e in eps)) < 1.0  # sanity bound


def test_cross_sector_count():
    m, d = decomp_for({"l_max": 5, "rabi": 0.25, "gamma1": 1.0})
    values, provenance = cross_sector_eigs(d)
    assert values.size == 82  # N^2 - 2N + 2 at N = 10
    assert len(provenance) == 82


def test_eigenvalue_counts():
    m = build_model({"l_max": 5, "rabi": 0.3, "gamma0": 0.1, "gamma1": 1.0})
    bs = block_spectrum(m)
    N = m.dim
    assert bs.l0_eigs.size == 2 * N - 2
    assert bs.cross_eigs.size == N * N - 2 * N + 2


def test_block_spectrum_matches_dense(rng):
    for _ in range(5):
        cfg = random_model_config(rng, gamma2=0.0)
        cfg["l_max"] = 5  # N = 10
        m = build_model(cfg)
        dense = full_spectrum(liouvillian_matrix(m)).eigenvalues
        block = block_spectrum(m).eigenvalues
        assert matched_distance(dense, block) < 1e-8


def test_block_spectrum_rejects_gamma2():
    m = build_model({"l_max": 4, "rabi": 0.25, "gamma1": 1.0, "gamma2": 0.1})
    with pytest.raises(UnsupportedChannelError):
        block_spectrum(m)


def test_block_gap_at_size_sixty():
    m = build_model({"l_max": 30, "rabi": 0.25, "gamma1": 1.0})
    gap = spectrum_from_eigenvalues(block_spectrum(m).eigenvalues).gap
    assert abs(gap - 0.25) < 1e-6


def test_union_theorem_across_patterns():
    for pattern in ("uniform", "sqrt_l", "shifted_inverse_sqrt"):
        m = build_model({"l_max": 6, "omega": 0.05, "rabi_pattern": pattern,
                         "rabi": 0.25, "rabi0": 0.15, "gamma1": 1.0})
        d = decompose_subsystems(effective_hamiltonian(m))
        L0 = build_L0(m, d)
        union = np.concatenate([
            np.linalg.eigvals(sector_diagonal_block(m, d, j))
            for j in range(len(d.blocks))
        ])
        assert matched_distance(np.linalg.eigvals(L0), union) < 1e-8


def test_band_matrix_rejects_bad_parameters():
    m = build_model({"l_max": 4, "rabi": 0.25, "gamma1": 1.0})
    with pytest.raises(UnsupportedParametersError):
        pbc_band_matrix(m, 0.0)
    m = build_model({"l_max": 4, "omega": 0.1, "rabi": 0.25, "gamma1": 1.0,
                     "boundary": "pbc"})
    with pytest.raises(UnsupportedParametersError):
        pbc_band_matrix(m, 0.0)


def test_band_matrix_zero_coupling_triangular():
    m = build_model({"l_max": 4, "rabi": 0.0, "gamma1": 1.0, "boundary": "pbc"})
    for k in pbc_momenta(m):
        evals = np.sort(np.real(pbc_band_matrix(m, k).diagonal()))
        assert np.array_equal(evals, np.array([-1.0, -0.5, -0.5, 0.0]))
        off = np.linalg.eigvals(pbc_band_matrix(m, k))
        assert matched_distance(off, [-1.0, -0.5, -0.5, 0.0]) < 1e-12


def test_band_spectrum_matches_dense_l0():
    m = build_model({"l_max": 6, "rabi": 0.25, "gamma1": 1.0, "boundary": "pbc"})
    dense = np.linalg.eigvals(build_L0(m))
    bands = pbc_band_spectrum(m)
    assert matched_distance(dense, bands) < 1e-8


def test_band_gap_decreases_with_size():
    gaps = []
    for l_max in (4, 8, 16):
        m = build_model({"l_max": l_max, "rabi": 0.25, "gamma1": 1.0,
                         "boundary": "pbc"})
        gaps.append(pbc_gap_from_bands(m))
    assert gaps[0] > gaps[1] > gaps[2]


def test_leading_block_eigenvectors_are_localized():
    # Generic parameters (no degeneracies): eigenvectors of the full dense
    # generator whose eigenvalues come from the leading diagonal blocks are
    # supported on the leading subsystem sectors.
    m = build_model({"l_max": 6, "omega": 0.07, "rabi_pattern": "sqrt_l",
                     "rabi": 0.21, "gamma1": 1.0})
    d = decompose_subsystems(effective_hamiltonian(m))
    spec = full_spectrum(liouvillian_matrix(m), want_vectors=True)
    N = m.dim

    # flat vectorized indices of sector (a, b) for subsystems a, b < j_max
    def sector_indices(j_max):
        members = [i - 1 for j in range(j_max) for i in d.basis_order[j]]
        return [r * N + c for r in members for c in members]

    b1 = np.linalg.eigvals(sector_diagonal_block(m, d, 1))
    leading = sector_indices(2)
    for target in b1:
        i = int(np.argmin(np.abs(spec.eigenvalues - target)))
        assert abs(spec.eigenvalues[i] - target) < 1e-8
        v = spec.right_eigenvectors[:, i]
        inside = np.linalg.norm(v[leading])
        assert inside >= 0.99 * np.linalg.norm(v)
