"""Liouvillian spectra, gaps, steady states and dynamics of a dissipative
two-band ladder, with an exact block decomposition and closed-form gap
expressions for uniform parameters."""

from .blockstruct import (
    BlockSpectrum,
    SubsystemDecomposition,
    block_spectrum,
    build_L0,
    build_Lrs,
    cross_sector_eigs,
    decompose_subsystems,
    diagonal_block_Bl,
    pbc_band_matrix,
    pbc_band_spectrum,
    pbc_gap_from_bands,
)
from .closedform import (
    GapFormulaResult,
    gamma0_optimal,
    gap_max,
    gap_obc,
    gap_obc_omega,
    gap_with_gamma0,
    validate_omega_branch,
)
from .dynamics import (
    DynamicsTrace,
    RateFit,
    evolve_ode,
    evolve_spectral,
    fit_asymptotic_rate,
    observables,
)
from .gapopt import (
    GapSlope,
    GapSurface,
    OptimizeResult,
    gap_derivative_at_zero,
    gap_scan,
    gap_surface,
    maximize_gap_gamma0,
    numeric_gap,
    uniform_gap,
)
from .model import (
    CouplingPattern,
    LadderModel,
    OBC,
    PBC,
    build_model,
    coupling_at,
    index_state,
    state_index,
)
from .operators import (
    JumpOperator,
    basis_state,
    effective_hamiltonian,
    hamiltonian,
    jump_operators,
)
from .spectral import (
    EnclosureReport,
    SpectrumResult,
    full_spectrum,
    liouvillian_gap,
    spectrum_encloses,
    spectrum_from_eigenvalues,
    steady_state,
)
from .superop import (
    SuperOperatorMatrix,
    apply_generator,
    devectorize,
    is_density_matrix,
    liouvillian_matrix,
    trace_preservation_residual,
    vectorize,
)

__version__ = "0.1.0"
