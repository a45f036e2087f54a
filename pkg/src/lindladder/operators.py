"""Dense N x N operators: Hamiltonian, jump operators, effective Hamiltonian.

The dissipator convention is the canonical one,

    drho/dt = -i[H, rho] + sum_k ( L_k rho L_k^dag - 1/2 {L_k^dag L_k, rho} ),

with jump amplitudes sqrt(rate), so an excited state with total outgoing
rate gamma decays in population as exp(-gamma t) and its coherences as
exp(-gamma t / 2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OutOfRangeError
from .model import EXCITED, GROUND, PBC, LadderModel, state_index

CHANNEL_BACKWARD = "p0"  # |e,l>   -> |g,l+1>, rate gamma0
CHANNEL_PUMP = "p1"      # |e,l>   -> |g,l>,   rate gamma1
CHANNEL_SKIP = "p2"      # |e,l+1> -> |g,l>,   rate gamma2


@dataclass(frozen=True)
class JumpOperator:
    """Single-transition jump operator; matrix has one entry sqrt(rate)."""

    matrix: np.ndarray
    channel: str
    rung: int
    rate: float


def _flat(l: int, sector: str, l_max: int) -> int:
    return state_index(l, sector, l_max) - 1


def hamiltonian(model: LadderModel) -> np.ndarray:
    """Coherent Hamiltonian of the ladder as a dense complex matrix.

    Diagonal entries carry the cumulative rung energies on both sectors;
    off-diagonals couple |e,l> to |g,l+1> with Omega_l, plus the wrap term
    Omega_{l_max} |e,l_max><g,1| + h.c. under PBC.
    """
    N = model.dim
    lm = model.l_max
    H = np.zeros((N, N), dtype=complex)
    energy = model.energy_offsets()
    for l in range(2, lm + 1):
        H[_flat(l, GROUND, lm), _flat(l, GROUND, lm)] = energy[l - 1]
        H[_flat(l, EXCITED, lm), _flat(l, EXCITED, lm)] = energy[l - 1]
    for l in range(1, lm):
        e, g = _flat(l, EXCITED, lm), _flat(l + 1, GROUND, lm)
        H[e, g] = model.rabi[l - 1]
        H[g, e] = model.rabi[l - 1]
    if model.boundary == PBC:
        e, g = _flat(lm, EXCITED, lm), _flat(1, GROUND, lm)
        H[e, g] += model.rabi[lm - 1]
        H[g, e] += model.rabi[lm - 1]
    return H


def jump_operators(model: LadderModel) -> list[JumpOperator]:
    """All jump operators of the model; channels with zero rate are omitted.

    Under PBC the seam variants of the gamma0 and gamma2 jumps are only
    included when model.pbc_wrap_jumps is set (default off: the wrap changes
    the Hamiltonian only).
    """
    N = model.dim
    lm = model.l_max
    out = []

    def add(channel, rate, l_target, l_source, rung):
        mat = np.zeros((N, N), dtype=complex)
        mat[_flat(l_target, GROUND, lm), _flat(l_source, EXCITED, lm)] = np.sqrt(rate)
        out.append(JumpOperator(matrix=mat, channel=channel, rung=rung, rate=rate))

    if model.gamma1 > 0:
        for l in range(1, lm + 1):
            add(CHANNEL_PUMP, model.gamma1, l, l, l)
    if model.gamma0 > 0:
        for l in range(1, lm):
            add(CHANNEL_BACKWARD, model.gamma0, l + 1, l, l)
        if model.boundary == PBC and model.pbc_wrap_jumps:
            add(CHANNEL_BACKWARD, model.gamma0, 1, lm, lm)
    if model.gamma2 > 0:
        for l in range(1, lm):
            add(CHANNEL_SKIP, model.gamma2, l, l + 1, l)
        if model.boundary == PBC and model.pbc_wrap_jumps:
            add(CHANNEL_SKIP, model.gamma2, lm, 1, lm)
    return out


def effective_hamiltonian(model: LadderModel) -> np.ndarray:
    """Non-Hermitian H_eff = H - (i/2) sum_k L_k^dag L_k.

    The anti-Hermitian part is diagonal: each excited state acquires
    -i/2 times its total outgoing rate, assembled from the actual jump list.
    """
    H = hamiltonian(model)
    for op in jump_operators(model):
        H = H - 0.5j * (op.matrix.conj().T @ op.matrix)
    return H


def basis_state(model: LadderModel, l: int, sector: str) -> np.ndarray:
    """Density matrix |sector,l><sector,l| as a dense array."""
    if not 1 <= l <= model.l_max:
        raise OutOfRangeError(f"rung {l} outside 1..{model.l_max}")
    rho = np.zeros((model.dim, model.dim), dtype=complex)
    idx = _flat(l, sector, model.l_max)
    rho[idx, idx] = 1.0
    return rho
