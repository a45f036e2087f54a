"""Ladder model configuration, state indexing, and coupling patterns.

The model is a two-band ladder: each rung l = 1..l_max carries a ground
state |g,l> (flat index n = 2l-1) and an excited state |e,l> (n = 2l), so
the Hilbert dimension is N = 2*l_max.  Rungs are chained by coherent
couplings Omega_l between |e,l> and |g,l+1>, and by three incoherent decay
channels with rates gamma0 (|e,l> -> |g,l+1>), gamma1 (|e,l> -> |g,l>) and
gamma2 (|e,l+1> -> |g,l>).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    LengthMismatchError,
    NegativeRateError,
    NonPositiveSizeError,
    OutOfRangeError,
)

GROUND = "g"
EXCITED = "e"

OBC = "obc"
PBC = "pbc"

_PATTERN_KINDS = ("uniform", "sqrt_l", "shifted_inverse_sqrt", "custom")


@dataclass(frozen=True)
class CouplingPattern:
    """Rule producing the coupling strength Omega_l for each rung l.

    kind is one of:
      - "uniform":              Omega_l = rabi
      - "sqrt_l":               Omega_l = sqrt(l) * rabi
      - "shifted_inverse_sqrt": Omega_l = rabi0 + (rabi - rabi0) / sqrt(l)
      - "custom":               Omega_l = values[l-1]
    """

    kind: str
    rabi: float = 0.0
    rabi0: float = 0.0
    values: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in _PATTERN_KINDS:
            raise ValueError(f"unknown coupling pattern kind {self.kind!r}")
        if self.kind == "custom":
            if not self.values:
                raise LengthMismatchError("custom pattern needs explicit values")
            for v in self.values:
                _check_coupling(v)
        else:
            _check_coupling(self.rabi)
            if self.kind == "shifted_inverse_sqrt":
                _check_coupling(self.rabi0)


def _check_coupling(value) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise NegativeRateError(f"coupling must be finite, got {value}")
    if value < 0:
        raise NegativeRateError(f"coupling must be >= 0, got {value}")
    return value


def coupling_at(pattern: CouplingPattern, l: int) -> float:
    """Evaluate the pattern at rung l (1-based)."""
    if l < 1:
        raise OutOfRangeError(f"rung index must be >= 1, got {l}")
    if pattern.kind == "uniform":
        return pattern.rabi
    if pattern.kind == "sqrt_l":
        return math.sqrt(l) * pattern.rabi
    if pattern.kind == "shifted_inverse_sqrt":
        return pattern.rabi0 + (pattern.rabi - pattern.rabi0) / math.sqrt(l)
    if l > len(pattern.values):
        raise OutOfRangeError(
            f"custom pattern has {len(pattern.values)} values, rung {l} requested"
        )
    return float(pattern.values[l - 1])


@dataclass(frozen=True)
class LadderModel:
    """Validated, fully expanded ladder model.

    omega holds the l_max-1 energy intervals between consecutive rungs.
    rabi holds l_max couplings; entries 1..l_max-1 are the chain couplings
    Omega_l and the last entry is the PBC wrap coupling Omega_{l_max}
    (unused under OBC).  Immutable after construction.
    """

    l_max: int
    omega: tuple[float, ...]
    rabi: tuple[float, ...]
    gamma0: float
    gamma1: float
    gamma2: float
    boundary: str = OBC
    pbc_wrap_jumps: bool = False

    @property
    def dim(self) -> int:
        """Hilbert-space dimension N = 2 * l_max."""
        return 2 * self.l_max

    def energy_offsets(self) -> list[float]:
        """Cumulative rung energies E_l = sum_{j<l} omega_j, E_1 = 0."""
        out = [0.0]
        for w in self.omega:
            out.append(out[-1] + w)
        return out


def state_index(l: int, sector: str, l_max: int) -> int:
    """Flat 1-based index n of |sector,l>: n = 2l-1 for ground, 2l for excited."""
    if not 1 <= l <= l_max:
        raise OutOfRangeError(f"rung {l} outside 1..{l_max}")
    if sector == GROUND:
        return 2 * l - 1
    if sector == EXCITED:
        return 2 * l
    raise ValueError(f"sector must be {GROUND!r} or {EXCITED!r}, got {sector!r}")


def index_state(n: int, l_max: int) -> tuple[int, str]:
    """Inverse of state_index: flat index n -> (rung l, sector)."""
    if not 1 <= n <= 2 * l_max:
        raise OutOfRangeError(f"state index {n} outside 1..{2 * l_max}")
    l, rem = divmod(n + 1, 2)
    return (l, GROUND) if rem == 0 else (l, EXCITED)


def _as_rate(name, value) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError) as exc:
        raise NegativeRateError(f"{name} must be a number, got {value!r}") from exc
    if not math.isfinite(value) or value < 0:
        raise NegativeRateError(f"{name} must be finite and >= 0, got {value}")
    return value


def _pattern_from_config(config: dict) -> CouplingPattern:
    kind = config.get("rabi_pattern", "uniform")
    if kind == "custom":
        values = config.get("rabi_values")
        if values is None:
            raise LengthMismatchError("rabi_pattern=custom requires rabi_values")
        return CouplingPattern(kind="custom", values=tuple(float(v) for v in values))
    return CouplingPattern(
        kind=kind,
        rabi=float(config.get("rabi", 0.0)),
        rabi0=float(config.get("rabi0", 0.0)),
    )


def build_model(config: dict) -> LadderModel:
    """Build and validate a LadderModel from a flat key-value mapping.

    Recognized keys: l_max, omega (scalar or list of length l_max-1),
    rabi_pattern, rabi, rabi0, rabi_values, gamma0, gamma1, gamma2,
    boundary ("obc"/"pbc"), pbc_wrap_jumps, pbc_wrap_rabi (optional
    override for the wrap coupling Omega_{l_max}).
    """
    l_max = int(config.get("l_max", 0))
    if l_max < 2:
        raise NonPositiveSizeError(f"l_max must be >= 2, got {l_max}")

    omega = config.get("omega", 0.0)
    if isinstance(omega, (int, float)):
        omega_list = [float(omega)] * (l_max - 1)
    else:
        omega_list = [float(w) for w in omega]
        if len(omega_list) != l_max - 1:
            raise LengthMismatchError(
                f"omega needs {l_max - 1} entries, got {len(omega_list)}"
            )
    for w in omega_list:
        if not math.isfinite(w):
            raise NegativeRateError(f"omega entries must be finite, got {w}")

    pattern = _pattern_from_config(config)
    if pattern.kind == "custom" and len(pattern.values) not in (l_max - 1, l_max):
        raise LengthMismatchError(
            f"custom rabi pattern needs {l_max - 1} or {l_max} values, "
            f"got {len(pattern.values)}"
        )
    rabi_list = [_check_coupling(coupling_at(pattern, l)) for l in range(1, l_max)]
    # PBC wrap link: same pattern evaluated at l_max unless explicitly overridden.
    wrap = config.get("pbc_wrap_rabi")
    if wrap is not None:
        rabi_list.append(_check_coupling(wrap))
    elif pattern.kind == "custom" and len(pattern.values) == l_max - 1:
        rabi_list.append(rabi_list[-1])
    else:
        rabi_list.append(_check_coupling(coupling_at(pattern, l_max)))

    boundary = str(config.get("boundary", OBC)).lower()
    if boundary not in (OBC, PBC):
        raise ValueError(f"boundary must be 'obc' or 'pbc', got {boundary!r}")

    return LadderModel(
        l_max=l_max,
        omega=tuple(omega_list),
        rabi=tuple(rabi_list),
        gamma0=_as_rate("gamma0", config.get("gamma0", 0.0)),
        gamma1=_as_rate("gamma1", config.get("gamma1", 0.0)),
        gamma2=_as_rate("gamma2", config.get("gamma2", 0.0)),
        boundary=boundary,
        pbc_wrap_jumps=bool(config.get("pbc_wrap_jumps", False)),
    )
