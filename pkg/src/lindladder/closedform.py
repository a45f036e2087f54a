"""Analytic gap formulas for uniform parameters under open boundaries.

Each formula is validated against the numeric block-path gap; the
square-root branch of the finite-omega formula and the validity region of
the gamma0 formula were fixed numerically (see the individual docstrings)
and are re-checked by validate_omega_branch / the test suite.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import BranchUnresolvedError
from .gapopt import uniform_gap

BRANCH_SQRT = "sqrt"          # gap from the dark-cross square-root mode
BRANCH_PLATEAU = "plateau"    # gap saturated at (gamma0 + gamma1)/4
BRANCH_CUBIC = "cubic"        # gap from the real root of the pair-block cubic
BRANCH_ZERO_RATE = "zero"     # boundary case gamma0* = 0
BRANCH_LINEAR = "linear"      # gamma0* = 4 rabi - gamma1


@dataclass(frozen=True)
class GapFormulaResult:
    """Closed-form value together with the piecewise branch that fired."""

    value: float
    branch: str
    inputs: dict


def gap_obc(rabi: float, gamma1: float) -> GapFormulaResult:
    """Gap for gamma0 = 0, omega = 0.

    (gamma1 - sqrt(gamma1^2 - 16 rabi^2))/4 below rabi/gamma1 = 1/4, then
    saturated at gamma1/4.
    """
    inputs = {"rabi": rabi, "gamma1": gamma1}
    if gamma1 > 0 and rabi / gamma1 < 0.25:
        value = (gamma1 - np.sqrt(gamma1**2 - 16 * rabi**2)) / 4
        return GapFormulaResult(value=float(value), branch=BRANCH_SQRT, inputs=inputs)
    return GapFormulaResult(value=gamma1 / 4, branch=BRANCH_PLATEAU, inputs=inputs)


def gap_obc_omega(rabi: float, gamma1: float, omega: float) -> GapFormulaResult:
    """Gap for gamma0 = 0 with a uniform energy interval omega.

    Evaluates (gamma1 - |Re sqrt(gamma1^2 - 4 omega^2 - 4i omega gamma1
    - 16 rabi^2)|) / 4.  The absolute real part of the principal root is
    the branch functional that reproduces the numeric gap and reduces to
    gap_obc at omega = 0; reading the root's imaginary part instead does
    neither.  Monotonically nonincreasing in omega.
    """
    radicand = complex(
        gamma1**2 - 4 * omega**2 - 16 * rabi**2, -4 * omega * gamma1
    )
    value = (gamma1 - abs(cmath.sqrt(radicand).real)) / 4
    return GapFormulaResult(
        value=float(value),
        branch="abs_re_sqrt",
        inputs={"rabi": rabi, "gamma1": gamma1, "omega": omega},
    )


def validate_omega_branch(gamma1: float = 1.0,
                          rabi_grid=(0.05, 0.1, 0.15, 0.2, 0.25),
                          omega_grid=(0.0, 0.1, 0.3, 0.6, 1.0),
                          tol: float = 1e-6) -> float:
    """Check the frozen branch choice against the numeric gap on a grid.

    Returns the maximum absolute deviation; raises BranchUnresolvedError
    if it exceeds tol anywhere.
    """
    worst = 0.0
    for rb in rabi_grid:
        for om in omega_grid:
            ref = uniform_gap(rb, 0.0, gamma1, om)
            val = gap_obc_omega(rb, gamma1, om).value
            worst = max(worst, abs(ref - val))
    if worst > tol:
        raise BranchUnresolvedError(
            f"omega-branch validation failed: max deviation {worst:.3e} > {tol:g}"
        )
    return worst


def gap_with_gamma0(rabi: float, gamma0: float, gamma1: float) -> GapFormulaResult:
    """Gap for omega = 0 with both decay channels active.

    Three-branch piecewise expression; the cubic branch is the magnitude of
    the slowest real root of the pair-block cubic, written in Cardano form.
    One radicand symbol is printed with the wrong channel index in the
    source expression and is evaluated with gamma1 (both occurrences then
    agree, and the numeric gap confirms).  Validity: the sqrt-branch
    condition admits a thin sliver near rabi/gamma1 = 1/4 and a region of
    large gamma0 (roughly gamma0 > 0.5 gamma1 at small rabi) where the
    cubic mode is slower than the value returned here; see the test suite
    for the validated grid.
    """
    inputs = {"rabi": rabi, "gamma0": gamma0, "gamma1": gamma1}
    g = gamma0 + gamma1
    if 4 * rabi < g and (
        527 * gamma0**2 + 575 * gamma1**2 + 1166 * gamma0 * gamma1 > 9216 * rabi**2
    ):
        value = (g - np.sqrt(g**2 - 16 * rabi**2)) / 4
        return GapFormulaResult(value=float(value), branch=BRANCH_SQRT, inputs=inputs)
    if 4 * rabi >= g and 64 * rabi**2 * (gamma1 - gamma0) > 3 * g**3:
        return GapFormulaResult(value=g / 4, branch=BRANCH_PLATEAU, inputs=inputs)
    inner = 46656 * gamma0**2 * rabi**4 + (
        -3 * gamma0**2 - 3 * gamma1**2 - 6 * gamma0 * gamma1 + 48 * rabi**2
    ) ** 3
    t = (72 * gamma0 * rabi**2 + cmath.sqrt(inner) / 3) ** (1.0 / 3.0)
    value = (
        g / 2
        - t / (2 * 3 ** (2.0 / 3.0))
        - (gamma0**2 + gamma1**2 + 2 * gamma0 * gamma1 - 16 * rabi**2)
        / (2 * 3 ** (1.0 / 3.0) * t)
    )
    if abs(value.imag) > 1e-9 * max(1.0, abs(value)):
        raise BranchUnresolvedError(
            f"cubic branch produced a non-real value {value!r}"
        )
    return GapFormulaResult(value=float(value.real), branch=BRANCH_CUBIC, inputs=inputs)


def gamma0_optimal(rabi: float, gamma1: float) -> GapFormulaResult:
    """Backward-channel rate that maximizes the gap at omega = 0."""
    inputs = {"rabi": rabi, "gamma1": gamma1}
    if 4 * rabi < gamma1:
        return GapFormulaResult(value=0.0, branch=BRANCH_ZERO_RATE, inputs=inputs)
    if gamma1 >= 3.5 * rabi:
        return GapFormulaResult(
            value=float(4 * rabi - gamma1), branch=BRANCH_LINEAR, inputs=inputs
        )
    t = (np.sqrt(81 * gamma1**2 * rabi**4 + 64 * rabi**6) - 9 * gamma1 * rabi**2) ** (
        1.0 / 3.0
    )
    value = -4.0 / 3.0 * t + 16 * rabi**2 / (3 * t) - gamma1
    return GapFormulaResult(value=float(value), branch=BRANCH_CUBIC, inputs=inputs)


def gap_max(rabi: float, gamma1: float) -> GapFormulaResult:
    """Maximum gap over gamma0 at omega = 0; tends to gamma1/2 as rabi grows."""
    inputs = {"rabi": rabi, "gamma1": gamma1}
    if 4 * rabi < gamma1:
        value = (gamma1 - np.sqrt(gamma1**2 - 16 * rabi**2)) / 4
        return GapFormulaResult(value=float(value), branch=BRANCH_SQRT, inputs=inputs)
    if gamma1 >= 3.5 * rabi:
        return GapFormulaResult(value=float(rabi), branch=BRANCH_LINEAR, inputs=inputs)
    t = (np.sqrt(81 * gamma1**2 * rabi**4 + 64 * rabi**6) - 9 * gamma1 * rabi**2) ** (
        1.0 / 3.0
    )
    value = -t / 3.0 + 4 * rabi**2 / (3 * t)
    return GapFormulaResult(value=float(value), branch=BRANCH_CUBIC, inputs=inputs)
