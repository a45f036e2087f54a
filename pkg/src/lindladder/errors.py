"""Exception types raised by the lindladder package."""


class LindladderError(Exception):
    """Base class for all package-specific errors."""


class NonPositiveSizeError(LindladderError, ValueError):
    """Ladder size l_max must be at least 2."""


class NegativeRateError(LindladderError, ValueError):
    """Decay rates and couplings must be nonnegative."""


class LengthMismatchError(LindladderError, ValueError):
    """A per-rung list has the wrong length."""


class OutOfRangeError(LindladderError, IndexError):
    """Rung or state index outside 1..l_max / 1..N."""


class DimensionMismatchError(LindladderError, ValueError):
    """Vector or matrix dimensions are inconsistent."""


class UnsupportedChannelError(LindladderError, ValueError):
    """The block fast path does not cover this dissipation channel."""


class InvalidSectorPairError(LindladderError, ValueError):
    """Cross-sector blocks require two distinct subsystems."""


class UnsupportedParametersError(LindladderError, ValueError):
    """Operation restricted to uniform parameters / a specific regime."""


class SolverFailureError(LindladderError, RuntimeError):
    """A dense eigensolver did not converge."""


class DimensionTooLargeError(LindladderError, ValueError):
    """Dense superoperator work is capped at N <= 32 unless overridden."""


class EmptySpectrumError(LindladderError, ValueError):
    """Gap extraction requires a nonempty spectrum."""


class DegenerateSteadySpaceError(LindladderError, RuntimeError):
    """Steady space has dimension > 1; carries an orthonormal basis."""

    def __init__(self, message, basis=None):
        super().__init__(message)
        self.basis = basis if basis is not None else []
        self.dimension = len(self.basis)


class DegenerateLoopError(LindladderError, ValueError):
    """PBC eigenvalues are collinear; no enclosing loop exists."""


class IllConditionedBasisError(LindladderError, RuntimeError):
    """Eigenbasis too ill-conditioned for spectral time evolution."""


class StepSizeUnderflowError(LindladderError, RuntimeError):
    """The adaptive integrator failed to advance."""


class WindowNotReachedError(LindladderError, RuntimeError):
    """The decay series never entered the asymptotic fit window."""


class BranchUnresolvedError(LindladderError, RuntimeError):
    """Square-root branch validation against the numeric gap failed."""
