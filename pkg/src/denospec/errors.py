"""Exception types shared across the package."""


class InvalidDimensionError(ValueError):
    """Raised for Hilbert-space dimensions the constructors do not support."""


class InvalidLocalityError(ValueError):
    """Raised when a Pauli-weight cutoff is outside [1, L]."""


class ShapeMismatchError(ValueError):
    """Raised when a coupling matrix and an operator basis disagree in size."""


class NonUnitaryError(ValueError):
    """Raised when a matrix expected to be unitary fails the unitarity check."""


class ScalingFailureError(ArithmeticError):
    """Raised when a matrix exponential overflows (non-finite entries)."""


class NonInvertibleChannelError(RuntimeError):
    """Channel is numerically singular; denoiser is undefined.

    Carries the reciprocal-condition estimate that triggered the failure.
    """

    def __init__(self, message, condition_estimate=None):
        super().__init__(message)
        self.condition_estimate = condition_estimate


class EigensolverError(RuntimeError):
    """Eigendecomposition failed to converge; carries condition diagnostics."""

    def __init__(self, message, condition_estimate=None):
        super().__init__(message)
        self.condition_estimate = condition_estimate


class BinningError(ValueError):
    """Angular binning of a spectral cloud left one or more bins empty."""


class DegenerateInputError(ValueError):
    """Input too small or degenerate for the requested statistic."""
