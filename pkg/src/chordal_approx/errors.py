"""Exception types shared across the package."""


class ChordalApproxError(Exception):
    """Base class for all library errors."""


class ValidationError(ChordalApproxError):
    """An input violates a documented precondition or invariant."""


class MembershipError(ChordalApproxError):
    """The target function is outside the class the construction supports.

    Carries the membership report (when available) as ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ApproximationError(ChordalApproxError):
    """A construction failed to produce a verified approximant."""


class DilationSearchError(ApproximationError):
    """No dilation radius in the search schedule passed the grid check."""


class DegreeCapError(ApproximationError):
    """The required truncation degree exceeds the configured cap."""

    def __init__(self, message, required=None, cap=None, separation=None):
        super().__init__(message)
        self.required = required
        self.cap = cap
        self.separation = separation


class PoleSampleError(ChordalApproxError):
    """A quadrature or sampling node landed on (or too near) a pole."""


class AllSamplesExceedError(ChordalApproxError):
    """Every sample lies beyond the clipping threshold.

    Signals that the constant-infinity fast path applies instead of clipping.
    """
