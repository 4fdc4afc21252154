"""Custom exception hierarchy for patchsurvival.

This module defines all custom exceptions used throughout the patchsurvival
codebase. Every error a caller can act on derives from PatchSurvivalError, so
the CLI can map the whole family to a single exit status.
"""

from typing import Any, Sequence, Tuple


class PatchSurvivalError(Exception):
    """Base exception for all patchsurvival errors.

    All custom exceptions in the package inherit from this base class. This
    allows catching every patchsurvival-specific error with a single except
    clause if needed.
    """

    pass


class DomainError(PatchSurvivalError, ValueError):
    """Raised when an argument lies outside its mathematical domain.

    This includes:
    - Non-positive arguments to the Beta function
    - Negative shape parameters
    - Evaluation points outside the habitat
    - Non-positive physical parameters
    """

    pass


class ConvergenceError(PatchSurvivalError):
    """Raised when the gamma(alpha) bracket search exceeds its cap."""

    pass


class UnsupportedRegimeError(PatchSurvivalError):
    """Raised when an operation is called outside conditional persistence.

    Threshold operations need mu >= nu; some need mu > nu strictly.
    """

    pass


class DegenerateCaseError(PatchSurvivalError):
    """Raised for mu = nu + 2, where the habitat size drops out of Q."""

    pass


class SingularSystemError(PatchSurvivalError):
    """Raised when the tridiagonal elimination meets a zero pivot."""

    pass


class StabilityError(PatchSurvivalError):
    """Raised when a step produces a density below the stability threshold."""

    pass


class ConfigurationError(PatchSurvivalError):
    """Raised when configuration is invalid or cannot be loaded.

    This includes:
    - Grids with too few intervals or non-positive steps
    - Scan configurations that cannot reach zero
    - Conflicting CLI parameter modes
    - Configuration values out of valid range
    """

    pass


class ScanError(PatchSurvivalError):
    """
    Base class for failures of the descending threshold scans.

    Attributes:
        trace: (value, outcome) of every run made before the failure
    """

    def __init__(self, message: str, trace: Sequence[Tuple[float, Any]] = ()) -> None:
        super().__init__(message)
        self.trace = tuple(trace)


class BadStartError(ScanError):
    """Raised when the scan start does not lead to growth."""

    pass


class ScanExhaustedError(ScanError):
    """Raised when a scan runs out of iterations without an extinction."""

    pass


class MonotonicityError(ScanError):
    """Raised when a scan trace shows survival that is not monotone."""

    pass
