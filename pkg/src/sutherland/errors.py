"""Exception taxonomy shared across the package.

Every failure mode that callers are expected to branch on gets its own
class; the CLI maps these onto process exit codes.
"""
from __future__ import annotations


class SutherlandError(Exception):
    """Base class for all package-specific errors."""


class AdmissibilityError(SutherlandError):
    """Momentum vector is not weakly decreasing (or has the wrong length)."""


class ResonanceError(SutherlandError):
    """Unperturbed energy coincidence makes the series construction singular.

    Carries the offending mode pair when known.
    """

    def __init__(self, message: str, base=None, partner=None):
        super().__init__(message)
        self.base = base
        self.partner = partner


class ConvergenceError(SutherlandError):
    """A refinement or truncation check failed its tolerance."""


class SingularityError(SutherlandError):
    """Evaluation at a coordinate collision or a zero of the building block."""


class BranchCutError(SutherlandError):
    """Non-integer coupling power of a negative factor is ambiguous."""


class SeriesOrderError(SutherlandError):
    """Arithmetic between truncated series of different recorded orders."""
