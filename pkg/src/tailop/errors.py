"""Exception types shared across the package."""


class TailopError(Exception):
    """Base class for all package errors."""


class DomainError(TailopError, ValueError):
    """An argument lies outside the documented domain."""


class NonSymmetricError(DomainError):
    """Matrix input is not symmetric within tolerance."""


class NotPositiveDefiniteError(DomainError):
    """Symmetric matrix has an eigenvalue at or below the positivity floor."""


class DimensionTooLargeError(DomainError):
    """Requested dimension exceeds the supported bound."""


class MarginMismatchError(TailopError):
    """Transformed sample values fall outside the unit interval."""


class TooFewTailPointsError(TailopError):
    """Too few tail exceedances for a reliable empirical estimate."""
