"""Exception types raised across the library."""


class CopstatError(ValueError):
    """Base class for all validation and domain errors."""


class InvalidInput(CopstatError):
    """Raised on malformed data: NaN/Inf values, too few rows, ragged columns."""


class DegenerateMarginal(CopstatError):
    """Raised when a column is constant and rank transforms are meaningless."""


class DimensionMismatch(CopstatError):
    """Raised when a point or sample has the wrong number of coordinates."""


class BoundsViolated(CopstatError):
    """Raised when a copula value falls outside the Frechet-Hoeffding bounds
    beyond the allowed tolerance."""


class InvalidParam(CopstatError):
    """Raised on out-of-range generator or copula parameters."""


class InvalidGrid(CopstatError):
    """Raised when a calibration grid or trial count is unusable."""


class EmptyEdgeList(CopstatError):
    """Raised when network scoring is given no reference edges."""
