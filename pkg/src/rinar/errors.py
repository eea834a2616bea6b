"""Exception types shared across the package."""


class RinarError(ValueError):
    """Base class for errors raised by this package."""


class DegenerateSeriesError(RinarError):
    """The series has zero variance, or an autocorrelation recursion collapsed."""


class SingularSystemError(RinarError):
    """A linear system is numerically singular (near-zero pivot)."""


class InsufficientDataError(RinarError):
    """The series is too short for the requested operation."""


class NonStationaryError(RinarError):
    """Coefficients violate the sum(|alpha_j|) < 1 stationarity condition."""


class ParseError(RinarError):
    """A file or literal could not be parsed."""
