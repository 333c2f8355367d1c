"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, DataError -> 3,
InsufficientStatisticsError -> 4.
"""


class VolintError(Exception):
    """Base class for package errors."""


class ConfigError(VolintError):
    """Invalid parameter values or flag combinations."""


class DataError(VolintError):
    """Unreadable, malformed, or otherwise unusable input data."""


class DegenerateSeriesError(DataError):
    """Series too short or with zero variance for the requested statistic."""


class InsufficientStatisticsError(VolintError):
    """Not enough samples to produce the requested estimate."""


class InsufficientTailError(InsufficientStatisticsError):
    """Fewer usable tail bins than the fit requires."""


class FitShapeError(DataError):
    """Data incompatible with the requested fit shape (e.g. non-decaying)."""
