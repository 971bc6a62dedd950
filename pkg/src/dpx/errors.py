"""Exception types shared across the package."""


class DpxError(Exception):
    """Base class for all errors raised by dpx."""


class DimensionError(DpxError, ValueError):
    """Two divisor classes live on surfaces with different numbers of points."""


class CapacityError(DpxError):
    """A computation would exceed its configured size or memory budget."""


class GenericityError(DpxError):
    """A point configuration fails to realize the expected section dimensions."""


class ConsistencyError(DpxError):
    """Two independent routes to the same quantity disagree."""
