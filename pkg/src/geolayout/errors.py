"""Exception hierarchy shared across the package."""


class GeoLayoutError(Exception):
    """Base class for all package errors."""


class InvalidInputError(GeoLayoutError, ValueError):
    """An argument violates a documented precondition or range."""


class NotFoundError(GeoLayoutError, KeyError):
    """A referenced node, session, or file does not exist."""


class GraphInvariantError(GeoLayoutError, ValueError):
    """A graph violates a structural invariant (dangling edge, bad weight, ...)."""


class UndefinedMetricError(GeoLayoutError, ValueError):
    """A metric is mathematically undefined for the given input."""


class DegenerateLayoutError(GeoLayoutError, ValueError):
    """A layout is degenerate (e.g. all nodes coincident, mean edge length 0)."""


class FormatError(GeoLayoutError, ValueError):
    """A document fails to parse or validate; message names the offending element."""


class UnsupportedVersionError(FormatError):
    """A document declares a format version this build cannot read."""


class InvalidSpecError(InvalidInputError):
    """A generator spec is out of range (e.g. more edges than node pairs allow)."""
