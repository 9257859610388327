"""Exception hierarchy shared across the package."""


class InfoprocError(Exception):
    """Base class for all package errors."""


class DomainError(InfoprocError, ValueError):
    """An argument is outside the operation's domain."""


class FormatError(InfoprocError, ValueError):
    """An input file does not match its documented format."""


class ResourceError(InfoprocError, RuntimeError):
    """A request exceeds the documented practical resource bound."""


class InternalConsistencyError(InfoprocError, RuntimeError):
    """A computed quantity violates an identity that exact inputs guarantee."""


class DegenerateDistanceError(InfoprocError, ValueError):
    """Duplicate points make nearest-neighbor distances degenerate."""
