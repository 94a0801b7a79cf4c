"""Exception hierarchy shared by all intervaldyn modules."""


class IntervalDynError(Exception):
    """Base class for all library errors."""


class DomainError(IntervalDynError):
    """An argument lies outside the domain where an operation is defined."""


class ParameterError(IntervalDynError):
    """A descriptor or operation was constructed with invalid parameters."""


class RangeError(IntervalDynError):
    """An iteration count or depth exceeds its documented cap."""


class ImaginaryResidueError(IntervalDynError):
    """A nominally real result retained a non-negligible imaginary part."""


class EmptySampleError(IntervalDynError):
    """A statistic was requested over an empty sample."""


class UsageError(IntervalDynError):
    """Bad command-line arguments (exit code 2 in the CLI)."""
