"""Exception types raised by the revolve_fractals library."""


class RevolveError(Exception):
    """Base class for every library error."""


class InvalidArgumentError(RevolveError, ValueError):
    """An argument is outside the domain of an operation."""


class ConditionViolationError(RevolveError, ValueError):
    """A digit string breaks its revolving condition."""


class NonTerminationError(RevolveError, RuntimeError):
    """An iterative procedure exceeded its step cap."""
