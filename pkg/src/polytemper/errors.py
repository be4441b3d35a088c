"""Exception hierarchy shared by all modules.

The CLI maps each class to a process exit code (see ``cli.main``).
"""


class PolytemperError(Exception):
    """Base class for errors raised by this package."""


class ParameterError(PolytemperError, ValueError):
    """An argument is outside the supported range."""


class PreconditionError(PolytemperError, ValueError):
    """An input violates a documented precondition (e.g. not dominant)."""


class NumericError(PolytemperError, ArithmeticError):
    """A numerical computation failed (singular matrix, no convergence)."""


class InsufficientDataError(NumericError):
    """Too few samples to produce an estimate."""


class ResourceError(PolytemperError, MemoryError):
    """A configured resource cap was exceeded."""


class NotAvailableError(PolytemperError, LookupError):
    """The requested quantity is not shipped for this preset."""
