"""Exception types shared across the package."""


class GdaLexError(Exception):
    """Base class for all package-specific errors."""


class InputError(GdaLexError, ValueError):
    """Invalid argument: out-of-range vertex, malformed spec, bad sequence."""


class PreconditionError(GdaLexError):
    """A documented precondition of an operation does not hold."""


class UnsupportedSizeError(GdaLexError):
    """Instance exceeds the hard size caps of an exact solver."""


class InfeasibleError(GdaLexError):
    """No feasible part sequence exists for the requested parameters."""
