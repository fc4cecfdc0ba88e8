"""Exception types shared across the package."""


class SixVertexError(Exception):
    """Base class for all errors raised by this package."""


class ParameterDomainError(SixVertexError, ValueError):
    """A parameter lies outside the domain of the requested operation.

    The message names the violated inequality.
    """


class PrecisionFailureError(SixVertexError, ArithmeticError):
    """Self-verification at raised precision disagreed with the base run.

    Rerun the computation with more mantissa bits.
    """
