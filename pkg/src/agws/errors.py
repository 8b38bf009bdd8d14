"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: falsifications exit 1, precision
problems exit 2, parameter/usage problems exit 3.
"""


class AgwsError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(AgwsError, ValueError):
    """An argument is outside the documented domain."""


class LatticeError(ParameterError):
    """Two exponent lattices cannot be reconciled as requested."""


class PrecisionError(AgwsError):
    """A result cannot be decided at the available precision."""


class NonInvertibleError(PrecisionError):
    """Series is zero to its precision, so it has no inverse."""


class IndeterminatePivotError(PrecisionError):
    """Elimination ran out of precision before it could pick a pivot."""


class InsufficientPrecisionError(PrecisionError):
    """Input precision is below what the operation needs."""


class FalsificationError(AgwsError):
    """An identity that should hold was contradicted by exact computation."""


class NotModularError(FalsificationError):
    """Series is not in the requested space of modular forms."""


class NonIntegralError(FalsificationError):
    """A rational has a denominator divisible by the prime in question."""
