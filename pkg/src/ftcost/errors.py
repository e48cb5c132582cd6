"""Exception types shared across the package."""


class FTCostError(Exception):
    """Base class for all package errors."""


class InvalidParameter(FTCostError, ValueError):
    """An argument lies outside the model's domain."""


class Infeasible(FTCostError):
    """No protocol on the search grid meets the requested target."""


class RetryDivergence(FTCostError):
    """A rejection probability reached 1, so the expected retry cost diverges."""


class UnsupportedMethod(FTCostError):
    """The requested method has no cost model for this operation."""


class ZeroScale(FTCostError):
    """A rotation scale of zero needs no circuit at all."""


class InvariantViolation(FTCostError):
    """An internal consistency check failed."""
