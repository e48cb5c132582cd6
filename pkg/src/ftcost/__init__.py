"""Resource estimates for fault-tolerant logic on the surface code."""

from ftcost.errors import (
    FTCostError,
    Infeasible,
    InvariantViolation,
    RetryDivergence,
    UnsupportedMethod,
    ZeroScale,
)

__version__ = "0.1.0"

__all__ = [
    "FTCostError",
    "Infeasible",
    "InvariantViolation",
    "RetryDivergence",
    "UnsupportedMethod",
    "ZeroScale",
    "__version__",
]
