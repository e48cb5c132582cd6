import math
from numbers import Integral, Real

from ftcost.errors import InvalidParameter


def check_probability(value, name: str, *, allow_zero: bool = False, allow_one: bool = False) -> float:
    """Return ``value`` as a float after checking it lies in the unit interval."""
    if isinstance(value, bool) or not isinstance(value, Real):
        raise InvalidParameter(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if math.isnan(value):
        raise InvalidParameter(f"{name} is NaN")
    lo_ok = value >= 0.0 if allow_zero else value > 0.0
    hi_ok = value <= 1.0 if allow_one else value < 1.0
    if not (lo_ok and hi_ok):
        raise InvalidParameter(f"{name}={value} is outside the allowed probability range")
    return value


def check_positive_int(value, name: str, *, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise InvalidParameter(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise InvalidParameter(f"{name}={value} must be >= {minimum}")
    return int(value)
