"""Efficient frontiers over (error, volume) points and log-log power-law fits."""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.linear_model import LinearRegression
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from ftcost.errors import InvalidParameter

#: Range of log10(1/p_out) used whenever a fit is compared with a reference exponent.
FIT_RANGE: tuple[float, float] = (4.0, 15.0)


@dataclass(frozen=True, order=False)
class ProtocolPoint:
    """One protocol: achieved error, total volume in unit cells and a descriptor.

    ``family`` names the protocol and ``params`` holds its parameters as a tuple of
    ``(name, value)`` pairs so that points stay hashable and sort deterministically.
    """

    p_out: float
    volume: float
    family: str
    params: tuple = field(default=())

    @property
    def descriptor(self) -> dict:
        return {"family": self.family, **dict(self.params)}

    def param(self, name, default=None):
        return dict(self.params).get(name, default)

    def sort_key(self):
        return (self.p_out, self.volume, self.family, repr(self.params))


def efficient_frontier(points: Iterable[ProtocolPoint]) -> list[ProtocolPoint]:
    """Dominance-free subset, ordered by decreasing ``p_out`` and increasing volume.

    Among points with equal error the smaller volume wins; among exact duplicates the
    first by descriptor order is kept.
    """
    pts = sorted(points, key=ProtocolPoint.sort_key)
    if not pts:
        raise InvalidParameter("efficient_frontier needs at least one point")
    kept = []
    best_volume = float("inf")
    for pt in pts:
        if pt.volume < best_volume:
            kept.append(pt)
            best_volume = pt.volume
    kept.reverse()
    return kept


def is_dominance_free(frontier: Sequence[ProtocolPoint]) -> bool:
    return all(
        a.p_out > b.p_out and a.volume < b.volume for a, b in zip(frontier, frontier[1:])
    )


def cheapest_meeting(frontier: Sequence[ProtocolPoint], target: float) -> ProtocolPoint | None:
    """Cheapest frontier point with ``p_out <= target``, or None.

    ``frontier`` must come from :func:`efficient_frontier`.
    """
    # p_out is decreasing along the frontier, so search on the negated key
    keys = [-pt.p_out for pt in frontier]
    i = bisect.bisect_left(keys, -target)
    return frontier[i] if i < len(frontier) else None


def cost_curve(
    frontier: Sequence[ProtocolPoint],
    fit_range: tuple[float, float] = FIT_RANGE,
    step: float = 0.1,
) -> list[tuple[float, float]]:
    """Sample the minimal volume needed for targets ``10**-x`` across ``fit_range``.

    Returns ``(x, volume)`` pairs, skipping targets that no point meets.
    """
    lo, hi = fit_range
    xs = np.round(np.arange(lo, hi + step / 2, step), 10)
    out = []
    for x in xs:
        pt = cheapest_meeting(frontier, 10.0 ** (-x))
        if pt is not None and pt.volume > 0:
            out.append((float(x), pt.volume))
    return out


def in_fit_range(x: float, fit_range: tuple[float, float] = FIT_RANGE) -> bool:
    return fit_range[0] <= x <= fit_range[1]


class PowerLawRegressor(RegressorMixin, BaseEstimator):
    """Least-squares fit of ``y = coefficient * x**exponent`` in log-log space.

    Parameters
    ----------
    fit_range : tuple or None
        When given, only samples with ``fit_range[0] <= x <= fit_range[1]`` are used.
    """

    def __init__(self, fit_range=None):
        self.fit_range = fit_range

    def fit(self, X, y):
        X, y = check_X_y(X, y, ensure_min_samples=2)
        if X.shape[1] != 1:
            raise InvalidParameter("PowerLawRegressor expects a single feature")
        x = X[:, 0]
        mask = np.ones_like(x, dtype=bool)
        if self.fit_range is not None:
            mask = (x >= self.fit_range[0]) & (x <= self.fit_range[1])
        x, y = x[mask], y[mask]
        if x.size < 2 or np.any(x <= 0) or np.any(y <= 0):
            raise InvalidParameter("power-law fit needs at least two positive samples")
        if np.ptp(x) == 0:
            raise InvalidParameter("power-law fit is degenerate: all x are equal")
        lx, ly = np.log(x)[:, None], np.log(y)
        self.linear_ = LinearRegression().fit(lx, ly)
        self.exponent_ = float(self.linear_.coef_[0])
        self.coefficient_ = float(np.exp(self.linear_.intercept_))
        self.residual_norm_ = float(np.linalg.norm(self.linear_.predict(lx) - ly))
        self.n_samples_fit_ = int(x.size)
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "linear_")
        X = check_array(X)
        return self.coefficient_ * X[:, 0] ** self.exponent_


def power_law_fit(points: Sequence[tuple[float, float]], fit_range=None) -> tuple[float, float]:
    """Return ``(coefficient, exponent)`` for ``y = coefficient * x**exponent``."""
    if len(points) < 3:
        raise InvalidParameter("power_law_fit needs at least 3 points")
    arr = np.asarray(points, dtype=float)
    model = PowerLawRegressor(fit_range=fit_range).fit(arr[:, :1], arr[:, 1])
    return model.coefficient_, model.exponent_
