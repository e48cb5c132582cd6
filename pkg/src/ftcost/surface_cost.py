"""Surface-code cost primitives.

Every estimate in the package is expressed in unit cells. A plumbing piece is a
cube of side ``d + ceil(d/4)`` unit cells, and the logical error of one piece is
modelled by the closed-form fit

    P_L(p_g, d) = d * (100 p_g) ** ((d + 1) / 2)

which suppresses errors only while ``100 p_g < 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ftcost._validation import check_positive_int, check_probability
from ftcost.errors import Infeasible, InvalidParameter

#: Odd code distances searched by every optimizer.
DISTANCE_GRID: tuple[int, ...] = tuple(range(3, 256, 2))


@dataclass(frozen=True)
class SurfaceParams:
    """Physical gate error ``p_g`` and code distance ``d``."""

    p_g: float
    d: int

    def __post_init__(self):
        check_probability(self.p_g, "p_g")
        check_positive_int(self.d, "d")

    @property
    def suppressing(self) -> bool:
        """True when larger distances give smaller logical error."""
        return 100.0 * self.p_g < 1.0


@dataclass(frozen=True)
class Volume:
    """Space-time volume, optionally with its plumbing-piece count at one distance."""

    unit_cells: float
    plumbing_pieces: float | None = None
    d: int | None = None

    def __post_init__(self):
        if self.unit_cells < 0 or (self.plumbing_pieces is not None and self.plumbing_pieces < 0):
            raise InvalidParameter("volumes must be non-negative")

    @classmethod
    def from_pieces(cls, pieces: float, d: int) -> "Volume":
        return cls(pieces_to_cells(pieces, d), float(pieces), d)

    def __add__(self, other: "Volume") -> "Volume":
        if not isinstance(other, Volume):
            return NotImplemented
        same_d = self.d == other.d and self.plumbing_pieces is not None and other.plumbing_pieces is not None
        pieces = self.plumbing_pieces + other.plumbing_pieces if same_d else None
        return Volume(self.unit_cells + other.unit_cells, pieces, self.d if same_d else None)


def logical_error_per_piece(p: SurfaceParams) -> float:
    """Logical error probability of one plumbing piece."""
    return p.d * (100.0 * p.p_g) ** ((p.d + 1) / 2)


def piece_error(p_g: float, d: int) -> float:
    """Shorthand for ``logical_error_per_piece(SurfaceParams(p_g, d))``."""
    return logical_error_per_piece(SurfaceParams(p_g, d))


def piece_side(d: int) -> int:
    """Side length of a plumbing piece in unit cells."""
    check_positive_int(d, "d")
    return d + math.ceil(d / 4)


def piece_cells(d: int) -> int:
    """Unit cells in one plumbing piece."""
    return piece_side(d) ** 3


def pieces_to_cells(pieces: float, d: int) -> float:
    return pieces * piece_cells(d)


def compressed_error_per_piece(p_g: float, d1: int, d2: int) -> float:
    """Error per piece of the compressed code, where primal defects sit ``d2 <= d1`` apart.

    Only Z errors matter here, hence the factor 1/3 relative to the uncompressed fit.
    """
    check_probability(p_g, "p_g")
    check_positive_int(d1, "d1")
    check_positive_int(d2, "d2")
    if d2 > d1:
        raise InvalidParameter(f"d2={d2} exceeds d1={d1}")
    if 100.0 * p_g >= 1.0:
        raise InvalidParameter("compressed model requires 100*p_g < 1")
    return (d1 / 3.0) * (100.0 * p_g) ** ((d2 + 1) / 2)


def min_distance_for(p_g: float, pieces: float, budget: float, grid=DISTANCE_GRID) -> int:
    """Smallest grid distance with ``pieces * P_L(p_g, d) <= budget``."""
    check_probability(p_g, "p_g")
    check_probability(budget, "budget", allow_one=True)
    if 100.0 * p_g >= 1.0:
        raise InvalidParameter("distance search requires 100*p_g < 1")
    if pieces <= 0:
        raise InvalidParameter("pieces must be positive")
    for d in grid:
        if pieces * piece_error(p_g, d) <= budget:
            return d
    raise Infeasible(f"no distance up to {grid[-1]} keeps {pieces} pieces under {budget:g}")


def plumbing_curve(p_g: float, grid=DISTANCE_GRID) -> list[tuple[float, float]]:
    """``(P_L(d), side(d)**3)`` for every grid distance, i.e. the cost of one piece."""
    return [(piece_error(p_g, d), float(piece_cells(d))) for d in grid]
