"""Toffoli constructions and their joint optimization with T-gate distillation.

Four designs are modelled. Each consumes a fixed number of T gates and occupies a
fixed number of plumbing pieces:

    SevenT  7 T,  154 pieces        p = 7 p_T + 154 P_L
    FourT   4 T,  126 pieces        p = 4 p_T + 126 P_L
    D2      8 T,  144 pieces        p = 28 p_T^2 + 144 P_L,  rejected w.p. 8 p_T
    C4C6   48 T,  263.2 + 556.8 r   see c4c6_error

Rejected attempts are discarded whole, so the retry multiplier ``1/(1 - p_fail)``
scales both the design volume and the T gates it consumed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from ftcost._validation import check_probability
from ftcost.analysis import ProtocolPoint, efficient_frontier
from ftcost.distillation import PRINTED_MODEL, BKModel, t_supply as default_t_supply
from ftcost.errors import Infeasible, InvalidParameter, RetryDivergence
from ftcost.surface_cost import (
    DISTANCE_GRID,
    SurfaceParams,
    compressed_error_per_piece,
    logical_error_per_piece,
    piece_cells,
    piece_error,
)

R_GRID: tuple[float, ...] = tuple(round(0.50 + 0.05 * i, 2) for i in range(11))


class Variant(str, enum.Enum):
    SevenT = "7t"
    FourT = "4t"
    D2 = "d2"
    C4C6 = "c4c6"


T_COUNT = {Variant.SevenT: 7, Variant.FourT: 4, Variant.D2: 8, Variant.C4C6: 48}
BASE_PIECES = {Variant.SevenT: 154.0, Variant.FourT: 126.0, Variant.D2: 144.0}


def c4c6_volume_components(r: float) -> tuple[float, float, float]:
    """Plumbing pieces of the initial, each middle, and the measurement stage."""
    return 40.8 + 115.2 * r, 79.2 + 172.8 * r, 64.0 + 96.0 * r


def c4c6_volume(r: float) -> float:
    """Total plumbing pieces, 263.2 + 556.8 r."""
    init, mid, meas = c4c6_volume_components(r)
    return init + 2 * mid + meas


def compressed_distance(r: float, d1: int, grid: Sequence[int] = DISTANCE_GRID) -> int:
    """Grid distance nearest to ``r*d1`` that does not exceed ``d1`` (ties go down)."""
    if not 0 < r <= 1:
        raise InvalidParameter(f"compression ratio r={r} must lie in (0, 1]")
    allowed = [d for d in grid if d <= d1] or [min(grid)]
    return min(allowed, key=lambda d: (abs(d - r * d1), d))


@dataclass(frozen=True)
class ToffoliDesign:
    variant: Variant
    d1: int
    r: float | None = None
    d2: int | None = None

    @property
    def t_count(self) -> int:
        return T_COUNT[self.variant]

    @property
    def base_pieces(self) -> float:
        if self.variant is Variant.C4C6:
            return c4c6_volume(self.r)
        return BASE_PIECES[self.variant]


@dataclass(frozen=True)
class ToffoliQuote:
    p_out: float
    volume: float
    design: ToffoliDesign
    t_gate_point: ProtocolPoint
    p_fail: float = 0.0

    def as_point(self) -> ProtocolPoint:
        params = [("variant", self.design.variant.value), ("d1", self.design.d1)]
        if self.design.variant is Variant.C4C6:
            params += [("r", self.design.r), ("d2", self.design.d2)]
        params += [("p_T", self.t_gate_point.p_out), ("t_family", self.t_gate_point.family)]
        return ProtocolPoint(self.p_out, self.volume, "toffoli", tuple(params))


def seven_t_error(p_T: float, p: SurfaceParams) -> float:
    check_probability(p_T, "p_T", allow_zero=True)
    return 7.0 * p_T + 154.0 * logical_error_per_piece(p)


def four_t_error(p_T: float, p: SurfaceParams) -> float:
    """Error bound of the 4T design; values above 1 signal a meaningless regime."""
    check_probability(p_T, "p_T", allow_zero=True)
    return 4.0 * p_T + 126.0 * logical_error_per_piece(p)


def d2_error(p_T: float, p: SurfaceParams) -> tuple[float, float]:
    """``(p_out, p_fail)`` of the distance-2 verified design."""
    check_probability(p_T, "p_T", allow_zero=True)
    if 8.0 * p_T >= 1.0:
        raise RetryDivergence(f"D2 rejection probability 8*{p_T:g} >= 1")
    return 28.0 * p_T**2 + 144.0 * logical_error_per_piece(p), 8.0 * p_T


def c4c6_error(p_T: float, p_g: float, d1: int, r: float) -> tuple[float, float, float]:
    """``(p_out, p_fail, volume_pieces)`` of the C4/C6 design at compression ``r``."""
    check_probability(p_T, "p_T", allow_zero=True)
    if 48.0 * p_T >= 1.0:
        raise RetryDivergence(f"C4C6 rejection probability 48*{p_T:g} >= 1")
    d2 = compressed_distance(r, d1)
    plc = 13.0 * compressed_error_per_piece(p_g, d1, d2)
    volume = c4c6_volume(r)
    p_out = (
        2.0 * (27.0 * plc**2 + 288.0 * p_T**2 * plc)
        + volume * piece_error(p_g, d1)
        + 3600.0 * p_T**4
    )
    return p_out, 48.0 * p_T, volume


def _design_error(variant: Variant, p_T: float, p_g: float, d: int, r=None):
    """``(p_out, p_fail, pieces, d2)`` for one design point."""
    p = SurfaceParams(p_g, d)
    if variant is Variant.SevenT:
        return seven_t_error(p_T, p), 0.0, 154.0, None
    if variant is Variant.FourT:
        return four_t_error(p_T, p), 0.0, 126.0, None
    if variant is Variant.D2:
        p_out, fail = d2_error(p_T, p)
        return p_out, fail, 144.0, None
    p_out, fail, pieces = c4c6_error(p_T, p_g, d, r)
    return p_out, fail, pieces, compressed_distance(r, d)


def toffoli_quote(
    variant: Variant | str,
    p_g: float,
    target: float,
    t_supply: Sequence[ProtocolPoint] | None = None,
    grid: Sequence[int] = DISTANCE_GRID,
    r_grid: Sequence[float] = R_GRID,
    model: BKModel = PRINTED_MODEL,
) -> ToffoliQuote:
    """Cheapest configuration of one design meeting ``target``.

    Searches every T-supply point, every design distance and, for C4C6, every
    compression ratio. Total volume is ``(design cells + t_count * T volume) / (1 - p_fail)``.
    """
    variant = Variant(variant)
    check_probability(target, "target", allow_one=True)
    supply = default_t_supply(p_g, model) if t_supply is None else list(t_supply)
    n_t = T_COUNT[variant]
    rs = r_grid if variant is Variant.C4C6 else (None,)
    best = None
    order = {Variant.SevenT: 1, Variant.FourT: 1, Variant.D2: 2, Variant.C4C6: 4}[variant]
    lead = {Variant.SevenT: 7.0, Variant.FourT: 4.0, Variant.D2: 28.0, Variant.C4C6: 3600.0}[variant]
    for tp in sorted(supply, key=lambda pt: (pt.volume, pt.p_out)):
        if best is not None and n_t * tp.volume >= best[0][0]:
            break
        if n_t * tp.p_out >= 1.0 or lead * tp.p_out**order > target:
            continue
        for r in rs:
            # p_out falls as d grows while volume rises, so the first feasible d is optimal
            for d in grid:
                p_out, fail, pieces, d2 = _design_error(variant, tp.p_out, p_g, d, r)
                if p_out > target:
                    continue
                volume = (pieces * piece_cells(d) + n_t * tp.volume) / (1.0 - fail)
                key = (volume, p_out)
                if best is None or key < best[0]:
                    best = (key, ToffoliQuote(p_out, volume, ToffoliDesign(variant, d, r, d2), tp, fail))
                break
    if best is None:
        raise Infeasible(f"{variant.value} cannot reach {target:g} at p_g={p_g:g}")
    return best[1]


def best_toffoli(
    p_g: float,
    target: float,
    t_supply: Sequence[ProtocolPoint] | None = None,
    variants: Sequence[Variant | str] = tuple(Variant),
    model: BKModel = PRINTED_MODEL,
) -> ToffoliQuote:
    """Cheapest quote across ``variants``; ties keep the earlier variant."""
    supply = default_t_supply(p_g, model) if t_supply is None else list(t_supply)
    best = None
    for v in variants:
        try:
            q = toffoli_quote(v, p_g, target, supply)
        except Infeasible:
            continue
        if best is None or q.volume < best.volume:
            best = q
    if best is None:
        raise Infeasible(f"no Toffoli design reaches {target:g} at p_g={p_g:g}")
    return best


def toffoli_frontier(
    p_g: float,
    targets: Sequence[float],
    t_supply: Sequence[ProtocolPoint] | None = None,
    variants: Sequence[Variant | str] = tuple(Variant),
    model: BKModel = PRINTED_MODEL,
) -> list[ToffoliQuote]:
    """Best design for each target, in the order given."""
    supply = default_t_supply(p_g, model) if t_supply is None else list(t_supply)
    return [best_toffoli(p_g, t, supply, variants) for t in targets]


def toffoli_supply_frontier(
    p_g: float,
    targets: Sequence[float],
    variants: Sequence[Variant | str] = tuple(Variant),
    model: BKModel = PRINTED_MODEL,
) -> list[ProtocolPoint]:
    """Efficient frontier of Toffoli gates sampled at ``targets`` (infeasible ones skipped)."""
    supply = default_t_supply(p_g, model)
    pts = []
    for t in targets:
        try:
            pts.append(best_toffoli(p_g, t, supply, variants).as_point())
        except Infeasible:
            pass
    return efficient_frontier(pts)


def log_targets(lo_exp: float, hi_exp: float, step: float = 0.25) -> list[float]:
    """Targets ``10**-x`` for x from ``lo_exp`` to ``hi_exp`` inclusive."""
    n = int(math.floor((hi_exp - lo_exp) / step + 1e-9))
    return [10.0 ** -(lo_exp + i * step) for i in range(n + 1)]
