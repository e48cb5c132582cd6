"""Magic-state distillation models.

Bravyi-Kitaev 15-to-1 distillation is evaluated round by round::

    p_r = 35 p_{r-1}**3 + E * P_L(p_g, d_r)
    V_r = V * sum_s 15**(r-s) / (1 - 15 f_s) * side(d_s)**3

where ``E`` and ``V`` are plumbing-piece counts for the error and volume terms and
``f_s`` is the error used in the retry factor of round ``s``. Both the piece counts
and the choice of ``f_s`` are carried by :class:`BKModel`.

The multilevel H-code helpers return error rates and input-state counts only; no
surface-code layout is attached to them.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from ftcost._validation import check_positive_int, check_probability
from ftcost.analysis import ProtocolPoint, efficient_frontier
from ftcost.errors import Infeasible, InvalidParameter, RetryDivergence
from ftcost.surface_cost import DISTANCE_GRID, SurfaceParams, logical_error_per_piece, piece_cells

MAX_SEARCH_ROUNDS = 3


@dataclass(frozen=True)
class BKModel:
    """Constants of the 15-to-1 recursion.

    ``retry_error="output"`` uses the round's own output error in the retry factor,
    ``"input"`` uses the error of the states fed into the round.
    """

    error_pieces: float = 224.0
    volume_pieces: float = 224.0
    retry_error: Literal["output", "input"] = "output"

    def __post_init__(self):
        if self.retry_error not in ("output", "input"):
            raise InvalidParameter(f"unknown retry_error {self.retry_error!r}")
        if self.error_pieces <= 0 or self.volume_pieces <= 0:
            raise InvalidParameter("piece counts must be positive")


#: The recursion exactly as written, with 224 pieces and the output-error retry factor.
PRINTED_MODEL = BKModel()
#: Calibrated against the published resource table: 192 pieces, input-error retry.
TABLE_MODEL = BKModel(192.0, 192.0, "input")

MODELS = {"printed": PRINTED_MODEL, "calibrated": TABLE_MODEL}


@dataclass(frozen=True)
class DistillationSchedule:
    """Code distance of each round, innermost round first."""

    distances: tuple[int, ...]

    def __post_init__(self):
        ds = tuple(int(d) for d in self.distances)
        if not ds:
            raise InvalidParameter("a schedule needs at least one round")
        bad = [d for d in ds if d not in DISTANCE_GRID]
        if bad:
            raise InvalidParameter(f"distances {bad} are not on the odd 3..255 grid")
        object.__setattr__(self, "distances", ds)

    @property
    def rounds(self) -> int:
        return len(self.distances)


@dataclass(frozen=True)
class RoundOutcome:
    p_r: float
    V_r: float
    fail_r: float


def bk_injected_error(p_g: float) -> float:
    """Error of a freshly injected magic state, ``10 p_g``."""
    check_probability(p_g, "p_g")
    p_in = 10.0 * p_g
    if p_in >= 1.0:
        raise InvalidParameter(f"injected error {p_in} is not a probability")
    return p_in


def bk_round_terms(p_prev: float, p: SurfaceParams, model: BKModel = PRINTED_MODEL) -> tuple[float, float]:
    """The cubic distillation term and the code term of one round, separately."""
    check_probability(p_prev, "p_prev", allow_zero=True)
    return 35.0 * p_prev**3, model.error_pieces * logical_error_per_piece(p)


def bk_round_error(p_prev: float, p: SurfaceParams, model: BKModel = PRINTED_MODEL) -> float:
    cubic, code = bk_round_terms(p_prev, p, model)
    return cubic + code


def _retry_factor(fail: float) -> float:
    if 15.0 * fail >= 1.0:
        raise RetryDivergence(f"rejection probability 15*{fail:g} >= 1")
    return 1.0 / (1.0 - 15.0 * fail)


def bk_evaluate(
    schedule: DistillationSchedule, p_g: float, model: BKModel = PRINTED_MODEL
) -> list[RoundOutcome]:
    """Error and cumulative volume (unit cells) after each round of ``schedule``."""
    if not isinstance(schedule, DistillationSchedule):
        schedule = DistillationSchedule(tuple(schedule))
    p_prev = bk_injected_error(p_g)
    volume = 0.0
    out = []
    for d in schedule.distances:
        p_r = bk_round_error(p_prev, SurfaceParams(p_g, d), model)
        fail_basis = p_r if model.retry_error == "output" else p_prev
        volume = 15.0 * volume + model.volume_pieces * piece_cells(d) * _retry_factor(fail_basis)
        if p_r >= 1.0:
            raise RetryDivergence(f"round error {p_r:g} is not a probability")
        out.append(RoundOutcome(p_r, volume, min(15.0 * fail_basis, 1.0)))
        p_prev = p_r
    return out


def empty_protocol(p_g: float) -> ProtocolPoint:
    """Injected states used as they are: no distillation and no extra volume."""
    return ProtocolPoint(bk_injected_error(p_g), 0.0, "none", (("distances", ()), ("rounds", 0)))


def _bk_point(p, v, ds) -> ProtocolPoint:
    return ProtocolPoint(p, v, "bk", (("distances", ds), ("rounds", len(ds))))


def _prune(states):
    # states are (p, V, ds); keep the Pareto set, ties resolved by distance tuple
    states.sort()
    kept, best = [], math.inf
    for s in states:
        if s[1] < best:
            kept.append(s)
            best = s[1]
    return kept


@functools.lru_cache(maxsize=64)
def bk_round_frontiers(
    p_g: float,
    max_rounds: int = MAX_SEARCH_ROUNDS,
    model: BKModel = PRINTED_MODEL,
    grid: tuple[int, ...] = DISTANCE_GRID,
) -> tuple[tuple[tuple[float, float, tuple[int, ...]], ...], ...]:
    """Pareto-optimal ``(p, V, distances)`` states for each round count 1..max_rounds.

    Adding a round maps ``(p, V)`` to ``(35p^3 + code, 15V + cost)`` with both parts
    non-decreasing in ``p`` and ``V``, so pruning dominated states after every round
    loses no optimal schedule.
    """
    check_positive_int(max_rounds, "max_rounds")
    p_in = bk_injected_error(p_g)
    code = {d: model.error_pieces * logical_error_per_piece(SurfaceParams(p_g, d)) for d in grid}
    cells = {d: model.volume_pieces * piece_cells(d) for d in grid}
    layers = []
    states = [(p_in, 0.0, ())]
    for _ in range(max_rounds):
        nxt = []
        for p_prev, v_prev, ds in states:
            cubic = 35.0 * p_prev**3
            for d in grid:
                p = cubic + code[d]
                fail = p if model.retry_error == "output" else p_prev
                if 15.0 * fail >= 1.0 or p >= 1.0:
                    continue
                nxt.append((p, 15.0 * v_prev + cells[d] / (1.0 - 15.0 * fail), ds + (d,)))
        states = _prune(nxt)
        layers.append(tuple(states))
    return tuple(layers)


def _select(candidates_by_round, target):
    best = None
    for states in candidates_by_round:
        for p, v, ds in states:
            if p <= target and (best is None or v < best[1]):
                best = (p, v, ds)
    return best


def bk_search(
    p_g: float,
    target: float,
    max_rounds: int = MAX_SEARCH_ROUNDS,
    model: BKModel = PRINTED_MODEL,
    grid: tuple[int, ...] = DISTANCE_GRID,
) -> ProtocolPoint:
    """Minimal-volume schedule of up to ``max_rounds`` rounds reaching ``target``.

    Ties prefer fewer rounds, then the lexicographically smallest distances. When the
    injected error already meets the target the empty protocol is returned.
    """
    check_probability(target, "target", allow_one=True)
    if not 1 <= max_rounds <= MAX_SEARCH_ROUNDS:
        raise InvalidParameter(f"max_rounds must be in 1..{MAX_SEARCH_ROUNDS}")
    if bk_injected_error(p_g) <= target:
        return empty_protocol(p_g)
    best = _select(bk_round_frontiers(p_g, max_rounds, model, tuple(grid)), target)
    if best is None:
        raise Infeasible(f"no schedule of <= {max_rounds} rounds reaches {target:g} at p_g={p_g:g}")
    return _bk_point(*best)


@functools.lru_cache(maxsize=64)
def _tub_states(p_g, max_rounds, model, grid):
    layers = []
    for r in range(1, max_rounds + 1):
        states = []
        for d in grid:
            try:
                outcome = bk_evaluate(DistillationSchedule((d,) * r), p_g, model)[-1]
            except RetryDivergence:
                continue
            states.append((outcome.p_r, outcome.V_r, (d,) * r))
        layers.append(tuple(states))
    return tuple(layers)


def bk_tub(
    p_g: float,
    target: float,
    max_rounds: int = MAX_SEARCH_ROUNDS,
    model: BKModel = PRINTED_MODEL,
    grid: tuple[int, ...] = DISTANCE_GRID,
) -> ProtocolPoint:
    """Like :func:`bk_search` but every round uses the same code distance."""
    check_probability(target, "target", allow_one=True)
    if bk_injected_error(p_g) <= target:
        return empty_protocol(p_g)
    best = _select(_tub_states(p_g, max_rounds, model, tuple(grid)), target)
    if best is None:
        raise Infeasible(f"no uniform-distance schedule reaches {target:g} at p_g={p_g:g}")
    p, v, ds = best
    return ProtocolPoint(p, v, "bk-tub", (("distances", ds), ("rounds", len(ds))))


def bk_frontier(
    p_g: float,
    max_rounds: int = MAX_SEARCH_ROUNDS,
    model: BKModel = PRINTED_MODEL,
    grid: tuple[int, ...] = DISTANCE_GRID,
) -> list[ProtocolPoint]:
    """Efficient frontier of all optimized schedules (no empty protocol)."""
    layers = bk_round_frontiers(p_g, max_rounds, model, tuple(grid))
    return efficient_frontier(_bk_point(*s) for states in layers for s in states)


def bk_tub_frontier(
    p_g: float,
    max_rounds: int = MAX_SEARCH_ROUNDS,
    model: BKModel = PRINTED_MODEL,
    grid: tuple[int, ...] = DISTANCE_GRID,
) -> list[ProtocolPoint]:
    layers = _tub_states(p_g, max_rounds, model, tuple(grid))
    return efficient_frontier(
        ProtocolPoint(p, v, "bk-tub", (("distances", ds), ("rounds", len(ds))))
        for states in layers
        for p, v, ds in states
    )


def t_supply(p_g: float, model: BKModel = PRINTED_MODEL, tub: bool = False) -> list[ProtocolPoint]:
    """T-gate supply: the distillation frontier plus raw injected states at no extra cost."""
    pts = bk_tub_frontier(p_g, model=model) if tub else bk_frontier(p_g, model=model)
    raw = ProtocolPoint(bk_injected_error(p_g), 0.0, "raw", ())
    return efficient_frontier([raw, *pts])


# ---------------------------------------------------------------- multilevel


@dataclass(frozen=True)
class HCodeParams:
    """H-code block with ``k`` outputs at concatenation level ``t``."""

    k: int
    t: int
    eps_l: float
    eps_p: float

    def __post_init__(self):
        check_positive_int(self.k, "k", minimum=2)
        if self.k % 2:
            raise InvalidParameter(f"k={self.k} must be even")
        check_positive_int(self.t, "t")
        check_probability(self.eps_l, "eps_l", allow_zero=True)
        check_probability(self.eps_p, "eps_p", allow_zero=True)


def h_code_output_error(params: HCodeParams) -> float:
    """Lowest-order output error of a level-``t`` H-code distiller (t <= 4)."""
    k, t, el, ep = params.k, params.t, params.eps_l, params.eps_p
    if t > 4:
        raise InvalidParameter("output error is only modelled for t <= 4")
    if t == 1:
        return (k - 1) * el**2 + (2 * k + 2) * ep**2
    if t == 2:
        return (k**2 - 1) * el**2 + 8 * (k**2 + 4 * k + 3) * ep**4 + (k + 4) ** 2 * el * ep**2
    return (
        (k**t - 1) * el**2
        + 2 ** (2**t + t - 3) * (k + 1) * (k + 3) ** (t - 1) * ep ** (2**t)
        + (k + 4) ** (t * 2 ** (t - 2)) * el * ep ** (2 ** (t - 1))
    )


def h_code_detect_prob(params: HCodeParams) -> float:
    """Lowest-order probability that the distiller flags an error (t in {1, 2})."""
    k, t, el, ep = params.k, params.t, params.eps_l, params.eps_p
    if t == 1:
        return k * el + 2 * (k + 4) * ep
    if t == 2:
        return k**2 * el + 2 * (k + 4) ** 2 * ep + 2 * k**2 * (k + 4) ** 2 * el * ep
    raise InvalidParameter("detection probability is only modelled for t <= 2")


def multilevel_input_count(k: int, r: int) -> int:
    """Total injected states consumed by an ``r``-level protocol with ``k`` outputs per block."""
    check_positive_int(k, "k", minimum=2)
    if k % 2:
        raise InvalidParameter(f"k={k} must be even")
    check_positive_int(r, "r")
    ratio = Fraction(k + 4, k)
    bracket = 1 + ratio + sum(2 ** (q - 1) * ratio**q for q in range(1, r + 1))
    total = bracket * k ** (r * (r + 1) // 2)
    if total.denominator != 1:
        raise InvalidParameter("input count is not integral")  # cannot happen for even k
    return int(total)


def scaling_exponent(n_in: float, k_out: float, d: float) -> float:
    """``log(n/k) / log(d)`` for an n-to-k protocol with O(p^d) output error."""
    if not (n_in > k_out >= 1) or d < 2:
        raise InvalidParameter("need n_in > k_out >= 1 and d >= 2")
    return math.log(n_in / k_out) / math.log(d)
