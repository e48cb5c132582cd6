"""Single-qubit phase rotations: approximation cost fits, phase-kickback arithmetic
and the volume-vs-error comparison between methods.

A rotation's error is ``p_out = eps_F**2 + p_L``, where ``eps_F`` is the Fowler
distance of the approximation and ``p_L`` the failure probability of the gates and
states it consumes. Only non-Clifford resources are charged volume.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ftcost._validation import check_positive_int, check_probability
from ftcost.analysis import ProtocolPoint, cheapest_meeting, efficient_frontier
from ftcost.distillation import PRINTED_MODEL, BKModel, t_supply as default_t_supply
from ftcost.errors import Infeasible, InvalidParameter, UnsupportedMethod, ZeroScale


class RotationMethod(str, enum.Enum):
    KMM = "kmm"
    BGS = "bgs"
    PhaseKickback = "pk"
    PAR = "par"

    @property
    def resource_kind(self) -> str:
        return {"kmm": "T-gate", "bgs": "Toffoli", "pk": "Toffoli", "par": "Fourier-state"}[self.value]


# slope and intercept of the gate-count fits in log10(1/eps_F)
COST_FITS = {
    RotationMethod.KMM: (10.7, -23.0),
    RotationMethod.BGS: (6.62, -0.11),
    RotationMethod.PhaseKickback: (3.32, -0.50),
}

V_GATE_SUCCESS = Fraction(5, 8)

#: Fractions of the target assigned to eps_F**2; the first entry is the default split.
SPLIT_GRID: tuple[float, ...] = (0.5,) + tuple(round(0.05 * i, 2) for i in range(1, 20) if i != 10)


def fowler_distance_z(phi: float, phi2: float) -> float:
    """Fowler distance between Z rotations by ``phi`` and ``phi2``."""
    return math.sqrt(max(0.0, 1.0 - abs(math.cos((phi - phi2) / 2.0))))


def truncation_distance(p: int) -> float:
    """Fowler distance of a phase rounded to ``p`` bits in the worst case."""
    return math.sqrt(max(0.0, 1.0 - 0.5 * abs(1.0 + complex(math.cos(math.pi / 2**p), math.sin(math.pi / 2**p)))))


@dataclass(frozen=True)
class SequenceCost:
    count: int
    clamped: bool


def sequence_cost_detail(method: RotationMethod | str, eps_F: float) -> SequenceCost:
    method = RotationMethod(method)
    if method is RotationMethod.PAR:
        raise UnsupportedMethod("PAR has no gate-count fit; it is costed by Fourier-state volume")
    if not 0 < eps_F <= 1:
        raise InvalidParameter(f"eps_F={eps_F} must lie in (0, 1]")
    slope, intercept = COST_FITS[method]
    raw = slope * math.log10(1.0 / eps_F) + intercept
    count = math.ceil(raw - 1e-9)
    if count < 1:
        return SequenceCost(1, True)
    return SequenceCost(count, False)


def sequence_cost(method: RotationMethod | str, eps_F: float) -> int:
    """Ceiling of the fitted gate count (T gates for KMM, Toffoli gates otherwise)."""
    return sequence_cost_detail(method, eps_F).count


def v_gate_stats() -> tuple[float, float]:
    """``(success probability, expected Toffoli gates per V gate)``."""
    return float(V_GATE_SUCCESS), float(1 / V_GATE_SUCCESS)


def pk_addend(phi: float, k: int, n: int) -> int:
    """Addend ``u`` with ``k*u + round(N phi / 2 pi) = 0 (mod N)``, ``N = 2**n``."""
    check_positive_int(n, "n")
    if k % 2 == 0:
        raise InvalidParameter(f"k={k} must be odd to be invertible mod 2^n")
    N = 2**n
    a = math.floor(N * phi / (2 * math.pi) + 0.5) % N
    return (-a * pow(k, -1, N)) % N


def _as_fraction(xi) -> Fraction:
    if isinstance(xi, str):
        s = xi.strip().replace("_", "")
        sign = -1 if s.startswith("-") else 1
        s = s.lstrip("+-")
        whole, _, frac = s.partition(".")
        if not set(whole + frac) <= {"0", "1"} or not (whole + frac):
            raise InvalidParameter(f"{xi!r} is not a binary fraction")
        value = Fraction(int(whole or "0", 2)) + Fraction(int(frac or "0", 2), 2 ** len(frac))
        return sign * value
    value = Fraction(xi)
    den = value.denominator
    if den & (den - 1):
        raise InvalidParameter(f"{xi!r} is not a finite binary fraction")
    return value


@dataclass(frozen=True)
class QVRParameters:
    m: int
    w: int
    p: int
    k: int
    register_shift: int


def qvr_parameters(xi_bits) -> QVRParameters:
    """Scale decomposition ``xi = k / 2**p`` with ``k`` odd.

    ``xi_bits`` is a binary string such as ``"0.101"``, or any exact dyadic number.
    ``register_shift`` is ``p``: positive shifts the register down, negative up.
    """
    xi = _as_fraction(xi_bits)
    if xi == 0:
        raise ZeroScale("xi = 0 is the identity; no circuit is built")
    sign = 1 if xi > 0 else -1
    mag = abs(xi)
    odd = mag.numerator  # reduced, so odd whenever the denominator is a power of two > 1
    tz = (odd & -odd).bit_length() - 1
    odd >>= tz
    exp2 = tz - (mag.denominator.bit_length() - 1)  # mag = odd * 2**exp2
    m = odd.bit_length()
    w = m - 1 + exp2
    p = (m - 1) - w
    return QVRParameters(m, w, p, sign * odd, p)


def par_stats(M: int | float) -> tuple[float, float, float]:
    """``(expected rounds, expected gates, fallback probability)`` with ``M`` ancillas.

    Each round succeeds with probability 1/2 and uses two gates; after ``M``
    failures the construction falls back, having spent ``M`` rounds.
    """
    if M == math.inf:
        return 2.0, 4.0, 0.0
    M = check_positive_int(M, "M")
    rounds = sum(Fraction(m, 2**m) for m in range(1, M + 1)) + Fraction(M, 2**M)
    return float(rounds), float(2 * rounds), 2.0**-M


# ----------------------------------------------------------------- quoting

@dataclass(frozen=True)
class RotationSupplies:
    """Frontiers of T gates and Toffoli gates available to rotations."""

    t_gates: tuple[ProtocolPoint, ...]
    toffolis: tuple[ProtocolPoint, ...]


@functools.lru_cache(maxsize=16)
def default_supplies(
    p_g: float,
    model: BKModel = PRINTED_MODEL,
    lo_exp: float = 1.0,
    hi_exp: float = 22.0,
    step: float = 0.05,
) -> RotationSupplies:
    """Frontiers at ``p_g``; Toffoli quotes are sampled every ``step`` decades."""
    from ftcost.toffoli import log_targets, toffoli_supply_frontier

    t_pts = default_t_supply(p_g, model)
    tof = toffoli_supply_frontier(p_g, log_targets(lo_exp, hi_exp, step), model=model)
    return RotationSupplies(tuple(t_pts), tuple(tof))


def _bits_for(eps_F: float) -> int:
    """Fourier-state qubits for phase kickback reaching ``eps_F``."""
    return sequence_cost(RotationMethod.PhaseKickback, eps_F) + 2


def _quote_once(method, p_g, target, frac, supplies, reuse):
    eps2 = frac * target
    budget = target - eps2
    eps_F = math.sqrt(eps2)
    if method is RotationMethod.PAR:
        from ftcost.fourier import fourier_state_volume, fourier_state_error

        n = _bits_for(eps_F)
        err = fourier_state_error(n, p_g)
        if eps2 + err > target:
            return None
        vol = fourier_state_volume(n, p_g).unit_cells / reuse
        return ProtocolPoint(eps2 + err, vol, "rotation", (("method", method.value), ("split", frac), ("count", 1), ("bits", n)))
    cost = sequence_cost_detail(method, eps_F)
    frontier = supplies.t_gates if method is RotationMethod.KMM else supplies.toffolis
    gate = cheapest_meeting(frontier, budget / cost.count)
    if gate is None:
        return None
    p_out = eps2 + cost.count * gate.p_out
    params = (("method", method.value), ("split", frac), ("count", cost.count), ("gate_p", gate.p_out))
    return ProtocolPoint(p_out, cost.count * gate.volume, "rotation", params)


def rotation_quote(
    method: RotationMethod | str,
    p_g: float,
    target: float,
    supplies: RotationSupplies | None = None,
    split: float | None = None,
    reuse: int = 1,
) -> ProtocolPoint:
    """Cheapest rotation by ``method`` with ``p_out <= target``.

    The target is first split evenly between ``eps_F**2`` and ``p_L``; unless
    ``split`` is fixed, other splits on :data:`SPLIT_GRID` are then tried and the
    cheapest kept (ties keep the earlier grid entry).
    """
    method = RotationMethod(method)
    check_probability(target, "target", allow_one=True)
    check_positive_int(reuse, "reuse")
    supplies = supplies or default_supplies(p_g)
    fracs = (split,) if split is not None else SPLIT_GRID
    best = None
    for frac in fracs:
        pt = _quote_once(method, p_g, target, frac, supplies, reuse)
        if pt is not None and (best is None or pt.volume < best.volume):
            best = pt
    if best is None:
        raise Infeasible(f"{method.value} rotation cannot reach {target:g} at p_g={p_g:g}")
    return best


def rotation_frontier(
    method: RotationMethod | str,
    p_g: float,
    targets: Sequence[float],
    supplies: RotationSupplies | None = None,
) -> list[ProtocolPoint]:
    supplies = supplies or default_supplies(p_g)
    pts = []
    for t in targets:
        try:
            pts.append(rotation_quote(method, p_g, t, supplies))
        except Infeasible:
            pass
    return efficient_frontier(pts)


@dataclass(frozen=True)
class Crossover:
    p_out: float | None
    above: str
    below: str
    samples: tuple[tuple[float, str], ...]


def policy_crossover(
    p_g: float,
    supplies: RotationSupplies | None = None,
    methods: Sequence[RotationMethod | str] = (RotationMethod.KMM, RotationMethod.PhaseKickback),
    lo_exp: float = 4.0,
    hi_exp: float = 16.0,
    step: float = 0.05,
) -> Crossover:
    """Scan targets from loose to tight and locate the policy boundary between
    ``methods[0]`` (cheapest for loose targets) and ``methods[1]`` (tight targets).

    The boundary sits after the tightest target where ``methods[0]`` still wins and
    is reported as the geometric mean of the two bracketing targets. Near-ties that
    flip back and forth at looser targets therefore do not move it.
    """
    supplies = supplies or default_supplies(p_g)
    methods = [RotationMethod(m) for m in methods]
    xs = np.round(np.arange(lo_exp, hi_exp + step / 2, step), 10)
    samples = []
    for x in xs:
        t = 10.0 ** (-x)
        costs = []
        for m in methods:
            try:
                costs.append((rotation_quote(m, p_g, t, supplies).volume, m.value))
            except Infeasible:
                pass
        if costs:
            samples.append((float(t), min(costs)[1]))
    above, below = methods[0].value, methods[1].value
    cross = None
    for (t1, w1), (t2, w2) in zip(samples, samples[1:]):
        if w1 == above and w2 == below:
            cross = math.sqrt(t1 * t2)
    return Crossover(cross, above, below, tuple(samples))
