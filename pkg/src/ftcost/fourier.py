"""Fourier-state distillation.

The target state is the Fourier state with eigenvalue index 1. An approximate
n-qubit version is prepared from a Z-basis phase pattern whose expansion in the
Fourier basis has weights

    |a_j|^2 = 8 / (N^2 sin^2(pi j / N))   for j = 1 (mod 4), N = 2^n,

and zero otherwise. This is the alias sum of the squared series coefficients
``|c_{j + N x}|^2`` with ``c_j = (2 - 2i) / (pi j)``. A distillation step combines
two copies and keeps the outcome with probability ``sum_y |a_y|^2 |a'_y|^2``,
so only magnitudes matter and a spectrum is stored as its weights.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ftcost._validation import check_positive_int, check_probability
from ftcost.errors import Infeasible, InvalidParameter
from ftcost.surface_cost import Volume, min_distance_for, piece_error

#: Qubits per Fourier state at the start of the protocol.
INITIAL_QUBITS = 5
#: Largest n accepted by :func:`initial_spectrum` (2^n dense weights).
MAX_SPECTRUM_QUBITS = 24


def series_coefficient(j: int) -> complex:
    """Fourier-series coefficient ``c_j``: ``(2 - 2i)/(pi j)`` when j = 1 mod 4, else 0."""
    if j % 4 != 1:
        return 0j
    return (2 - 2j) / (math.pi * j)


@dataclass(frozen=True, eq=False)
class FourierSpectrum:
    """Squared magnitudes ``|a_j|^2`` for j = 0..2^n - 1."""

    n: int
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (2**self.n,):
            raise InvalidParameter(f"expected {2**self.n} weights, got shape {w.shape}")
        if np.any(w < 0):
            raise InvalidParameter("weights must be non-negative")
        w = w.copy()
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def fidelity(self) -> float:
        """Weight on the target state j = 1."""
        return float(self.weights[1])

    @property
    def total(self) -> float:
        return float(self.weights.sum())


def initial_spectrum(n: int) -> FourierSpectrum:
    """Exact weights of the undistilled n-qubit state."""
    check_positive_int(n, "n", minimum=3)
    if n > MAX_SPECTRUM_QUBITS:
        raise InvalidParameter(f"n={n} exceeds the dense-spectrum limit {MAX_SPECTRUM_QUBITS}")
    N = 2**n
    j = np.arange(N)
    w = np.zeros(N)
    sel = j % 4 == 1
    w[sel] = 8.0 / (N**2 * np.sin(np.pi * j[sel] / N) ** 2)
    return FourierSpectrum(n, w)


def distill_step(a: FourierSpectrum, a2: FourierSpectrum) -> tuple[float, FourierSpectrum]:
    """Combine two states; returns ``(P_success, output spectrum)``."""
    if a.n != a2.n:
        raise InvalidParameter("spectra must have the same number of qubits")
    prod = a.weights * a2.weights
    p_success = float(prod.sum())
    if p_success == 0.0:
        raise InvalidParameter("inputs are orthogonal; distillation always fails")
    return p_success, FourierSpectrum(a.n, prod / p_success)


def symmetric_rounds(a: FourierSpectrum, r: int) -> FourierSpectrum:
    """Spectrum after ``r`` rounds where both inputs are copies of the same state."""
    check_positive_int(r, "r", minimum=0)
    if r == 0:
        return a
    # work relative to the largest weight so high powers do not underflow
    base = a.weights / a.weights.max()
    w = base ** (2**r)
    return FourierSpectrum(a.n, w / w.sum())


def round_success_probabilities(a: FourierSpectrum, rounds: int) -> list[float]:
    """Success probability of each symmetric round applied in sequence."""
    out = []
    for _ in range(rounds):
        p, a = distill_step(a, a)
        out.append(p)
    return out


def rounds_required(n: int) -> int:
    """Rounds of distillation for an n-qubit state (n >= 6)."""
    check_positive_int(n, "n", minimum=6)
    sideband = math.log2(9.0)  # |c_1|^2 / |c_-3|^2 = 9
    return math.ceil(math.log2((2 * n - 2 * math.log2(math.pi)) / sideband))


def toffoli_count(n: int, s: int = INITIAL_QUBITS) -> int:
    """Toffoli gates used to distill one n-qubit Fourier state."""
    return toffoli_count_for_rounds(rounds_required(n), s)


def toffoli_count_for_rounds(R: int, s: int = INITIAL_QUBITS) -> int:
    check_positive_int(R, "R")
    return 2 ** (R + 1) * R * s - 2 ** (R + 2) + 4


def arbitrary_k_toffoli_count(n: int) -> int:
    """Toffoli gates for the arbitrary-index extension, ``(n-3)(n-2)/2``."""
    check_positive_int(n, "n", minimum=3)
    return (n - 3) * (n - 2) // 2


def adder_budget(n: int) -> float:
    """Error allowed in one n-bit adder pass, ``sin^2(pi / 2^n)``."""
    return math.sin(math.pi / 2**n) ** 2


def adder_layout_pieces(n: int) -> float:
    return float((2 * n - 4) * n * 2)


def _default_toffoli_supply(p_g: float, target: float):
    from ftcost.toffoli import best_toffoli

    return best_toffoli(p_g, target)


@dataclass(frozen=True)
class AdderCost:
    toffoli_count: int
    volume: Volume
    layout_distance: int
    toffoli_volume: float
    p_out: float


def adder_cost(
    n: int,
    p_g: float,
    toffoli_supply: Callable[[float, float], object] | None = None,
) -> AdderCost:
    """Toffoli count and volume of an n-bit ripple-carry adder.

    The budget ``sin^2(pi/2^n)`` is split evenly between the layout and the Toffoli
    gates. ``toffoli_supply(p_g, target)`` must return an object with ``volume`` and
    ``p_out`` (a Toffoli quote).
    """
    check_positive_int(n, "n", minimum=3)
    check_probability(p_g, "p_g")
    supply = toffoli_supply or _default_toffoli_supply
    return _adder_cost(n, p_g, supply)


@functools.lru_cache(maxsize=512)
def _adder_cost(n, p_g, supply):
    budget = adder_budget(n)
    n_tof = 2 * n - 4
    pieces = adder_layout_pieces(n)
    d = min_distance_for(p_g, pieces, budget / 2)
    quote = supply(p_g, budget / 2 / n_tof)
    layout = Volume.from_pieces(pieces, d)
    p_out = pieces * piece_error(p_g, d) + n_tof * quote.p_out
    total = Volume(layout.unit_cells + n_tof * quote.volume)
    return AdderCost(n_tof, total, d, float(quote.volume), p_out)


def fourier_state_volume(
    n: int,
    p_g: float,
    toffoli_supply: Callable[[float, float], object] | None = None,
) -> Volume:
    """Volume to distill one n-qubit Fourier state.

    ``V(n) = V_add(n+1) / P(n) + 2 V(ceil(n/2))`` where ``P(n)`` is the success
    probability of the round producing n qubits. States of at most
    ``INITIAL_QUBITS`` qubits cost one adder pass on ``INITIAL_QUBITS + 1`` bits.
    """
    check_positive_int(n, "n", minimum=1)
    supply = toffoli_supply or _default_toffoli_supply
    return Volume(_fourier_volume(n, p_g, supply))


def _level_success(m: int, depth: int) -> float:
    """Success probability of the round at recursion ``depth`` (1 = first round) for m qubits."""
    spec = initial_spectrum(min(max(m, 3), 16))
    return round_success_probabilities(spec, depth)[-1]


def _depth(n: int) -> int:
    depth = 0
    while n > INITIAL_QUBITS:
        n = math.ceil(n / 2)
        depth += 1
    return depth


@functools.lru_cache(maxsize=512)
def _fourier_volume(n, p_g, supply):
    if n <= INITIAL_QUBITS:
        return _adder_cost(INITIAL_QUBITS + 1, p_g, supply).volume.unit_cells
    p_success = _level_success(n, _depth(n))
    add = _adder_cost(n + 1, p_g, supply).volume.unit_cells
    return add / p_success + 2 * _fourier_volume(math.ceil(n / 2), p_g, supply)


def fourier_state_error(
    n: int,
    p_g: float,
    toffoli_supply: Callable[[float, float], object] | None = None,
) -> float:
    """Logical error left in the final state: that of the last adder pass.

    Errors made in earlier rounds are exposed by the rounds that follow, so only the
    final (n+1)-bit addition is charged.
    """
    check_positive_int(n, "n", minimum=1)
    supply = toffoli_supply or _default_toffoli_supply
    m = max(n, INITIAL_QUBITS)
    return _adder_cost(m + 1, p_g, supply).p_out
