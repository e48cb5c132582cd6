"""Brute-force enumeration of Z-error patterns.

Two oracles check analytic error coefficients independently of the formulas:

* a code oracle that runs every error pattern of a given weight through a binary
  check matrix and sorts it into detected, harmless and logical-flip classes;
* a circuit oracle that pushes Pauli errors through a CNOT netlist and applies the
  netlist's detection and failure rules.

Netlist text format, one operation per line (``#`` starts a comment)::

    cnot c t                 CNOT with control c and target t
    inject s q               error site s acting on qubit q (Z error)
    mx q                     X-basis measurement, flipped by a Z on q
    mz q                     Z-basis measurement, flipped by an X on q
    detect parity m1 m2 ...  error detected if these measurement flips have odd parity
    fail z q1 q2 ...         failure if the residual Z on these qubits has odd parity

Measurements are named ``m1, m2, ...`` in order of appearance. Several ``detect``
lines are OR-ed, as are several ``fail`` lines.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from ftcost.errors import InvalidParameter

MAX_INJECT_SITES = 24


# ------------------------------------------------------------------ codes

@dataclass(frozen=True, eq=False)
class CheckMatrix:
    """Binary stabilizer supports (rows) and a logical-operator support."""

    rows: np.ndarray
    logical: np.ndarray

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.uint8) & 1
        logical = np.asarray(self.logical, dtype=np.uint8) & 1
        if rows.ndim != 2 or logical.shape != (rows.shape[1],):
            raise InvalidParameter("rows must be r x n and logical length n")
        if gf2_rank(rows) != rows.shape[0]:
            raise InvalidParameter("check rows are linearly dependent over GF(2)")
        if gf2_rank(np.vstack([rows, logical])) == rows.shape[0]:
            raise InvalidParameter("logical operator lies in the row space")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "logical", logical)

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    def syndrome(self, e) -> np.ndarray:
        return (self.rows @ np.asarray(e, dtype=np.uint8)) % 2

    def logical_flip(self, e) -> int:
        return int(np.asarray(e, dtype=np.uint8) @ self.logical % 2)


def gf2_rank(m) -> int:
    a = np.array(m, dtype=np.uint8) % 2
    rank = 0
    for col in range(a.shape[1]):
        pivot = next((r for r in range(rank, a.shape[0]) if a[r, col]), None)
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        for r in range(a.shape[0]):
            if r != rank and a[r, col]:
                a[r] ^= a[rank]
        rank += 1
    return rank


def rm15_check_matrix() -> CheckMatrix:
    """4 x 15 matrix whose column j is the binary expansion of j (most significant bit first)."""
    cols = np.arange(1, 16)
    rows = np.array([(cols >> (3 - i)) & 1 for i in range(4)], dtype=np.uint8)
    return CheckMatrix(rows, np.ones(15, dtype=np.uint8))


@dataclass(frozen=True)
class WeightCounts:
    weight: int
    total: int
    detected: int
    harmless: int
    logical: int


def enumerate_code_errors(code: CheckMatrix, max_weight: int) -> list[WeightCounts]:
    """Classify every pattern of weight 1..max_weight."""
    if not 0 <= max_weight <= code.n:
        raise InvalidParameter(f"max_weight must lie in 0..{code.n}")
    out = []
    for w in range(1, max_weight + 1):
        det = harm = logi = 0
        for support in itertools.combinations(range(code.n), w):
            cols = list(support)
            if (code.rows[:, cols].sum(axis=1) % 2).any():
                det += 1
            elif int(code.logical[cols].sum()) % 2:
                logi += 1
            else:
                harm += 1
        out.append(WeightCounts(w, math.comb(code.n, w), det, harm, logi))
    return out


# --------------------------------------------------------------- netlists

@dataclass(frozen=True)
class PropagationNetlist:
    ops: tuple[tuple, ...]
    detect: tuple[tuple[str, ...], ...]
    fail: tuple[tuple[str, ...], ...]
    sites: tuple[str, ...] = field(default=())
    measurements: tuple[str, ...] = field(default=())


def parse_netlist(text: str) -> PropagationNetlist:
    ops, detect, fail, sites, meas = [], [], [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        head = tok[0].lower()
        if head == "cnot" and len(tok) == 3:
            if tok[1] == tok[2]:
                raise InvalidParameter(f"line {lineno}: cnot control equals target")
            ops.append(("cnot", tok[1], tok[2]))
        elif head == "inject" and len(tok) == 3:
            if tok[1] in sites:
                raise InvalidParameter(f"line {lineno}: site {tok[1]} injected twice")
            sites.append(tok[1])
            ops.append(("inject", tok[1], tok[2]))
        elif head in ("mx", "mz") and len(tok) == 2:
            meas.append(f"m{len(meas) + 1}")
            ops.append((head, tok[1], meas[-1]))
        elif head == "detect" and len(tok) >= 3 and tok[1] == "parity":
            detect.append(tuple(tok[2:]))
        elif head == "fail" and len(tok) >= 3 and tok[1] == "z":
            fail.append(tuple(tok[2:]))
        else:
            raise InvalidParameter(f"line {lineno}: cannot parse {raw.strip()!r}")
    unknown = {m for rule in detect for m in rule} - set(meas)
    if unknown:
        raise InvalidParameter(f"detect rule names unknown measurements {sorted(unknown)}")
    if len(sites) > MAX_INJECT_SITES:
        raise InvalidParameter(f"{len(sites)} inject sites exceed the limit of {MAX_INJECT_SITES}")
    return PropagationNetlist(tuple(ops), tuple(detect), tuple(fail), tuple(sites), tuple(meas))


def load_netlist(path) -> PropagationNetlist:
    return parse_netlist(Path(path).read_text())


def d2_netlist() -> PropagationNetlist:
    """The shipped netlist of the distance-2 verified Toffoli."""
    text = resources.files("ftcost").joinpath("data/d2_toffoli.net").read_text()
    return parse_netlist(text)


@dataclass(frozen=True)
class Outcome:
    detected: bool
    failed: bool


def propagate(netlist: PropagationNetlist, active_sites) -> Outcome:
    """Push the Z errors of ``active_sites`` through the netlist and classify the result."""
    active = set(active_sites)
    z: dict[str, int] = {}
    x: dict[str, int] = {}
    flips: dict[str, int] = {}
    for op in netlist.ops:
        kind = op[0]
        if kind == "inject":
            if op[1] in active:
                z[op[2]] = z.get(op[2], 0) ^ 1
        elif kind == "cnot":
            c, t = op[1], op[2]
            z[c] = z.get(c, 0) ^ z.get(t, 0)
            x[t] = x.get(t, 0) ^ x.get(c, 0)
        elif kind == "mx":
            flips[op[2]] = z.get(op[1], 0)
        elif kind == "mz":
            flips[op[2]] = x.get(op[1], 0)
    detected = any(sum(flips[m] for m in rule) % 2 for rule in netlist.detect)
    failed = any(sum(z.get(q, 0) for q in rule) % 2 for rule in netlist.fail)
    return Outcome(detected, failed)


@dataclass(frozen=True)
class PatternCounts:
    weight: int
    total: int
    detected: int
    undetected_harmless: int
    undetected_failure: int


def propagate_and_enumerate(netlist: PropagationNetlist, max_weight: int | None = None) -> list[PatternCounts]:
    """Classify every injection pattern of weight 0..max_weight (all weights by default)."""
    k = len(netlist.sites)
    if k > MAX_INJECT_SITES:
        raise InvalidParameter(f"{k} inject sites exceed the limit of {MAX_INJECT_SITES}")
    top = k if max_weight is None else min(max_weight, k)
    out = []
    for w in range(top + 1):
        det = harm = bad = 0
        for combo in itertools.combinations(netlist.sites, w):
            res = propagate(netlist, combo)
            if res.detected:
                det += 1
            elif res.failed:
                bad += 1
            else:
                harm += 1
        out.append(PatternCounts(w, math.comb(k, w), det, harm, bad))
    return out


def c4_block_pair_counts() -> tuple[int, int]:
    """Split the 28 pairs of T/T-dagger sites in one C4 block by their residual error.

    The block has four qubits with two sites each. A pair on different qubits leaves
    a weight-two Z that reaches the stabilizer measurement; a pair on the same qubit
    cancels there and instead propagates a single Z to the bare qubit.
    """
    sites = [(q, k) for q in range(4) for k in range(2)]
    visible = cancel = 0
    for (q1, _), (q2, _) in itertools.combinations(sites, 2):
        residual = np.zeros(4, dtype=np.uint8)
        residual[q1] ^= 1
        residual[q2] ^= 1
        if residual.any():
            visible += 1
        else:
            cancel += 1
    return visible, cancel
