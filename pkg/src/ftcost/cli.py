"""Command-line front end.

Every subcommand prints a table of rows (csv, json or aligned text). Exit codes:
0 success, 2 bad arguments, 3 an infeasible request, 4 an internal invariant failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ftcost import __version__
from ftcost.errors import FTCostError, Infeasible, InvariantViolation

EXIT_OK, EXIT_ARGS, EXIT_INFEASIBLE, EXIT_INVARIANT = 0, 2, 3, 4

DEFAULT_PG = [10.0**-e for e in (3.0, 3.5, 4.0, 4.5, 5.0)]
FIT_CURVES = ("plumbing", "bk", "bk-tub", "adder", "fourier")


@dataclass
class Report:
    command: str
    columns: list[str]
    rows: list[dict] = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    status: int = EXIT_OK


# ------------------------------------------------------------ arguments

def probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"{text} is not a probability in (0, 1)")
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--pg", type=probability, action="append", help="physical gate error (repeatable)")
    g.add_argument("--pout", type=probability, action="append", help="target output error (repeatable)")
    g.add_argument("--format", choices=("csv", "json", "table"), default="table")
    g.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    g.add_argument("--threads", type=positive_int, default=1)
    g.add_argument("--precision", type=positive_int, default=4, help="significant digits")
    g.add_argument(
        "--bk-model",
        choices=("calibrated", "printed"),
        default="calibrated",
        help="15-to-1 distillation constants (default: calibrated)",
    )

    parser = argparse.ArgumentParser(prog="ftcost", description="Surface-code resource estimates.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("bk-table", parents=[common], help="15-to-1 distillation grid")
    p.add_argument("--max-rounds", type=int, choices=(1, 2, 3), default=3)

    p = sub.add_parser("bk-frontier", parents=[common], help="efficient frontier of 15-to-1 schedules")
    p.add_argument("--tub", action="store_true", help="same distance in every round")
    p.add_argument("--max-rounds", type=int, choices=(1, 2, 3), default=3)

    p = sub.add_parser("toffoli-compare", parents=[common], help="Toffoli designs per target")
    p.add_argument("--variant", action="append", choices=("7t", "4t", "d2", "c4c6"))

    p = sub.add_parser("rotation-compare", parents=[common], help="phase-rotation methods per target")
    p.add_argument("--method", action="append", choices=("kmm", "bgs", "pk", "par"))

    p = sub.add_parser("fourier-cost", parents=[common], help="adder and Fourier-state volumes")
    p.add_argument("--n", type=int, action="append", help="qubits (repeatable, >= 6)")

    p = sub.add_parser("verify", parents=[common], help="run the error-enumeration oracles")
    p.add_argument("--netlist", metavar="PATH", help="netlist file (default: shipped D2 netlist)")
    p.add_argument("--max-weight", type=int, default=None)

    p = sub.add_parser("fit", parents=[common], help="power-law fits of cost curves")
    p.add_argument("--curve", action="append", choices=FIT_CURVES)
    return parser


def _model(args):
    from ftcost.distillation import MODELS

    return MODELS[args.bk_model]


def _pmap(args, fn, items):
    if args.threads == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        return list(pool.map(fn, items))


# -------------------------------------------------------------- commands

def cmd_bk_table(args) -> Report:
    from ftcost.distillation import bk_search

    pgs = args.pg or DEFAULT_PG
    targets = args.pout or [10.0**-e for e in range(3, 16)]
    model = _model(args)
    rep = Report("bk-table", ["pg", "target", "achieved", "volume_unit_cells", "rounds", "d1", "d2", "d3"])

    def cell(job):
        pg, t = job
        try:
            return pg, t, bk_search(pg, t, args.max_rounds, model)
        except Infeasible:
            return pg, t, None

    for pg, t, pt in _pmap(args, cell, [(pg, t) for pg in pgs for t in targets]):
        row = dict.fromkeys(rep.columns)
        row.update(pg=pg, target=t)
        if pt is None:
            rep.status = EXIT_INFEASIBLE
            rep.notes.append(f"infeasible: pg={pg:g} target={t:g}")
        else:
            ds = pt.param("distances")
            row.update(achieved=pt.p_out, volume_unit_cells=pt.volume, rounds=len(ds))
            for i, d in enumerate(ds, 1):
                row[f"d{i}"] = d
            if not ds:
                rep.notes.append(f"none required: pg={pg:g} target={t:g}")
        rep.rows.append(row)
    rep.meta = {"bk_model": args.bk_model, "max_rounds": args.max_rounds}
    return rep


def cmd_bk_frontier(args) -> Report:
    from ftcost.distillation import bk_frontier, bk_tub_frontier

    pgs = args.pg or [1e-3]
    model = _model(args)
    rep = Report("bk-frontier", ["pg", "p_out", "volume_unit_cells", "rounds", "d1", "d2", "d3"])
    fn = bk_tub_frontier if args.tub else bk_frontier
    for pg in pgs:
        for pt in fn(pg, args.max_rounds, model):
            if args.pout and pt.p_out < min(args.pout):
                continue
            row = dict.fromkeys(rep.columns)
            ds = pt.param("distances")
            row.update(pg=pg, p_out=pt.p_out, volume_unit_cells=pt.volume, rounds=len(ds))
            for i, d in enumerate(ds, 1):
                row[f"d{i}"] = d
            rep.rows.append(row)
    rep.meta = {"bk_model": args.bk_model, "tub": args.tub}
    return rep


def cmd_toffoli_compare(args) -> Report:
    from ftcost.distillation import t_supply
    from ftcost.toffoli import Variant, best_toffoli, toffoli_quote

    pgs = args.pg or [1e-3]
    targets = args.pout or [10.0**-e for e in range(4, 16)]
    variants = [Variant(v) for v in (args.variant or [v.value for v in Variant])]
    model = _model(args)
    rep = Report(
        "toffoli-compare",
        ["pg", "target", "variant", "p_out", "volume_unit_cells", "d1", "r", "d2",
         "t_p_out", "t_volume", "t_source", "seven_t_volume", "seven_t_tub_volume",
         "ratio_seven_t", "ratio_seven_t_tub"],
    )
    for pg in pgs:
        opt, tub = t_supply(pg, model), t_supply(pg, model, tub=True)

        def row_for(t):
            row = dict.fromkeys(rep.columns)
            row.update(pg=pg, target=t)
            try:
                q = best_toffoli(pg, t, opt, variants)
            except Infeasible:
                return row, False
            tp = q.t_gate_point
            source = tp.family if tp.family != "bk" else "bk" + "".join(f"-{d}" for d in tp.param("distances"))
            row.update(
                variant=q.design.variant.value, p_out=q.p_out, volume_unit_cells=q.volume,
                d1=q.design.d1, r=q.design.r, d2=q.design.d2,
                t_p_out=tp.p_out, t_volume=tp.volume, t_source=source,
            )
            for key, supply in (("seven_t", opt), ("seven_t_tub", tub)):
                try:
                    ref = toffoli_quote(Variant.SevenT, pg, t, supply).volume
                except Infeasible:
                    continue
                row[f"{key}_volume"] = ref
                row[f"ratio_{key}"] = ref / q.volume if q.volume > 0 else None
            return row, True

        for row, ok in _pmap(args, row_for, targets):
            if not ok:
                rep.status = EXIT_INFEASIBLE
                rep.notes.append(f"infeasible: pg={pg:g} target={row['target']:g}")
            rep.rows.append(row)
    rep.meta = {"bk_model": args.bk_model, "variants": [v.value for v in variants]}
    return rep


def cmd_rotation_compare(args) -> Report:
    from ftcost.rotations import RotationMethod, default_supplies, policy_crossover, rotation_quote

    pgs = args.pg or [1e-3]
    targets = args.pout or [10.0 ** -(4 + 0.5 * i) for i in range(25)]
    methods = [RotationMethod(m) for m in (args.method or [m.value for m in RotationMethod])]
    model = _model(args)
    cols = ["pg", "target"] + [f"{m.value}_volume" for m in methods] + ["cheapest"]
    rep = Report("rotation-compare", cols)
    crossings = {}
    for pg in pgs:
        supplies = default_supplies(pg, model)
        for t in targets:
            row = dict.fromkeys(cols)
            row.update(pg=pg, target=t)
            best = None
            for m in methods:
                try:
                    v = rotation_quote(m, pg, t, supplies).volume
                except Infeasible:
                    continue
                row[f"{m.value}_volume"] = v
                if best is None or v < best[0]:
                    best = (v, m.value)
            row["cheapest"] = best[1] if best else None
            rep.rows.append(row)
        if RotationMethod.KMM in methods and RotationMethod.PhaseKickback in methods:
            c = policy_crossover(pg, supplies)
            crossings[f"{pg:g}"] = c.p_out
            rep.notes.append(
                f"crossover kmm->pk at pg={pg:g}: "
                + ("none found" if c.p_out is None else _fmt(c.p_out, args.precision))
            )
    rep.meta = {"bk_model": args.bk_model, "crossover_p_out": crossings}
    return rep


def cmd_fourier(args) -> Report:
    from ftcost.analysis import power_law_fit
    from ftcost.fourier import adder_cost, fourier_state_volume, rounds_required, toffoli_count

    pgs = args.pg or [1e-3]
    ns = args.n or list(range(8, 65, 4))
    if any(n < 6 for n in ns):
        raise argparse.ArgumentTypeError("--n must be >= 6")
    rep = Report(
        "fourier-cost",
        ["pg", "n", "rounds", "distillation_toffolis", "adder_toffolis", "adder_volume", "fourier_volume"],
    )
    fits = {}
    for pg in pgs:
        add_pts, vf_pts = [], []
        for n in ns:
            add = adder_cost(n, pg)
            vf = fourier_state_volume(n, pg).unit_cells
            add_pts.append((n, add.volume.unit_cells))
            vf_pts.append((n, vf))
            rep.rows.append({
                "pg": pg, "n": n, "rounds": rounds_required(n),
                "distillation_toffolis": toffoli_count(n), "adder_toffolis": add.toffoli_count,
                "adder_volume": add.volume.unit_cells, "fourier_volume": vf,
            })
        if len(ns) >= 3:
            fits[f"{pg:g}"] = {
                "adder": list(power_law_fit(add_pts)),
                "fourier": list(power_law_fit(vf_pts)),
            }
    rep.meta = {"fits": fits}
    return rep


def cmd_verify(args) -> Report:
    from ftcost import pauli_oracle as po

    rep = Report("verify", ["check", "weight", "total", "detected", "undetected_harmless", "undetected_failure"])
    rm = po.enumerate_code_errors(po.rm15_check_matrix(), 3)
    for c in rm:
        rep.rows.append({"check": "rm15", "weight": c.weight, "total": c.total, "detected": c.detected,
                         "undetected_harmless": c.harmless, "undetected_failure": c.logical})
    net = po.load_netlist(args.netlist) if args.netlist else po.d2_netlist()
    name = "netlist" if args.netlist else "d2"
    top = args.max_weight if args.max_weight is not None else min(len(net.sites), 2)
    counts = po.propagate_and_enumerate(net, top)
    for c in counts:
        rep.rows.append({"check": name, "weight": c.weight, "total": c.total, "detected": c.detected,
                         "undetected_harmless": c.undetected_harmless, "undetected_failure": c.undetected_failure})
    visible, cancel = po.c4_block_pair_counts()
    rep.rows.append({"check": "c4-pairs", "weight": 2, "total": visible + cancel, "detected": visible,
                     "undetected_harmless": None, "undetected_failure": cancel})

    rm3 = rm[2].logical
    rep.notes.append(f"RM15 w=3 undetected-logical: {rm3}")
    by_w = {c.weight: c for c in counts}
    if 1 in by_w:
        rep.notes.append(f"{name.upper()} w=1 detected: {by_w[1].detected}/{by_w[1].total}")
    if 2 in by_w:
        c = by_w[2]
        rep.notes.append(
            f"{name.upper()} w=2 undetected-failure: {c.undetected_failure}/{c.total} "
            f"(detected {c.detected}, undetected-harmless {c.undetected_harmless})"
        )
    rep.notes.append(f"C4 block pairs: stabilizer-visible {visible}, same-qubit {cancel}")
    rep.meta = {"rm15_weight3_logical": rm3, "c4_pairs": [visible, cancel]}

    sums_ok = all(c.detected + c.harmless + c.logical == c.total for c in rm) and all(
        c.detected + c.undetected_harmless + c.undetected_failure == c.total for c in counts
    )
    if not sums_ok or rm3 != 35 or any(c.logical for c in rm[:2]) or (visible, cancel) != (24, 4):
        raise InvariantViolation("oracle counts are inconsistent")
    return rep


def cmd_fit(args) -> Report:
    from ftcost.analysis import FIT_RANGE, cost_curve, power_law_fit
    from ftcost.distillation import bk_frontier, bk_tub_frontier
    from ftcost.fourier import adder_cost, fourier_state_volume
    from ftcost.surface_cost import plumbing_curve

    pgs = args.pg or [1e-3]
    curves = args.curve or ["plumbing", "bk", "bk-tub"]
    model = _model(args)
    rep = Report("fit", ["curve", "pg", "coefficient", "exponent", "x_min", "x_max", "points"])
    for pg in pgs:
        for curve in curves:
            if curve == "plumbing":
                pts = [(-math.log10(p), v) for p, v in plumbing_curve(pg)]
                lo, hi = FIT_RANGE
            elif curve in ("bk", "bk-tub"):
                frontier = (bk_frontier if curve == "bk" else bk_tub_frontier)(pg, model=model)
                pts = cost_curve(frontier)
                lo, hi = FIT_RANGE
            else:
                ns = range(8, 65)
                fn = (lambda n: adder_cost(n, pg).volume.unit_cells) if curve == "adder" else (
                    lambda n: fourier_state_volume(n, pg).unit_cells)
                pts = [(n, fn(n)) for n in ns]
                lo, hi = 8, 64
            used = [(x, y) for x, y in pts if lo <= x <= hi]
            a, b = power_law_fit(used)
            rep.rows.append({"curve": curve, "pg": pg, "coefficient": a, "exponent": b,
                             "x_min": lo, "x_max": hi, "points": len(used)})
    rep.meta = {"bk_model": args.bk_model, "fit_range": list(FIT_RANGE)}
    return rep


COMMANDS = {
    "bk-table": cmd_bk_table,
    "bk-frontier": cmd_bk_frontier,
    "toffoli-compare": cmd_toffoli_compare,
    "rotation-compare": cmd_rotation_compare,
    "fourier-cost": cmd_fourier,
    "verify": cmd_verify,
    "fit": cmd_fit,
}


# ------------------------------------------------------------- rendering

def _fmt(value, precision: int) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.{precision}g}"
    return str(value)


def _json_value(value, precision: int):
    if isinstance(value, float):
        return float(f"{value:.{precision}g}") if math.isfinite(value) else None
    if isinstance(value, dict):
        return {k: _json_value(v, precision) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v, precision) for v in value]
    return value


def render(rep: Report, fmt: str, precision: int) -> str:
    if fmt == "json":
        doc = {
            "command": rep.command,
            "columns": rep.columns,
            "rows": [{c: _json_value(r.get(c), precision) for c in rep.columns} for r in rep.rows],
            "meta": _json_value(rep.meta, precision),
            "notes": rep.notes,
        }
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    cells = [[_fmt(r.get(c), precision) for c in rep.columns] for r in rep.rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(rep.columns)
        w.writerows(cells)
        return buf.getvalue()
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(rep.columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(rep.columns, widths)).rstrip()]
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    lines += rep.notes
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rep = COMMANDS[args.command](args)
    except argparse.ArgumentTypeError as exc:
        parser.error(str(exc))  # exits with status 2
    except InvariantViolation as exc:
        print(f"ftcost: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except Infeasible as exc:
        print(f"ftcost: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (FTCostError, OSError) as exc:
        print(f"ftcost: {exc}", file=sys.stderr)
        return EXIT_ARGS
    text = render(rep, args.format, args.precision)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.format == "csv":
        for note in rep.notes:
            print(note, file=sys.stderr)
    return rep.status


if __name__ == "__main__":
    sys.exit(main())
