"""Command-line entry point: ``rcm-lab <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 cap or domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bethe, partition, roots, verify
from .config import CapExceeded
from .graphs import Graph, load_graph, named_graph, random_regular
from .rank2 import SpinModel2

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_number(text: str) -> Fraction | float:
    """``5``, ``5/2`` -> exact Fraction; anything with a decimal point or exponent -> float."""
    s = text.strip()
    try:
        if "/" in s or s.lstrip("+-").isdigit():
            return Fraction(s)
        return float(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def parse_grid(text: str) -> list[float]:
    """Either ``start:stop:count`` (inclusive, evenly spaced) or a comma list."""
    try:
        if ":" in text:
            start, stop, count = text.split(":")
            k = int(count)
            if k < 1:
                return []
            return [float(x) for x in np.linspace(float(start), float(stop), k)]
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid spec: {text!r}") from exc


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list: {text!r}") from exc


def _num(x):
    """JSON-ready number: exact integers stay integers, everything else a float."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else float(x)
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


def _graph(args) -> Graph:
    if args.graph and args.graph_file:
        raise UsageError("give either --graph or --graph-file, not both")
    if args.graph_file:
        path = Path(args.graph_file)
        try:
            text = path.read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from exc
        try:
            return load_graph(text, name=path.stem)
        except ValueError as exc:
            raise UsageError(f"{path}: {exc}") from exc
    if args.graph:
        try:
            return named_graph(args.graph)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    raise UsageError("a graph is required (--graph or --graph-file)")


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=True) + "\n"


# -- commands -------------------------------------------------------------------

def cmd_partition(args) -> int:
    g = _graph(args)
    q, w = args.q, args.w
    exact = isinstance(q, Fraction) and isinstance(w, Fraction)
    if not exact:
        q, w = float(q), float(w)
    z = partition.z_rc(g, q, w)
    report: dict = {"graph": g.name, "n": g.n, "m": g.m, "q": _num(q), "w": _num(w), "z_rc": _num(z)}
    if exact and isinstance(z, Fraction) and z.denominator != 1:
        report["z_rc_exact"] = str(z)
    if w == 0:
        tz = q ** g.n
    elif g.m <= partition.CAPS.tutte_edges:
        tz = partition.z_rc_via_tutte(g, q, w)
    else:
        tz = None
    report["z_via_tutte"] = _num(tz)
    qf, wf, zf = float(q), float(w), float(z)
    report["z1"] = partition.z1(g, qf, wf)
    report["z2"] = partition.z2(g, qf, wf) if qf > 1 else None
    ineq: dict = {"rank1": zf >= report["z1"] * (1 - 1e-9) if qf >= 1 else zf <= report["z1"] * (1 + 1e-9)}
    if qf >= 2:
        ineq["rank2"] = zf >= report["z2"] * (1 - 1e-9)
    elif qf > 1:
        ineq["rank2"] = zf <= report["z2"] * (1 + 1e-9)
    report["inequalities"] = ineq
    _emit(args, _dumps(report))
    return EXIT_OK


def cmd_phi(args) -> int:
    q, w, d = float(args.q), float(args.w), args.d
    rep = bethe.classify_phase(q, w, d) if q >= 2 else bethe.phase_report(q, w, d)
    _emit(args, _dumps(rep.to_dict()))
    return EXIT_OK


SWEEP_HEADER = ["q", "w", "d", "w_c", "phi", "phi_rank1", "regime", "t0", "r_c"]


def _sweep_row(point):
    q, w, d = point
    rep = bethe.phase_report(q, w, d)
    return [q, w, d, rep.w_c, rep.phi, rep.phi_rank1, rep.regime, rep.t0, rep.r_c]


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    for row in rows:
        wr.writerow([_cell(x) for x in row])
    return buf.getvalue()


def _pmap(fn, items):
    workers = verify.worker_count()
    if workers > 1 and len(items) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def cmd_sweep(args) -> int:
    if (args.w_grid is None) == (args.q_grid is None):
        raise UsageError("give exactly one of --w-grid or --q-grid")
    if args.w_grid is not None:
        if args.q is None:
            raise UsageError("--w-grid needs --q")
        points = [(float(args.q), w, args.d) for w in args.w_grid]
    else:
        if args.w is None:
            raise UsageError("--q-grid needs --w")
        points = [(q, float(args.w), args.d) for q in args.q_grid]
    if not points:
        raise UsageError("empty grid")
    _emit(args, _csv(SWEEP_HEADER, _pmap(_sweep_row, points)))
    return EXIT_OK


CONVERGE_HEADER = ["n", "seed", "log_z2_per_vertex", "log_phi", "gap", "log_z_per_vertex", "error"]


def _converge_row(job):
    n, seed, d, q, w, z_cap = job
    try:
        g = random_regular(n, d, seed)
    except (ValueError, RuntimeError) as exc:
        return [n, seed, None, None, None, None, str(exc)]
    lz2 = partition.log_z2(g, q, w) / n
    lphi = math.log(bethe.phi(q, w, d))
    lz = math.log(partition.z_rc(g, q, w)) / n if g.m <= z_cap else None
    return [n, seed, lz2, lphi, abs(lz2 - lphi), lz, None]


def cmd_converge(args) -> int:
    q, w = float(args.q), float(args.w)
    bethe.phi(q, w, args.d)   # domain check before any work
    jobs = [(n, s, args.d, q, w, args.z_cap) for n in args.n for s in args.seeds]
    if not jobs:
        raise UsageError("empty n or seed list")
    _emit(args, _csv(CONVERGE_HEADER, _pmap(_converge_row, jobs)))
    return EXIT_OK


def cmd_verify(args) -> int:
    names = args.only or list(verify.SUITES)
    checks = verify.run_suites(names)
    failed = [c for c in checks if not c.passed]
    if args.format == "json":
        text = _dumps([{"suite": c.suite, "case": c.case, "value": c.value, "passed": c.passed}
                       for c in checks])
    else:
        lines = [c.line() for c in checks]
        lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_roots(args) -> int:
    g = _graph(args)
    d = g.require_regular()
    m = SpinModel2.random_cluster(float(args.q), float(args.w))
    rep = roots.circle_check(g, m, d)
    out = {
        "graph": g.name, "d": d, "q": float(args.q), "w": float(args.w),
        "target_radius": rep.target_radius,
        "max_radial_deviation": rep.max_radial_deviation,
        "residual_max": rep.residual_max,
        "roots": [[z.real, z.imag] for z in rep.roots],
    }
    _emit(args, _dumps(out))
    return EXIT_OK


# -- parser -----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rcm-lab", description="Random cluster and 2-spin model computations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_opts(sp):
        sp.add_argument("--graph", help="named graph id, e.g. k5, petersen, cycle:6")
        sp.add_argument("--graph-file", help="edge-list file: header 'n m' then m lines 'u v'")

    def out_opt(sp):
        sp.add_argument("--out", help="write to this path instead of stdout")

    sp = sub.add_parser("partition", help="exact Z and its rank-1/rank-2 approximations")
    graph_opts(sp)
    sp.add_argument("--q", type=parse_number, required=True)
    sp.add_argument("--w", type=parse_number, required=True)
    out_opt(sp)
    sp.set_defaults(func=cmd_partition)

    sp = sub.add_parser("phi", help="Bethe value and phase report")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--q", type=parse_number, required=True)
    sp.add_argument("--w", type=parse_number, required=True)
    out_opt(sp)
    sp.set_defaults(func=cmd_phi)

    sp = sub.add_parser("sweep", help="CSV sweep of the phase report over w or q")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--q", type=parse_number)
    sp.add_argument("--w", type=parse_number)
    sp.add_argument("--w-grid", type=parse_grid, help="start:stop:count or a,b,c")
    sp.add_argument("--q-grid", type=parse_grid, help="start:stop:count or a,b,c")
    out_opt(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", help="run the invariant suites on the built-in corpus")
    sp.add_argument("--only", action="append", choices=verify.SUITES)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    out_opt(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("converge", help="(1/n) ln Z2 against ln Phi on random regular graphs")
    sp.add_argument("--d", type=int, default=3)
    sp.add_argument("--q", type=parse_number, required=True)
    sp.add_argument("--w", type=parse_number, required=True)
    sp.add_argument("--n", type=parse_int_list, default=[8, 12, 16, 20])
    sp.add_argument("--seeds", type=parse_int_list, default=[0, 1, 2, 3, 4])
    sp.add_argument("--z-cap", type=int, default=18,
                    help="also compute exact ln Z/n when e(G) is at most this")
    out_opt(sp)
    sp.set_defaults(func=cmd_converge)

    sp = sub.add_parser("roots", help="zeros of F_G(v(t1)|z) for the random cluster surrogate")
    graph_opts(sp)
    sp.add_argument("--q", type=parse_number, required=True)
    sp.add_argument("--w", type=parse_number, required=True)
    out_opt(sp)
    sp.set_defaults(func=cmd_roots)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rcm-lab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"rcm-lab: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ValueError, ArithmeticError) as exc:
        print(f"rcm-lab: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
