"""Command-line frontend.

Subcommands::

    revan generate   MODEL N PARAM [--seed S] [--index I] [-o FILE]
    revan compute    GRAPH_FILE
    revan ensemble   --model ER --n 125 500 --logspace 0.001 1 20 -R 1000 -o sweep.csv
    revan collapse   A.csv B.csv [--index R1 ...] [--r-min 10] [--tolerance 0.05]
    revan predict    INDEX (--r 1 10 100 | --logspace 1 1000 7)

Exit codes: 0 success or criteria met, 1 criteria failed, 2 usage or
parameter error, 3 input format error. Configuration comes from flags only.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .dense_limit import (
    DEFAULT_R_MIN,
    collapse_deviation,
    predict,
    prediction_deviation,
    revan_kinds,
)
from .ensemble import EnsembleSpec, run_ensemble
from .errors import DomainError, FormatError, ParameterError, RevanError, UsageError
from .graph import degree_profile, format_edge_list, read_edge_list
from .indices import INDEX_NAMES, PRODUCT_NAMES, IndexKind, full_report
from .models import PRNG_NAME, SQRT2, SeedSpec, generate
from .sweep import SweepRow, atomic_write_text, curves_by_n, format_float, format_rows, read_rows

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_FORMAT = 0, 1, 2, 3

DEFAULT_SIZES = (125, 250, 500, 1000)
DEFAULT_GRID = {"ER": (1e-3, 1.0, 25), "RG": (1e-2, SQRT2, 25)}
PARAM_MAX = {"ER": 1.0, "RG": SQRT2}


def _param(text: str) -> float:
    """Float, also accepting ``sqrt2`` for the RG diameter."""
    if text.strip().lower() in ("sqrt2", "sqrt(2)"):
        return SQRT2
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _fmt(x: float) -> str:
    if math.isfinite(x) and x == int(x) and abs(x) < 2**53:
        return str(int(x))
    return format_float(x)


# --- generate ---------------------------------------------------------------

def cmd_generate(args) -> int:
    g = generate(args.model, args.n, args.param, SeedSpec(args.seed, args.index))
    text = format_edge_list(g)
    if args.out:
        atomic_write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# --- compute ----------------------------------------------------------------

def cmd_compute(args) -> int:
    g = read_edge_list(args.graph_file)
    p = degree_profile(g)
    rep = full_report(g, p)
    out = sys.stdout
    print(f"n {g.n}", file=out)
    print(f"m {g.m}", file=out)
    print(f"Delta {p.delta_max}", file=out)
    print(f"delta {p.delta_min}", file=out)
    print(f"connected {'yes' if g.is_connected() else 'no'}", file=out)
    for name, value in rep.as_dict().items():
        print(f"{name} {_fmt(value)}", file=out)
    bad = [k for k in PRODUCT_NAMES if rep.is_degenerate(k)]
    print(f"degenerate {','.join(bad) if bad else '-'}", file=out)
    return EXIT_OK


# --- ensemble ---------------------------------------------------------------

def _grid(args, model) -> list[float]:
    if args.grid:
        values = list(args.grid)
    else:
        start, stop, count = args.logspace if args.logspace else DEFAULT_GRID[model]
        count = int(count)
        if count < 1 or not (start > 0 and stop > 0):
            raise ParameterError("log-spaced grid needs start > 0, stop > 0, count >= 1")
        values = [float(x) for x in np.geomspace(start, stop, count)] if count > 1 else [float(start)]
    hi = PARAM_MAX[model]
    for x in values:
        if not 0.0 <= x <= hi:
            raise ParameterError(f"grid value {x!r} outside [0, {hi:g}] for model {model}")
    return values


def cmd_ensemble(args) -> int:
    model = args.model
    grid = _grid(args, model)
    sizes = list(args.n)
    # validate every point up front so bad input fails before any work
    specs = [
        EnsembleSpec(model, n, x, args.realizations, args.seed) for n in sizes for x in grid
    ]
    log = sys.stderr
    print(f"# {model} sweep: n={sizes}, {len(grid)} points, R={args.realizations}, "
          f"seed={args.seed}, rng={PRNG_NAME}", file=log)
    rows = []
    pool = ProcessPoolExecutor(max_workers=args.threads) if args.threads > 1 else None
    try:
        for k, spec in enumerate(specs, start=1):
            t0 = time.perf_counter()
            stats = run_ensemble(spec, workers=args.threads, executor=pool)
            rows.append(SweepRow.from_stats(model, spec.n, spec.param, stats))
            print(f"[{k}/{len(specs)}] {model} n={spec.n} param={spec.param:.6g} "
                  f"<d>={stats.mean('d'):.4g} <r>={stats.mean('r'):.4g} "
                  f"({time.perf_counter() - t0:.1f}s)", file=log)
    finally:
        if pool is not None:
            pool.shutdown()
    text = format_rows(rows)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        atomic_write_text(args.out, text)
    return EXIT_OK


# --- collapse ---------------------------------------------------------------

def cmd_collapse(args) -> int:
    per_file = [read_rows(path) for path in args.csv_files]
    kinds = [IndexKind.from_name(k) for k in args.index] if args.index else revan_kinds()
    models = sorted({row.model for rows in per_file for row in rows})
    tol = args.tolerance
    ok = True
    print(f"# r_min={args.r_min:g} tolerance={tol:g}")
    for model in models:
        for kind in kinds:
            # one curve per (file, n) series of this model
            series = []
            for rows in per_file:
                mine = [r for r in rows if r.model == model]
                revan = curves_by_n(mine, kind)
                degree = curves_by_n(mine, kind.counterpart())
                series.extend((key[1], revan[key], degree[key]) for key in revan)
            parts = []
            if len(series) >= 2:
                dev = collapse_deviation([c for _, c, _ in series], args.r_min)
                ok &= dev <= tol
                parts.append(f"collapse={dev:.6g}")
            for n, curve, deg in series:
                pdev = prediction_deviation(curve, kind, args.r_min)
                ok &= pdev <= tol
                parts.append(f"prediction[n={n}]={pdev:.6g}")
                if args.compare_degree:
                    cdev = collapse_deviation([curve, deg], args.r_min)
                    ok &= cdev <= tol
                    parts.append(f"vs_{kind.counterpart().name}[n={n}]={cdev:.6g}")
            print(f"{model} {kind.name} " + " ".join(parts))
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


# --- predict ----------------------------------------------------------------

def cmd_predict(args) -> int:
    kind = IndexKind.from_name(args.index)
    if args.r:
        grid = list(args.r)
    else:
        start, stop, count = args.logspace
        grid = [float(x) for x in np.geomspace(start, stop, int(count))]
    values = [predict(kind, x).value for x in grid]
    print(f"r {kind.name}")
    for x, y in zip(grid, values):
        print(f"{format_float(x)} {format_float(y)}")
    return EXIT_OK


# --- parser -----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="revan", description="Revan-degree topological indices on random graphs")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write one random graph as an edge list")
    p.add_argument("model", choices=("ER", "RG"))
    p.add_argument("n", type=int)
    p.add_argument("param", type=_param, help="p for ER, ell for RG")
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--index", type=int, default=0, help="realization index (default 0)")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("compute", help="all 16 indices of an edge-list file")
    p.add_argument("graph_file")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("ensemble", help="ensemble sweep to CSV")
    p.add_argument("--model", choices=("ER", "RG"), required=True)
    p.add_argument("--n", type=int, nargs="+", default=list(DEFAULT_SIZES))
    g = p.add_mutually_exclusive_group()
    g.add_argument("--grid", type=_param, nargs="+", help="explicit parameter values")
    g.add_argument("--logspace", type=_param, nargs=3, metavar=("START", "STOP", "COUNT"))
    p.add_argument("-R", "--realizations", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("-o", "--out", required=True, help="output CSV ('-' for stdout)")
    p.set_defaults(func=cmd_ensemble)

    p = sub.add_parser("collapse", help="scaling-collapse and dense-limit report")
    p.add_argument("csv_files", nargs="+")
    p.add_argument("--index", action="append", help="index name (repeatable; default all Revan)")
    p.add_argument("--r-min", type=float, default=DEFAULT_R_MIN)
    p.add_argument("--tolerance", type=float, default=0.05)
    p.add_argument("--compare-degree", action="store_true",
                   help="also compare each Revan curve with its degree counterpart")
    p.set_defaults(func=cmd_collapse)

    p = sub.add_parser("predict", help="dense-limit prediction table")
    p.add_argument("index", help=f"one of {', '.join(INDEX_NAMES)}")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--r", type=float, nargs="+")
    g.add_argument("--logspace", type=float, nargs=3, metavar=("START", "STOP", "COUNT"))
    p.set_defaults(func=cmd_predict)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("revan: error: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"revan: format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (ParameterError, DomainError, UsageError) as exc:
        print(f"revan: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RevanError as exc:
        print(f"revan: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"revan: {exc}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
