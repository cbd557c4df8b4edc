"""Command-line front end: approximate, sweep, verify, bound."""

import argparse
import csv
import datetime
import json
import os
import sys
import time

import numpy as np

from . import analysis, expr, verify
from .errors import (
    BernlatError,
    BoundaryNotIntegerError,
    CutoffOutOfRangeError,
    EstimateOnlyModulusError,
    NonFiniteError,
    ParseError,
    SearchSpaceTooLargeError,
    StructuralViolationError,
)
from .funcs import EmpiricalModulus, HoelderModulus, LipschitzModulus, certify
from .quantizer import choose_t, quantize_function, rho

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_BOUNDARY = 3
EXIT_STRUCTURAL = 4

SCHEMA_VERSION = 1
SWEEP_HEADER = [
    "n",
    "t",
    "sup_error",
    "bernstein_error",
    "bound_main",
    "bound_simple",
    "grid_points",
    "wall_time_ms",
]


def _fmt(v):
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _deterministic():
    return "SOURCE_DATE_EPOCH" in os.environ


def _created_stamp():
    # honor the reproducible-builds convention so identical invocations
    # can produce byte-identical documents
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        dt = datetime.datetime.fromtimestamp(int(epoch), tz=datetime.timezone.utc)
    else:
        dt = datetime.datetime.now(tz=datetime.timezone.utc)
    return dt.isoformat()


def _parse_modulus(text):
    if text is None:
        return EmpiricalModulus(2049)
    kind, _, rest = text.partition(":")
    try:
        if kind == "lipschitz":
            parts = [float(p) for p in rest.split(",")]
            if len(parts) == 1:
                return LipschitzModulus(parts[0])
            if len(parts) == 2:
                return LipschitzModulus(parts[0], cap=parts[1])
        elif kind == "hoelder":
            c, a = (float(p) for p in rest.split(","))
            return HoelderModulus(c, a)
        elif kind == "empirical":
            return EmpiricalModulus(int(rest))
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad modulus spec {text!r}: {exc}") from exc
    raise argparse.ArgumentTypeError(
        f"unknown modulus kind {kind!r} (use lipschitz:L[,cap] | hoelder:C,alpha | empirical:m)"
    )


def _load_table(path):
    xs, fs = [], []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["x", "f"]:
            raise ValueError(f"{path}: expected header 'x,f'")
        for row in reader:
            if not row:
                continue
            xs.append(float(row[0]))
            fs.append(float(row[1]))
    xs = np.asarray(xs)
    fs = np.asarray(fs)
    if len(xs) < 2 or np.any(np.diff(xs) <= 0):
        raise ValueError(f"{path}: x column must be strictly increasing, >= 2 rows")
    if xs[0] != 0.0 or xs[-1] != 1.0:
        raise ValueError(f"{path}: table must start at x=0 and end at x=1")
    return lambda x: float(np.interp(x, xs, fs))


def _build_function(args):
    modulus = _parse_modulus(getattr(args, "modulus", None))
    if getattr(args, "f", None) is not None:
        evaluator = expr.compile_function(args.f)
        text = args.f
    elif getattr(args, "table", None) is not None:
        evaluator = _load_table(args.table)
        text = f"table:{args.table}"
    else:
        raise ValueError("one of --f or --table is required")
    tol = getattr(args, "boundary_tol", 1e-9)
    spec = certify(evaluator, tolerance=tol, modulus=modulus)
    return spec, text


def _parse_n_values(args):
    if getattr(args, "n_list", None):
        ns = [int(v) for v in args.n_list.split(",")]
    elif getattr(args, "n_geom", None):
        start, factor, count = (int(v) for v in args.n_geom.split(","))
        ns = [start * factor**i for i in range(count)]
    else:
        raise ValueError("one of --n-list or --n-geom is required")
    if any(n < 1 for n in ns):
        raise ValueError("degrees must be >= 1")
    return ns


def _print_report(report, epsilon_n, estimate_only):
    suffix = " (estimate-only modulus)" if estimate_only else ""
    lines = [
        ("n", str(report.n)),
        ("t", str(report.t)),
        ("epsilon_n", _fmt(epsilon_n)),
        ("sup_error", _fmt(report.sup_error)),
        ("bernstein_error", _fmt(report.bernstein_error)),
        ("bound_main", _fmt(report.bound_main) + suffix),
        ("bound_simple", _fmt(report.bound_simple) + suffix),
        ("grid_points", str(report.grid_points)),
    ]
    width = max(len(k) for k, _ in lines)
    for k, v in lines:
        print(f"{k:<{width}}  {v}")


def cmd_approximate(args):
    spec, text = _build_function(args)
    approx, _trace = quantize_function(spec, args.n, args.t, rounding=args.rounding)
    report = analysis.analyze(spec, approx, m=args.grid, strict=False)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "n": approx.n,
        "t": approx.t,
        "epsilon_n": approx.epsilon_n,
        "q": [int(v) for v in approx.q],
        "f0": spec.f0,
        "f1": spec.f1,
        "function_text": text,
        "rounding_rule": args.rounding,
        "created": _created_stamp(),
    }
    with open(args.out, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    _print_report(report, approx.epsilon_n, not spec.modulus.analytic)
    return EXIT_OK


def _sweep_rows(spec, ns, grid):
    rows = []
    for n in ns:
        t0 = time.perf_counter()
        approx, _ = quantize_function(spec, n)
        report = analysis.analyze(spec, approx, m=grid, strict=False)
        ms = 0.0 if _deterministic() else (time.perf_counter() - t0) * 1000.0
        rows.append(
            {
                "n": n,
                "t": approx.t,
                "sup_error": report.sup_error,
                "bernstein_error": report.bernstein_error,
                "bound_main": report.bound_main,
                "bound_simple": report.bound_simple,
                "grid_points": report.grid_points,
                "wall_time_ms": ms,
            }
        )
    return rows


def cmd_sweep(args):
    spec, _text = _build_function(args)
    ns = _parse_n_values(args)
    rows = _sweep_rows(spec, ns, args.grid)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        out.write(",".join(SWEEP_HEADER) + "\n")
        for r in rows:
            out.write(",".join(_fmt(r[k]) for k in SWEEP_HEADER) + "\n")
    finally:
        if args.out:
            out.close()
    if args.plot:
        from .plots import plot_sweep

        plot_sweep(rows, args.plot)
    return EXIT_OK


def cmd_verify(args):
    results = verify.run_all(n_max=args.n_max, grid=args.grid, seed=args.seed)
    all_ok = True
    width = max(len(name) for name, _, _ in results)
    for name, ok, worst in results:
        status = "PASS" if ok else "FAIL"
        print(f"{status}  {name:<{width}}  max residual {_fmt(float(worst))}")
        all_ok = all_ok and ok
    return EXIT_OK if all_ok else EXIT_VERIFY_FAIL


def cmd_bound(args):
    mod = _parse_modulus(args.modulus)
    if not mod.analytic:
        print("bound requires an analytic modulus (lipschitz or hoelder)", file=sys.stderr)
        return EXIT_USAGE
    # rho depends on f only through its modulus
    spec = certify(lambda x: 0.0, modulus=mod)
    ns = _parse_n_values(args)
    alpha = mod.alpha if isinstance(mod, HoelderModulus) else None
    rows = []
    for n in ns:
        value, t_star = rho(spec, n)
        row = {
            "n": n,
            "rho": value,
            "t_star": t_star,
            "t_default": choose_t(n),
        }
        if alpha is not None:
            row["t_hoelder"] = choose_t(n, alpha)
        rows.append(row)
    header = list(rows[0].keys())
    widths = [max(len(h), 22) for h in header]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    for r in rows:
        print("  ".join(_fmt(r[h]).ljust(w) for h, w in zip(header, widths)))
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(",".join(header) + "\n")
            for r in rows:
                fh.write(",".join(_fmt(r[h]) for h in header) + "\n")
    if args.plot:
        from .plots import plot_bound

        plot_bound(rows, args.plot)
    return EXIT_OK


def _add_function_flags(p):
    p.add_argument("--f", help="expression for f(x), e.g. 'sin(pi*x)'")
    p.add_argument("--table", help="CSV file with header x,f (piecewise-linear)")
    p.add_argument(
        "--modulus",
        help="lipschitz:L[,cap] | hoelder:C,alpha | empirical:m (default empirical:2049)",
    )
    p.add_argument("--boundary-tol", type=float, default=1e-9)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bernlat",
        description="Integer-coefficient approximation on [0,1] via the scaled Bernstein basis lattice",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("approximate", help="construct one approximant and report errors")
    _add_function_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, default=None, help="cutoff (default floor(n^(2/3)/2))")
    p.add_argument("--grid", type=int, default=None, help="sup-norm grid points")
    p.add_argument("--out", default="approximant.json")
    p.add_argument("--rounding", choices=("half-even", "half-up", "half-down"), default="half-even")
    p.set_defaults(func=cmd_approximate)

    p = sub.add_parser("sweep", help="error/bound table over a range of degrees")
    _add_function_flags(p)
    p.add_argument("--n-list", help="comma-separated degrees")
    p.add_argument("--n-geom", help="start,factor,count")
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--out", default=None, help="CSV path (default stdout)")
    p.add_argument("--plot", default=None, help="also render a figure to this file")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the identity/invariant suites")
    p.add_argument("--n-max", type=int, default=256)
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="table of the optimized bound and cutoffs")
    p.add_argument("--modulus", required=True)
    p.add_argument("--n-list", help="comma-separated degrees")
    p.add_argument("--n-geom", help="start,factor,count")
    p.add_argument("--out", default=None, help="CSV path")
    p.add_argument("--plot", default=None, help="also render a figure to this file")
    p.set_defaults(func=cmd_bound)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except BoundaryNotIntegerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUNDARY
    except StructuralViolationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL
    except (
        ParseError,
        CutoffOutOfRangeError,
        EstimateOnlyModulusError,
        SearchSpaceTooLargeError,
        NonFiniteError,
        BernlatError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
