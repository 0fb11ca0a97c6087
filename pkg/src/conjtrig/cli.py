"""Command-line frontend.

Every command prints one envelope (JSON) or one flat table (CSV) on stdout.

Exit codes: 0 success, 2 invalid input, 3 internal-consistency violation,
4 numerical non-convergence.
"""

import argparse
import csv
import io
import json
import logging
import math
import sys

from . import __version__
from .chaos_sim import MapSpec, SimulationDiverged, multiplier_interval, simulate, spectral_radius
from .config import DEFAULT
from .extremal import MAX_SEARCH_DEGREE, brute_force_sup
from .rootfind import RootFindError, rho, rho1, zero_set
from .schur import margins_bisection, margins_geometric, phi_max
from .trigpoly import (CoefficientVector, NormalizationError, optimal_coeffs, optimal_gamma,
                       theorem_value)

EXIT_OK, EXIT_INPUT, EXIT_CONSISTENCY, EXIT_NUMERICAL = 0, 2, 3, 4
SEARCH_FLOOR = 1e-6

log = logging.getLogger("conjtrig")


class InputError(ValueError):
    pass


def fmt_float(x):
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    text = "%.17g" % x
    if text.lstrip("-").isdigit():
        text += ".0"
    return text


def dumps(obj, indent=2, _level=0):
    """JSON text with every float written to 17 significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return dumps(obj.item(), indent, _level)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def envelope(command, inputs, results):
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "tolerances": DEFAULT.as_dict(),
        "version": __version__,
    }


def write_csv(header, rows, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_float(v) if isinstance(v, float) else v for v in row])


def parse_coeffs(text):
    try:
        vals = [float(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise InputError(f"cannot parse coefficients {text!r}") from exc
    return vals


def read_coeffs_file(path):
    vals = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                vals.append(float(line))
    return vals


def load_coeffs(args):
    if args.coeffs_file:
        vals = read_coeffs_file(args.coeffs_file)
    elif args.coeffs:
        vals = parse_coeffs(args.coeffs)
    else:
        raise InputError("give --coeffs or --coeffs-file")
    if not vals:
        raise InputError("empty coefficient list")
    return CoefficientVector(tuple(vals))


def check_degree(n):
    if n < 1:
        raise InputError(f"--n must be a positive integer, got {n}")
    return n


def _inputs(args):
    return {k: v for k, v in sorted(vars(args).items())
            if k not in ("func", "verbose", "command") and v is not None}


# commands --------------------------------------------------------------------

def cmd_optimal(args, out):
    n = check_degree(args.n)
    a = optimal_coeffs(n).a
    g = optimal_gamma(n).gamma
    I, pm = theorem_value(n), phi_max(n)
    if args.format == "csv":
        write_csv(["n", "j", "a", "gamma", "theorem_value", "phi_max"],
                  [[n, j + 1, a[j], g[j], I, pm] for j in range(n)], out)
    else:
        out.write(dumps(envelope("optimal", _inputs(args), {
            "n": n, "a": list(a), "gamma": list(g),
            "theorem_value": I, "phi_max": pm,
        })) + "\n")
    return EXIT_OK


def _zero_records(zs, degrees):
    recs = []
    for z in zs:
        r = {"t": z.t, "sign_change": z.sign_change, "c_value": z.c_value,
             "multiplicity": z.multiplicity}
        if degrees:
            r["t_degrees"] = math.degrees(z.t)
        recs.append(r)
    return recs


def cmd_rho(args, out):
    coeffs = load_coeffs(args)
    zs = zero_set(coeffs)
    res = {"n": coeffs.n}
    if args.which in ("rho", "both"):
        res["rho"] = rho(zs)
    if args.which in ("rho1", "both"):
        res["rho1"] = rho1(zs)
    res["theorem_value"] = theorem_value(coeffs.n)
    res["zeros"] = _zero_records(zs, args.degrees)
    if args.format == "csv":
        write_csv(["t", "sign_change", "c_value", "multiplicity"],
                  [[z.t, int(z.sign_change), z.c_value, z.multiplicity] for z in zs], out)
    else:
        out.write(dumps(envelope("rho", _inputs(args), res)) + "\n")
    return EXIT_OK


def cmd_margins(args, out):
    coeffs = load_coeffs(args)
    res = {"n": coeffs.n, "phi_max": phi_max(coeffs.n)}
    methods = ["geometric", "bisection"] if args.method == "both" else [args.method]
    found = {}
    for m in methods:
        found[m] = margins_geometric(coeffs) if m == "geometric" else margins_bisection(coeffs, args.tol)
        res[m] = found[m].as_dict()
    if len(found) == 2:
        g, b = found["geometric"], found["bisection"]
        res["discrepancy"] = max(abs(g.k1 - b.k1), abs(g.k2 - b.k2))
    if args.format == "csv":
        write_csv(["method", "k1", "k2", "phi", "unbounded"],
                  [[m, s.k1, s.k2, s.phi, int(s.unbounded)] for m, s in found.items()], out)
    else:
        out.write(dumps(envelope("margins", _inputs(args), res)) + "\n")
    return EXIT_OK


def cmd_verify(args, out):
    n = check_degree(args.n)
    if n > MAX_SEARCH_DEGREE:
        raise InputError(f"brute force is limited to n <= {MAX_SEARCH_DEGREE}")
    report = brute_force_sup(n, args.grid, args.rounds, args.seed, workers=args.workers)
    res = report.as_dict()
    res["slack"] = args.slack
    if report.gap < -SEARCH_FLOOR:
        code, res["status"] = EXIT_CONSISTENCY, "search exceeded the extremal value"
    elif report.gap > args.slack:
        code, res["status"] = EXIT_NUMERICAL, "search did not reach the extremal value within slack"
    else:
        code, res["status"] = EXIT_OK, "ok"
    if args.format == "csv":
        write_csv(["n", "best_value", "theorem_value", "gap", "evaluations", "seed"],
                  [[n, report.best_value, report.theorem_value, report.gap,
                    report.evaluations, report.seed]], out)
    else:
        out.write(dumps(envelope("verify", _inputs(args), res)) + "\n")
    return code


def _map_from_args(args):
    if args.map == "logistic":
        return MapSpec.logistic(args.r)
    if args.map == "cubic":
        return MapSpec.cubic(args.r)
    if args.poly is None or args.fixed_point is None:
        raise InputError("--map poly needs --poly and --fixed-point")
    return MapSpec.polynomial(parse_coeffs(args.poly), args.fixed_point)


def cmd_simulate(args, out):
    try:
        spec = _map_from_args(args)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.coeffs or args.coeffs_file:
        coeffs = load_coeffs(args)
    else:
        coeffs = optimal_coeffs(check_degree(args.n))
    n = coeffs.n
    if args.x0 is None:
        hist = [0.95 * spec.fixed_point] * n
    else:
        hist = parse_coeffs(args.x0)
        if len(hist) == 1:
            hist = hist * n
    if len(hist) != n:
        raise InputError(f"--x0 needs 1 or {n} values")
    if args.steps < n:
        raise InputError(f"--steps must be at least n = {n}")

    lo, hi = multiplier_interval(n, coeffs)
    res = {"map": spec.kind, "params": list(spec.params), "fixed_point": spec.fixed_point,
           "multiplier": spec.multiplier, "multiplier_interval": [lo, hi],
           "spectral_radius": spectral_radius(spec.multiplier, coeffs)}
    try:
        trace = simulate(spec, coeffs, hist, args.steps)
        states = trace.states
        res.update(trace.as_dict())
        res["diverged_at"] = None
    except SimulationDiverged as exc:
        states = exc.states
        res.update({"converged": False, "final_error": math.inf, "horizon_n": n,
                    "coeffs": list(coeffs.a), "steps": args.steps, "diverged_at": exc.step})
    if args.emit_trace:
        with open(args.emit_trace, "w") as fh:
            write_csv(["k", "x", "error"],
                      [[k, x, abs(x - spec.fixed_point)] for k, x in enumerate(states)], fh)
    if args.format == "csv":
        write_csv(["k", "x", "error"],
                  [[k, x, abs(x - spec.fixed_point)] for k, x in enumerate(states)], out)
    else:
        out.write(dumps(envelope("simulate", _inputs(args), res)) + "\n")
    return EXIT_OK


def table_rows(nmax):
    rows = []
    for n in range(1, nmax + 1):
        a = optimal_coeffs(n)
        m = margins_geometric(a)
        rows.append({
            "n": n, "a1": a.a[0], "an": a.a[-1], "a_max": max(a.a),
            "sum_abs": math.fsum(abs(x) for x in a.a),
            "theorem_value": theorem_value(n), "rho1": rho1(a),
            "k2": m.k2, "phi": m.phi, "phi_max": phi_max(n),
        })
    return rows


def cmd_table(args, out):
    if args.nmax < 1:
        raise InputError("--nmax must be positive")
    rows = table_rows(args.nmax)
    if args.format == "csv":
        header = list(rows[0])
        write_csv(header, [[r[h] for h in header] for r in rows], out)
    else:
        out.write(dumps(envelope("table", _inputs(args), {"rows": rows})) + "\n")
    return EXIT_OK


# parser ----------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="conjtrig", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def with_format(sp):
        sp.add_argument("--format", choices=("json", "csv"), default="json")

    def with_coeffs(sp, required=True):
        sp.add_argument("--coeffs", help="comma-separated a_1,...,a_n")
        sp.add_argument("--coeffs-file", help="one coefficient per line, '#' comments")

    sp = sub.add_parser("optimal", help="closed-form optimal coefficients")
    sp.add_argument("--n", type=int, required=True)
    with_format(sp)
    sp.set_defaults(func=cmd_optimal)

    sp = sub.add_parser("rho", help="conditional minima over zeros of S")
    with_coeffs(sp)
    sp.add_argument("--which", choices=("rho", "rho1", "both"), default="both")
    sp.add_argument("--degrees", action="store_true", help="also report angles in degrees")
    with_format(sp)
    sp.set_defaults(func=cmd_rho)

    sp = sub.add_parser("margins", help="Schur stability margins k1, k2")
    with_coeffs(sp)
    sp.add_argument("--method", choices=("geometric", "bisection", "both"), default="geometric")
    sp.add_argument("--tol", type=float, default=1e-9)
    with_format(sp)
    sp.set_defaults(func=cmd_margins)

    sp = sub.add_parser("verify", help="brute-force check of the extremal value")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--grid", type=int, default=200)
    sp.add_argument("--rounds", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--slack", type=float, default=1e-3)
    sp.add_argument("--workers", type=int, default=1)
    with_format(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("simulate", help="averaged control of a 1-D map")
    sp.add_argument("--map", choices=("logistic", "cubic", "poly"), default="logistic")
    sp.add_argument("--r", type=float, default=3.8)
    sp.add_argument("--poly", help="map polynomial, highest degree first")
    sp.add_argument("--fixed-point", type=float)
    sp.add_argument("--n", type=int, default=2, help="use the optimal coefficients of degree n")
    with_coeffs(sp)
    sp.add_argument("--x0", help="initial history, one value or n values oldest first")
    sp.add_argument("--steps", type=int, default=500)
    sp.add_argument("--emit-trace", help="write per-step CSV to this path")
    with_format(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("table", help="reproduction table for n = 1..nmax")
    sp.add_argument("--nmax", type=int, default=20)
    with_format(sp)
    sp.set_defaults(func=cmd_table)
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except (InputError, NormalizationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RootFindError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
