"""Command-line front end: ``meanforge {coeffs,symmetry,discover,verify,eval}``.

Exit codes are 0 on success, 1 when a verification check or a numeric
computation fails, and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .discovery import DiscoveryError, check_hypothesis, run_discovery
from .means import DomainError, classic_series, lc_series, parse_mean
from .poly import NotDivisible, SymbolTable
from .series import MeanSeries, SeriesError
from .symmetry import phi, star, symmetry_S, symmetry_sigma
from .symseries import bS_coeffs, bSigma_coeffs, symbolic_series
from .verify import DEFAULT_C, GridConfig, run_verification

MAX_SYMBOLIC_ORDER = 12
MAX_NUMERIC_ORDER = 200
U64_MAX = 2**64 - 1


class UsageError(ValueError):
    pass


# -- argument types ------------------------------------------------------------


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value <= U64_MAX:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _tol(text: str) -> float:
    value = float(text)
    if not value >= 0:
        raise argparse.ArgumentTypeError("tolerance must be non-negative")
    return value


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("arguments of a mean must be positive")
    return value


def _order(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("order must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="emit a JSON report")
    fmt.add_argument("--csv", action="store_true", help="emit CSV rows")
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--tol", type=_tol, default=None, help="override every check threshold")
    common.add_argument("--order", type=_order, default=None)

    parser = argparse.ArgumentParser(prog="meanforge", description="Asymptotic-expansion tools for bivariate means.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", parents=[common], help="expansion coefficients")
    p.add_argument("--m0", default="Lc-sym", help="A, G, H, Lc-sym, Lc:<q> or a series JSON file")
    p.add_argument("--m1", default="symbolic", help="symbolic, A, G, H, Lc:<q> or a series JSON file")
    p.add_argument("--which", choices=["m0", "S", "sigma", "both"], default="m0")

    p = sub.add_parser("symmetry", parents=[common], help="evaluate a symmetry or the group law")
    p.add_argument("--m0", required=True)
    p.add_argument("--m1", required=True)
    p.add_argument("--op", choices=["S", "sigma", "star", "phi"], default="S")
    p.add_argument("--a", type=_positive, required=True)
    p.add_argument("--b", type=_positive, required=True)

    sub.add_parser("discover", parents=[common], help="coefficient-comparison search")

    p = sub.add_parser("verify", parents=[common], help="run the verification grids")
    p.add_argument("--grid", choices=["default", "diagonal"], default="default")
    p.add_argument("--suite", choices=["all", "numeric", "series"], default="all")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--c-list", default=",".join(DEFAULT_C), help="comma-separated parameters")

    p = sub.add_parser("eval", parents=[common], help="evaluate a mean")
    p.add_argument("--mean", required=True)
    p.add_argument("--a", type=_positive, required=True)
    p.add_argument("--b", type=_positive, required=True)
    return parser


# -- output --------------------------------------------------------------------


def _dump_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _dump_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(args, payload, header, rows, text) -> None:
    if args.json:
        sys.stdout.write(_dump_json(payload))
    elif args.csv:
        sys.stdout.write(_dump_csv(header, rows))
    else:
        sys.stdout.write(text)


# -- series selection ----------------------------------------------------------


def _series_from_name(name: str, order: int):
    """Numeric or symbolic series for a CLI name; ``None`` means fully symbolic M1."""
    if name == "symbolic":
        return None
    if name == "Lc-sym":
        return lc_series(None, order)
    if name.upper() in ("A", "G", "H"):
        return classic_series(name, order)
    if name.startswith(("Lc:", "L:")):
        try:
            return lc_series(Fraction(name.split(":", 1)[1]), order)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad parameter in {name!r}") from None
    if os.path.isfile(name):
        with open(name, encoding="utf-8") as fh:
            series = MeanSeries.from_json(fh.read())
        if series.order < order:
            raise UsageError(f"{name} holds order {series.order}, need {order}")
        return series.truncate(order)
    raise UsageError(f"unknown mean {name!r}")


def _unify(m0, m1, order):
    """Put both series over one symbol table when either is symbolic."""
    names: list[str] = []
    for s in (m0, m1):
        if s is not None and s.mode == "symbolic":
            names += [n for n in s.table.names if n not in names]
    if m1 is None:
        names += [f"a{i}" for i in range(1, order + 1) if f"a{i}" not in names]
    if not names:
        return m0, m1
    table = SymbolTable(names)
    m1 = symbolic_series(table, "a", order) if m1 is None else m1.promote(table)
    return m0.promote(table), m1


def cmd_coeffs(args) -> int:
    order = 6 if args.order is None else args.order
    if args.which != "m0" and order < 1:
        raise UsageError("symmetry coefficients need order >= 1")
    symbolic = args.m0 == "Lc-sym" or args.m1 == "symbolic" or any(map(os.path.isfile, (args.m0, args.m1)))
    if order > (MAX_SYMBOLIC_ORDER if symbolic else MAX_NUMERIC_ORDER):
        raise UsageError(f"order {order} too large (symbolic limit {MAX_SYMBOLIC_ORDER})")
    m0 = _series_from_name(args.m0, order)
    if m0 is None:
        raise UsageError("--m0 cannot be symbolic")
    tables = {}
    if args.which == "m0":
        tables["m0"] = m0
    else:
        s0, s1 = _unify(m0, _series_from_name(args.m1, order), order)
        if args.which in ("S", "both"):
            tables["S"] = bS_coeffs(s0, s1, order)
        if args.which in ("sigma", "both"):
            tables["sigma"] = bSigma_coeffs(s0, s1, order)

    out = {k: [str(c) for c in s.coeffs] for k, s in tables.items()}
    payload = {"m0": args.m0, "m1": args.m1, "order": order, "which": args.which, "series": out}
    rows = [(k, n, c) for k, cs in out.items() for n, c in enumerate(cs)]
    text = "".join(f"{k}[{n}] = {c}\n" for k, n, c in rows)
    _emit(args, payload, ("series", "n", "coefficient"), rows, text)
    return 0


def cmd_symmetry(args) -> int:
    m0, m1 = parse_mean(args.m0), parse_mean(args.m1)
    a, b = args.a, args.b
    if args.op == "S":
        value = symmetry_S(m0, m1)(a, b)
    elif args.op == "sigma":
        value = symmetry_sigma(m0, m1)(a, b)
    elif args.op == "star":
        value = star(m0, m1)(a, b)
    else:
        # phi of each selector at (a, b)
        value = [float(phi(m0, a, b)), float(phi(m1, a, b))]
    payload = {"op": args.op, "m0": args.m0, "m1": args.m1, "a": a, "b": b, "value": value}
    if args.op == "phi":
        rows = [("phi", args.m0, a, b, value[0]), ("phi", args.m1, a, b, value[1])]
        text = f"phi_{args.m0}({a!r}, {b!r}) = {value[0]!r}\nphi_{args.m1}({a!r}, {b!r}) = {value[1]!r}\n"
    else:
        value = float(value)
        payload["value"] = value
        rows = [(args.op, f"{args.m0};{args.m1}", a, b, value)]
        text = f"{args.op}({args.m0}, {args.m1})({a!r}, {b!r}) = {value!r}\n"
    _emit(args, payload, ("op", "means", "a", "b", "value"), rows, text)
    return 0


def cmd_discover(args) -> int:
    order = 6 if args.order is None else args.order
    if not 2 <= order <= 10:
        raise UsageError("discover needs 2 <= order <= 10")
    state = run_discovery(order)
    matches = check_hypothesis(state)
    solved = [str(p) for p in state.solved_in_c()]
    payload = {
        "order": order,
        "steps": [r.to_dict() for r in state.log],
        "solved": solved,
        "matches_hypothesis": matches,
    }
    rows = [(n, c) for n, c in enumerate(solved)]
    text = "".join(f"c_{n} = {c}\n" for n, c in rows) + f"matches_hypothesis: {str(matches).lower()}\n"
    _emit(args, payload, ("n", "coefficient"), rows, text)
    return 0


def cmd_verify(args) -> int:
    try:
        c_list = tuple(s.strip() for s in args.c_list.split(",") if s.strip())
        for c in c_list:
            if Fraction(c) < -1:
                raise UsageError(f"parameter {c} is below -1")
        grid = GridConfig(c_list=c_list, samples=args.samples, seed=args.seed, diagonal=args.grid == "diagonal")
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    report = run_verification(grid, tol=args.tol, suite=args.suite)
    payload = report.to_dict()
    rows = [(r["name"], repr(r["max_residual"]), repr(r["threshold"]), str(r["pass"]).lower()) for r in payload["records"]]
    width = max(len(r[0]) for r in rows)
    text = "".join(
        f"{'PASS' if p == 'true' else 'FAIL'}  {n:<{width}}  residual={res}  threshold={thr}\n"
        for n, res, thr, p in rows
    ) + f"overall: {'PASS' if report.passed else 'FAIL'}\n"
    _emit(args, payload, ("name", "max_residual", "threshold", "pass"), rows, text)
    return 0 if report.passed else 1


def cmd_eval(args) -> int:
    mean = parse_mean(args.mean)
    value = float(mean(args.a, args.b))
    payload = {"mean": args.mean, "a": args.a, "b": args.b, "value": value}
    rows = [(args.mean, args.a, args.b, value, "")]
    text = f"{args.mean}({args.a!r}, {args.b!r}) = {value!r}\n"
    if args.order is not None:
        if args.order > MAX_NUMERIC_ORDER:
            raise UsageError(f"order {args.order} too large")
        series = _series_from_name(args.mean, args.order)
        x, t = (Fraction(args.a) + Fraction(args.b)) / 2, (Fraction(args.b) - Fraction(args.a)) / 2
        approx = float(series.evaluate(x, t))
        payload["series"] = [str(c) for c in series.coeffs]
        payload["partial_sum"] = approx
        rows[0] = (args.mean, args.a, args.b, value, approx)
        text += f"partial sum to order {args.order}: {approx!r}\n"
    _emit(args, payload, ("mean", "a", "b", "value", "partial_sum"), rows, text)
    return 0


COMMANDS = {
    "coeffs": cmd_coeffs,
    "symmetry": cmd_symmetry,
    "discover": cmd_discover,
    "verify": cmd_verify,
    "eval": cmd_eval,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, DomainError, SeriesError, KeyError, OSError, json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"meanforge: error: {msg}", file=sys.stderr)
        return 2
    except (ArithmeticError, DiscoveryError, NotDivisible) as exc:
        print(f"meanforge: computation failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
