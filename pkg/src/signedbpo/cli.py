"""Command-line surface.

Subcommands:
  check <poly>        certify binary non-negativity of an NNS polynomial
                      (min-cut separation); exit 0 certified / 1 violated
  min <poly>          minimize: min-cut for NNS-family inputs, else brute force
  relax <poly|rudy>   solve a relaxation (std/lov hierarchy level or SA-1)
  export <poly|rudy>  write the assembled relaxation in MPS format
  report <csv>        summarize an experiment CSV (shifted geometric means)
  experiment ...      batch driver producing the CSV

Exit codes: 0 certified/solved, 1 violated/infeasible, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .lpmodel import write_mps
from .maxcut import maxcut_to_bpo, parse_rudy
from .mincut import NotNNSError, minimize_nns
from .polynomials import (
    CapExceededError,
    brute_force_min,
    classify,
    is_nns_family,
    parse_polynomial,
)
from .relax import (
    LOVASZ,
    SA1,
    STANDARD,
    build_level_relaxation,
    num_levels,
    sherali_adams_1,
    solve_relaxation,
)
from .experiment import (
    parse_report_csv,
    relative_gap,
    reports_to_csv,
    run_experiment,
    summarize_reports,
)

METHOD_NAMES = {"std": STANDARD, "lov": LOVASZ, "sa1": SA1}


class UsageError(Exception):
    pass


def _load_input(path: str):
    """Returns ('graph', Graph) or ('poly', Polynomial) based on content."""
    with open(path) as fh:
        text = fh.read()
    if path.endswith((".rudy", ".mc", ".graph")):
        return "graph", parse_rudy(text)
    if path.endswith(".poly"):
        return "poly", parse_polynomial(text)
    # Sniff: rudy files have a bare "n m" header, the poly format has ':'.
    first = next((ln for ln in text.splitlines() if ln.split("#", 1)[0].strip()), "")
    if ":" in first:
        return "poly", parse_polynomial(text)
    return "graph", parse_rudy(text)


def _load_polynomial(path: str):
    kind, obj = _load_input(path)
    return maxcut_to_bpo(obj) if kind == "graph" else obj


def _build_relaxation(f, method: str, level: int):
    if method == SA1:
        return sherali_adams_1(f)
    levels = num_levels(f, method)
    if not 1 <= level <= levels:
        raise UsageError(f"level {level} out of range 1..{levels} for this instance")
    return build_level_relaxation(f, level, method)


def cmd_check(args) -> int:
    f = _load_polynomial(args.input)
    try:
        x, value = minimize_nns(f)
    except NotNNSError as exc:
        raise UsageError(str(exc))
    print(f"min = {value}")
    if value < 0:
        print(f"violated at x = {''.join(map(str, x))}")
        return 1
    print("binary non-negative: certified")
    return 0


def cmd_min(args) -> int:
    f = _load_polynomial(args.input)
    if args.brute or not is_nns_family(f):
        x, value = brute_force_min(f, cap=args.cap)
        how = "brute force"
    else:
        x, value = minimize_nns(f)
        how = "min-cut"
    print(f"min = {value} at x = {''.join(map(str, x))}  ({how}, class {classify(f)})")
    return 0


def cmd_relax(args) -> int:
    kind, obj = _load_input(args.input)
    f = maxcut_to_bpo(obj) if kind == "graph" else obj
    method = METHOD_NAMES[args.method]
    rm = _build_relaxation(f, method, args.level)
    arithmetic = "float" if args.float_mode else "exact"
    sol = solve_relaxation(rm, mode=args.mode, arithmetic=arithmetic)
    if sol.status != "optimal":
        print(f"relaxation solve: {sol.status}", file=sys.stderr)
        return 1
    bound = sol.objective
    print(f"lower bound on min f: {bound}")
    if kind == "graph":
        print(f"upper bound on max cut: {-bound}")
    if args.opt is not None:
        optimum = Fraction(args.opt) if kind == "poly" else -Fraction(args.opt)
        gap = relative_gap(bound, optimum)
        print(f"relative duality gap: {gap:.6f}" if gap is not None else "gap: undefined")
    if args.mps:
        write_mps(rm.model, args.mps)
        print(f"wrote {args.mps} (+ .names.json)")
    return 0


def cmd_export(args) -> int:
    f = _load_polynomial(args.input)
    method = METHOD_NAMES[args.method]
    rm = _build_relaxation(f, method, args.level)
    write_mps(rm.model, args.mps)
    print(f"wrote {args.mps} (+ .names.json): {rm.num_rows} rows, {rm.num_cols} cols")
    return 0


def cmd_report(args) -> int:
    with open(args.csv) as fh:
        reports = parse_report_csv(fh.read())
    _, table = summarize_reports(reports)
    print(table)
    return 0


def cmd_experiment(args) -> int:
    methods = [METHOD_NAMES[m.strip()] for m in args.methods.split(",") if m.strip()]
    levels = [int(tok) for tok in args.levels.split(",") if tok.strip()]
    optima: dict[str, Fraction] = {}
    if args.opt_file:
        with open(args.opt_file) as fh:
            raw = json.load(fh)
        # Values are maximization (cut) optima for graphs, min-f for .poly.
        optima_raw = {name: Fraction(str(v)) for name, v in raw.items()}
    else:
        optima_raw = {}
    instances = []
    for path in args.inputs:
        kind, obj = _load_input(path)
        name = path.rsplit("/", 1)[-1]
        instances.append((name, obj if kind == "graph" else obj))
        if name in optima_raw:
            optima[name] = -optima_raw[name] if kind == "graph" else optima_raw[name]
    arithmetic = "float" if args.float_mode else "exact"
    reports = run_experiment(
        instances,
        methods,
        levels,
        time_limit_s=args.time_limit,
        optima=optima,
        arithmetic=arithmetic,
        mode=args.mode,
        workers=args.workers,
    )
    text = reports_to_csv(reports)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out} ({len(reports)} rows)")
    else:
        print(text, end="")
    _, table = summarize_reports(reports)
    print(table)
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signedbpo",
        description="Lower bounds for binary polynomial optimization via signed certificates.",
    )
    parser.add_argument("--seed", type=int, default=None, help="seed for any randomized utility")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="certify binary non-negativity of an NNS polynomial")
    p.add_argument("input")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("min", help="minimize a binary polynomial")
    p.add_argument("input")
    p.add_argument("--brute", action="store_true", help="force exhaustive search")
    p.add_argument("--cap", type=int, default=24, help="brute-force variable cap")
    p.set_defaults(func=cmd_min)

    def relax_common(p):
        p.add_argument("input", help=".poly or .rudy instance")
        p.add_argument("--method", choices=sorted(METHOD_NAMES), default="std")
        p.add_argument("--level", type=int, default=1)

    p = sub.add_parser("relax", help="solve a relaxation and print the bound")
    relax_common(p)
    p.add_argument("--mode", choices=("extended", "cutplane"), default="extended")
    p.add_argument("--float", dest="float_mode", action="store_true", help="float solver arithmetic")
    p.add_argument("--opt", default=None, help="known optimum (cut value for graphs) for gap reporting")
    p.add_argument("--mps", default=None, help="also export the model to this MPS path")
    p.set_defaults(func=cmd_relax)

    p = sub.add_parser("export", help="write the assembled relaxation as MPS")
    relax_common(p)
    p.add_argument("--mps", required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("report", help="summarize an experiment CSV")
    p.add_argument("csv")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("experiment", help="batch relaxation runs -> CSV + summary")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--methods", default="sa1,std", help="comma list of std,lov,sa1")
    p.add_argument("--levels", default="1", help="comma list of hierarchy levels")
    p.add_argument("--mode", choices=("extended", "cutplane"), default="extended")
    p.add_argument("--float", dest="float_mode", action="store_true")
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument("--opt-file", default=None, help="JSON {instance: optimum}")
    p.add_argument("--out", default=None, help="CSV output path")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.seed is not None:
        random.seed(args.seed)
    try:
        return args.func(args)
    except (UsageError, CapExceededError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
