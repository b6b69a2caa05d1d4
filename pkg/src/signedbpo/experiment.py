"""Experiment driver: batch relaxation runs, CSV reports, summary tables.

Each (instance, method, level) combination is solved and recorded with its
bound, wall time, model size, and (when the exact optimum is supplied) the
relative duality gap in maximization convention: gap = (lam' - lam*)/lam'
where lam' = -lambda is the relaxation's upper bound on the maximization
value and lam* the optimum.  Timed-out runs are recorded with gap 1.

Summary statistics are shifted geometric means: shift 1 for times in
seconds, shift 0.01 for gaps.
"""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .maxcut import Graph, maxcut_to_bpo
from .polynomials import Polynomial
from .relax import (
    LOVASZ,
    SA1,
    STANDARD,
    build_level_relaxation,
    num_levels,
    sherali_adams_1,
    solve_relaxation,
)
from .simplex import TimeLimitExceeded

GAP_SHIFT = Fraction(1, 100)
TIME_SHIFT = 1.0

CSV_FIELDS = ("instance", "method", "level", "bound", "optimum", "gap", "time_s", "rows", "cols")


@dataclass
class RunReport:
    instance: str
    method: str
    level: int | None
    bound: Fraction | float | None  # lower bound on min f; None on timeout
    optimum: Fraction | None  # exact optimum of min f, when known
    gap: float | None
    time_s: float
    rows: int
    cols: int
    timed_out: bool = False

    def as_row(self) -> dict[str, str]:
        return {
            "instance": self.instance,
            "method": self.method,
            "level": "" if self.level is None else str(self.level),
            "bound": _fmt(self.bound),
            "optimum": _fmt(self.optimum),
            "gap": "" if self.gap is None else repr(self.gap),
            "time_s": f"{self.time_s:.3f}",
            "rows": str(self.rows),
            "cols": str(self.cols),
        }


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def relative_gap(bound, optimum) -> float | None:
    """(lam' - lam*)/lam' with lam' = -bound, lam* = -optimum (max convention)."""
    if bound is None or optimum is None:
        return None
    lam_prime = -float(bound)
    lam_star = -float(optimum)
    if lam_prime == 0:
        return None
    return (lam_prime - lam_star) / lam_prime


def _solve_one(task):
    name, f, method, level, deadline_s, arithmetic, mode, optimum = task
    start = time.monotonic()
    deadline = None if deadline_s is None else start + deadline_s
    try:
        if method == SA1:
            rm = sherali_adams_1(f)
            eff_level = None
        else:
            eff_level = min(level, num_levels(f, method))
            rm = build_level_relaxation(f, eff_level, method)
        sol = solve_relaxation(rm, mode=mode, arithmetic=arithmetic, deadline=deadline)
        elapsed = time.monotonic() - start
        if sol.status != "optimal":
            raise RuntimeError(f"{name}/{method}: relaxation solve returned {sol.status}")
        bound = sol.objective
        return RunReport(
            name,
            method,
            eff_level,
            bound,
            optimum,
            relative_gap(bound, optimum),
            elapsed,
            rm.num_rows,
            rm.num_cols,
        )
    except TimeLimitExceeded:
        elapsed = time.monotonic() - start
        # Table-1 convention: a timed-out relaxation registers gap 1.
        return RunReport(name, method, level if method != SA1 else None, None, optimum, 1.0, elapsed, 0, 0, timed_out=True)


def run_experiment(
    instances,
    methods,
    levels,
    time_limit_s: float | None = None,
    optima: dict[str, Fraction] | None = None,
    arithmetic: str = "float",
    mode: str = "extended",
    workers: int = 1,
) -> list[RunReport]:
    """Solve every (instance, method, level) combination.

    ``instances``: list of (name, Graph | Polynomial); graphs are encoded
    through maxcut_to_bpo and their supplied optima are maximization
    (cut) values.  ``optima`` maps instance name to the exact optimum of
    the encoded minimization problem (min f); for graphs pass -maxcut.
    Levels beyond an instance's hierarchy are clamped.  Reports come back
    sorted by instance name, then method, then level.
    """
    optima = optima or {}
    tasks = []
    for name, inst in instances:
        f = maxcut_to_bpo(inst) if isinstance(inst, Graph) else inst
        optimum = optima.get(name)
        for method in methods:
            if method == SA1:
                tasks.append((name, f, SA1, None, time_limit_s, arithmetic, mode, optimum))
            else:
                for level in levels:
                    tasks.append((name, f, method, level, time_limit_s, arithmetic, mode, optimum))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_solve_one, tasks))
    else:
        reports = [_solve_one(t) for t in tasks]
    reports.sort(key=lambda r: (r.instance, r.method, r.level if r.level is not None else 0))
    return reports


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        writer.writerow(report.as_row())
    return buf.getvalue()


def parse_report_csv(text: str) -> list[RunReport]:
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        out.append(
            RunReport(
                row["instance"],
                row["method"],
                int(row["level"]) if row["level"] else None,
                Fraction(row["bound"]) if row["bound"] and "/" in row["bound"] else (float(row["bound"]) if row["bound"] else None),
                Fraction(row["optimum"]) if row["optimum"] and "/" in row["optimum"] else (float(row["optimum"]) if row["optimum"] else None),
                float(row["gap"]) if row["gap"] else None,
                float(row["time_s"]),
                int(row["rows"]),
                int(row["cols"]),
            )
        )
    return out


def shifted_geomean(values, shift) -> float:
    vals = [float(v) + float(shift) for v in values]
    if not vals or any(v <= 0 for v in vals):
        return float("nan")
    return math.exp(sum(math.log(v) for v in vals) / len(vals)) - float(shift)


def summarize_reports(reports) -> tuple[dict[tuple[str, int | None], dict[str, float]], str]:
    """Per (method, level) shifted-geometric-mean gap and time, plus a table."""
    groups: dict[tuple[str, int | None], list[RunReport]] = {}
    for report in reports:
        groups.setdefault((report.method, report.level), []).append(report)
    summary: dict[tuple[str, int | None], dict[str, float]] = {}
    for key, rows in sorted(groups.items(), key=lambda kv: (kv[0][0], kv[0][1] or 0)):
        gaps = [r.gap for r in rows if r.gap is not None]
        summary[key] = {
            "gap": shifted_geomean(gaps, GAP_SHIFT) if gaps else float("nan"),
            "time": shifted_geomean([r.time_s for r in rows], TIME_SHIFT),
            "count": len(rows),
        }
    lines = [f"{'setting':<24}{'gap':>10}{'time':>10}{'n':>5}"]
    for (method, level), stats in summary.items():
        label = method if level is None else f"{method} {level}"
        gap = "-" if math.isnan(stats["gap"]) else f"{stats['gap']:.3f}"
        lines.append(f"{label:<24}{gap:>10}{stats['time']:>10.1f}{stats['count']:>5}")
    return summary, "\n".join(lines)
