"""Desk-scale LP solving: exact rational simplex and a float backend.

Exact mode runs a two-phase primal simplex on a sparse tableau of
rationals.  Pricing is Dantzig's rule until a degenerate stall is
detected, then permanently Bland's rule, which guarantees termination;
every returned optimum is exact.  Free variables are split into positive
and negative parts internally.

Float mode hands the model to scipy's HiGHS interface; it exists for
instances beyond exact-arithmetic desk scale and for the float experiment
protocol.

The cutting-plane driver solves a master LP and repeatedly adds rows
produced by a separation callback until none is violated; duplicate rows
are rejected by hashing.

One solve per thread; solvers share no mutable state.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .arith import QZERO, q, to_fraction
from .lpmodel import LpModel

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class TimeLimitExceeded(RuntimeError):
    """Raised when a solve outruns its deadline."""


@dataclass
class LpSolution:
    status: str
    objective: Fraction | float | None
    values: dict[str, Fraction] | dict[str, float] | None
    ray: dict[str, Fraction] | None = None  # improving direction when unbounded

    def value(self, var: str):
        return self.values.get(var, 0) if self.values else None


def solve(
    model: LpModel,
    arithmetic: str = "exact",
    deadline: float | None = None,
) -> LpSolution:
    """Solve max c'x subject to the model rows and bounds.

    ``arithmetic``: "exact" (rational simplex) or "float" (HiGHS).
    ``deadline``: absolute time.monotonic() limit; TimeLimitExceeded after.
    """
    if deadline is not None and time.monotonic() > deadline:
        raise TimeLimitExceeded("solve started past its deadline")
    if arithmetic == "exact":
        return _solve_exact(model, deadline)
    if arithmetic == "float":
        return _solve_float(model, deadline)
    raise ValueError(f"unknown arithmetic {arithmetic!r}")


# -- exact simplex -------------------------------------------------------------


class _Tableau:
    """Sparse row-wise simplex tableau over exact rationals."""

    def __init__(self, model: LpModel, deadline: float | None):
        self.deadline = deadline
        self.col_meta: list[tuple[str, str, int]] = []  # (kind, model var, sign)
        col_of: dict[tuple[str, int], int] = {}
        for var in model.variables():
            col_of[(var, 1)] = len(self.col_meta)
            self.col_meta.append(("var", var, 1))
            if model.is_free(var):
                col_of[(var, -1)] = len(self.col_meta)
                self.col_meta.append(("var", var, -1))
        self.rows: list[dict[int, object]] = []
        self.rhs: list[object] = []
        self.basis: list[int] = []
        self.artificials: set[int] = set()
        art_rows: list[int] = []

        for row in model.rows():
            coeffs: dict[int, object] = {}
            for var, c in row.coeffs.items():
                cq = q(c)
                coeffs[col_of[(var, 1)]] = coeffs.get(col_of[(var, 1)], QZERO) + cq
                if (var, -1) in col_of:
                    coeffs[col_of[(var, -1)]] = coeffs.get(col_of[(var, -1)], QZERO) - cq
            rhs = q(row.rhs)
            sense = row.sense
            if rhs < 0:  # normalize to nonnegative rhs
                coeffs = {k: -v for k, v in coeffs.items()}
                rhs = -rhs
                sense = {"<=": ">=", ">=": "<=", "=": "="}[sense]
            coeffs = {k: v for k, v in coeffs.items() if v != 0}
            if sense == "<=":
                slack = len(self.col_meta)
                self.col_meta.append(("slack", row.name, 1))
                coeffs[slack] = q(1)
                basic = slack
            elif sense == ">=":
                surplus = len(self.col_meta)
                self.col_meta.append(("slack", row.name, -1))
                coeffs[surplus] = q(-1)
                basic = -1
            else:
                basic = -1
            if basic < 0:
                art = len(self.col_meta)
                self.col_meta.append(("art", row.name, 1))
                self.artificials.add(art)
                coeffs[art] = q(1)
                basic = art
                art_rows.append(len(self.rows))
            self.rows.append(coeffs)
            self.rhs.append(rhs)
            self.basis.append(basic)

        self.ncols = len(self.col_meta)
        self.allowed = [True] * self.ncols
        self.obj: dict[int, object] = {}
        self.obj_shift = QZERO  # objective value of the current basic solution
        self._model = model

    # The objective row stores reduced costs of a MINIMIZATION objective:
    # entering columns have negative reduced cost.

    def load_objective(self, cost: Mapping[int, object]) -> None:
        self.obj = {j: q(c) for j, c in cost.items() if c != 0}
        self.obj_shift = QZERO
        for r, b in enumerate(self.basis):
            cb = self.obj.get(b)
            if cb:
                self._reduce_obj(r, cb)

    def _reduce_obj(self, r: int, factor) -> None:
        row = self.rows[r]
        for k, v in row.items():
            new = self.obj.get(k, QZERO) - factor * v
            if new == 0:
                self.obj.pop(k, None)
            else:
                self.obj[k] = new
        self.obj_shift -= factor * self.rhs[r]

    def _pivot(self, r: int, e: int) -> None:
        prow = self.rows[r]
        piv = prow[e]
        if piv != 1:
            inv = 1 / piv
            prow = {k: v * inv for k, v in prow.items()}
            self.rows[r] = prow
            self.rhs[r] = self.rhs[r] * inv
        prhs = self.rhs[r]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            a = row.get(e)
            if a:
                for k, v in prow.items():
                    new = row.get(k, QZERO) - a * v
                    if new == 0:
                        row.pop(k, None)
                    else:
                        row[k] = new
                self.rhs[i] = self.rhs[i] - a * prhs
        a = self.obj.get(e)
        if a:
            for k, v in prow.items():
                new = self.obj.get(k, QZERO) - a * v
                if new == 0:
                    self.obj.pop(k, None)
                else:
                    self.obj[k] = new
            self.obj_shift -= a * prhs
        self.basis[r] = e

    def _entering(self, bland: bool) -> int | None:
        best = None
        best_val = QZERO
        for j, c in self.obj.items():
            if c < 0 and self.allowed[j]:
                if bland:
                    if best is None or j < best:
                        best = j
                elif c < best_val or (c == best_val and (best is None or j < best)):
                    best = j
                    best_val = c
        return best

    def _leaving(self, e: int) -> int | None:
        best_row = None
        best_ratio = None
        for r, row in enumerate(self.rows):
            a = row.get(e)
            if a and a > 0:
                ratio = self.rhs[r] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and self.basis[r] < self.basis[best_row])
                ):
                    best_ratio = ratio
                    best_row = r
        return best_row

    def run(self) -> str:
        """Pivot to optimality; returns "optimal" or "unbounded"."""
        bland = False
        stall = 0
        stall_limit = 100 + 2 * len(self.rows)
        iters = 0
        self._unbounded_col = None
        while True:
            iters += 1
            if self.deadline is not None and iters % 64 == 0 and time.monotonic() > self.deadline:
                raise TimeLimitExceeded("simplex deadline exceeded")
            e = self._entering(bland)
            if e is None:
                return OPTIMAL
            r = self._leaving(e)
            if r is None:
                self._unbounded_col = e
                return UNBOUNDED
            before = self.obj_shift
            self._pivot(r, e)
            if not bland:
                if self.obj_shift == before:
                    stall += 1
                    if stall > stall_limit:
                        bland = True  # permanent anti-cycling mode
                else:
                    stall = 0

    def column_values(self) -> dict[int, object]:
        vals = {self.basis[r]: self.rhs[r] for r in range(len(self.rows))}
        return vals

    def model_values(self) -> dict[str, Fraction]:
        cols = self.column_values()
        out: dict[str, Fraction] = {var: Fraction(0) for var in self._model.variables()}
        for j, val in cols.items():
            kind, name, sign = self.col_meta[j]
            if kind == "var":
                out[name] += Fraction(sign) * to_fraction(val)
        return out

    def ray(self) -> dict[str, Fraction]:
        """Improving extreme ray for the unbounded entering column."""
        e = self._unbounded_col
        direction: dict[int, object] = {e: q(1)}
        for r, row in enumerate(self.rows):
            a = row.get(e)
            if a:
                direction[self.basis[r]] = -a
        out: dict[str, Fraction] = {}
        for j, val in direction.items():
            kind, name, sign = self.col_meta[j]
            if kind == "var":
                out[name] = out.get(name, Fraction(0)) + Fraction(sign) * to_fraction(val)
        return {k: v for k, v in out.items() if v}


def _solve_exact(model: LpModel, deadline: float | None) -> LpSolution:
    tab = _Tableau(model, deadline)
    # Phase 1: minimize the sum of artificials.
    if tab.artificials:
        tab.load_objective({j: 1 for j in tab.artificials})
        status = tab.run()
        if status != OPTIMAL:
            raise AssertionError("phase-1 objective is bounded by construction")
        if tab.obj_shift < 0:  # obj_shift == -(phase-1 objective) <= 0
            return LpSolution(INFEASIBLE, None, None)
        # Pivot remaining artificials out of the basis where possible.
        for r in range(len(tab.rows)):
            if tab.basis[r] in tab.artificials:
                pivot_col = None
                for k, v in tab.rows[r].items():
                    if k not in tab.artificials and v != 0:
                        pivot_col = k if pivot_col is None or k < pivot_col else pivot_col
                if pivot_col is not None:
                    tab._pivot(r, pivot_col)
        for j in tab.artificials:
            tab.allowed[j] = False
    # Phase 2: minimize the negated model objective.
    cost: dict[int, object] = {}
    for idx, (kind, name, sign) in enumerate(tab.col_meta):
        if kind == "var":
            c = model.objective.get(name)
            if c:
                cost[idx] = q(-c) * sign
    tab.load_objective(cost)
    status = tab.run()
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, None, None, ray=tab.ray())
    values = tab.model_values()
    objective = model.objective_const + sum(
        (c * values[v] for v, c in model.objective.items()), Fraction(0)
    )
    return LpSolution(OPTIMAL, objective, values)


# -- float backend -------------------------------------------------------------


def _solve_float(model: LpModel, deadline: float | None) -> LpSolution:
    import numpy as np
    from scipy import sparse
    from scipy.optimize import linprog

    variables = model.variables()
    vidx = {v: i for i, v in enumerate(variables)}
    n = len(variables)
    c = np.zeros(n)
    for v, coef in model.objective.items():
        c[vidx[v]] = -float(coef)  # linprog minimizes
    ub_rows, ub_rhs, eq_rows, eq_rhs = [], [], [], []
    for row in model.rows():
        entries = [(vidx[v], float(coef)) for v, coef in row.coeffs.items()]
        rhs = float(row.rhs)
        if row.sense == "=":
            eq_rows.append(entries)
            eq_rhs.append(rhs)
        elif row.sense == "<=":
            ub_rows.append(entries)
            ub_rhs.append(rhs)
        else:
            ub_rows.append([(j, -a) for j, a in entries])
            ub_rhs.append(-rhs)

    def build(rows):
        data, ri, ci = [], [], []
        for i, entries in enumerate(rows):
            for j, a in entries:
                ri.append(i)
                ci.append(j)
                data.append(a)
        return sparse.csr_matrix((data, (ri, ci)), shape=(len(rows), n))

    bounds = [(None, None) if model.is_free(v) else (0, None) for v in variables]
    options = {}
    if deadline is not None:
        remaining = deadline - time.monotonic()
        if remaining <= 0:
            raise TimeLimitExceeded("float solve started past its deadline")
        options["time_limit"] = remaining
    res = linprog(
        c,
        A_ub=build(ub_rows) if ub_rows else None,
        b_ub=np.array(ub_rhs) if ub_rhs else None,
        A_eq=build(eq_rows) if eq_rows else None,
        b_eq=np.array(eq_rhs) if eq_rhs else None,
        bounds=bounds,
        method="highs",
        options=options or None,
    )
    if res.status == 0:
        values = {v: float(res.x[vidx[v]]) for v in variables}
        objective = float(model.objective_const) + sum(
            float(coef) * values[v] for v, coef in model.objective.items()
        )
        return LpSolution(OPTIMAL, objective, values)
    if res.status == 2:
        return LpSolution(INFEASIBLE, None, None)
    if res.status == 3:
        return LpSolution(UNBOUNDED, None, None)
    if res.status == 1 and deadline is not None:
        raise TimeLimitExceeded("float solve hit its time limit")
    raise RuntimeError(f"float LP solve failed: status={res.status} {res.message}")


# -- cutting-plane driver ------------------------------------------------------

Cut = tuple[str, dict[str, Fraction], str, Fraction]  # (name, coeffs, sense, rhs)


def solve_cutting_plane(
    master: LpModel,
    oracle: Callable[[LpSolution], list[Cut]],
    arithmetic: str = "exact",
    deadline: float | None = None,
) -> LpSolution:
    """Lazy-constraint loop: solve, separate, add violated rows, repeat.

    The oracle receives the incumbent solution and returns violated rows;
    an empty list ends the loop with the incumbent declared optimal.
    Duplicate rows (by canonical content hash) are rejected.  The
    iteration cap is 10x the current row count, re-evaluated as cuts grow
    the master.
    """
    work = master.copy(master.name + "+cuts")
    seen: set[int] = set()
    rounds = 0
    while True:
        rounds += 1
        if rounds > max(100, 10 * work.num_rows):
            raise RuntimeError("cutting-plane iteration cap exceeded")
        if deadline is not None and time.monotonic() > deadline:
            raise TimeLimitExceeded("cutting-plane deadline exceeded")
        sol = solve(work, arithmetic, deadline)
        if sol.status == INFEASIBLE:
            return sol
        if sol.status == UNBOUNDED:
            raise RuntimeError("cutting-plane master is unbounded; seed cuts missing")
        added = 0
        for name, coeffs, sense, rhs in oracle(sol):
            key = hash(
                (tuple(sorted((v, Fraction(c)) for v, c in coeffs.items())), sense, Fraction(rhs))
            )
            if key in seen:
                continue
            seen.add(key)
            work.add_constr(coeffs, sense, rhs, name=f"{name}#{len(seen)}")
            added += 1
        if not added:
            return sol
