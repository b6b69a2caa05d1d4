"""In-memory LP models and the fixed-format MPS writer.

Variables have lower bound 0 or -inf and upper bound +inf; rows are sparse
with sense <=, =, or >=; the objective is sparse with sense max.  Row and
column order is insertion order and fully deterministic.

MPS names are capped at 8 characters, so the writer mangles every row and
column name through a deterministic table (R0000001..., C0000001...) and
emits the table alongside the file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

SENSES = ("<=", "=", ">=")


@dataclass
class _Row:
    name: str
    coeffs: dict[str, Fraction]
    sense: str
    rhs: Fraction


class LpModel:
    """A deterministic sparse LP: max c'x s.t. rows, bounds as above."""

    def __init__(self, name: str = "lp"):
        self.name = name
        self._vars: dict[str, bool] = {}  # name -> is_free
        self._rows: list[_Row] = []
        self._row_names: set[str] = set()
        self.objective: dict[str, Fraction] = {}
        self.objective_const = Fraction(0)

    # -- construction -------------------------------------------------------

    def add_var(self, name: str, free: bool = False) -> str:
        if name in self._vars:
            raise ValueError(f"duplicate variable name {name!r}")
        self._vars[name] = bool(free)
        return name

    def add_constr(
        self,
        coeffs: Mapping[str, object],
        sense: str,
        rhs,
        name: str | None = None,
    ) -> str:
        if sense not in SENSES:
            raise ValueError(f"sense must be one of {SENSES}, got {sense!r}")
        clean: dict[str, Fraction] = {}
        for var, c in coeffs.items():
            if var not in self._vars:
                raise ValueError(f"constraint references undeclared variable {var!r}")
            c = Fraction(c)
            if c:
                clean[var] = c
        if name is None:
            name = f"r{len(self._rows)}"
        if name in self._row_names:
            raise ValueError(f"duplicate row name {name!r}")
        self._row_names.add(name)
        self._rows.append(_Row(name, clean, sense, Fraction(rhs)))
        return name

    def set_objective(self, coeffs: Mapping[str, object], const=0) -> None:
        for var in coeffs:
            if var not in self._vars:
                raise ValueError(f"objective references undeclared variable {var!r}")
        self.objective = {v: Fraction(c) for v, c in coeffs.items() if Fraction(c)}
        self.objective_const = Fraction(const)

    # -- accessors -----------------------------------------------------------

    @property
    def num_rows(self) -> int:
        return len(self._rows)

    @property
    def num_cols(self) -> int:
        return len(self._vars)

    def variables(self) -> list[str]:
        return list(self._vars)

    def is_free(self, var: str) -> bool:
        return self._vars[var]

    def rows(self) -> list[_Row]:
        return list(self._rows)

    def row_names(self) -> list[str]:
        return [r.name for r in self._rows]

    def copy(self, name: str | None = None) -> "LpModel":
        out = LpModel(name or self.name)
        for var, free in self._vars.items():
            out.add_var(var, free)
        for row in self._rows:
            out.add_constr(dict(row.coeffs), row.sense, row.rhs, row.name)
        out.set_objective(dict(self.objective), self.objective_const)
        return out

    def check_point(self, values: Mapping[str, Fraction]) -> bool:
        """Exact feasibility check of a full assignment."""
        for var, free in self._vars.items():
            val = values.get(var, Fraction(0))
            if not free and val < 0:
                return False
        for row in self._rows:
            lhs = sum((c * values.get(v, Fraction(0)) for v, c in row.coeffs.items()), Fraction(0))
            if row.sense == "<=" and lhs > row.rhs:
                return False
            if row.sense == ">=" and lhs < row.rhs:
                return False
            if row.sense == "=" and lhs != row.rhs:
                return False
        return True


# -- MPS export ---------------------------------------------------------------


def _mps_value(v: Fraction) -> str:
    return f"{float(v):.5E}"


def mps_string(model: LpModel) -> tuple[str, dict[str, str]]:
    """Render fixed-format MPS; returns (text, original->mangled name table)."""
    col_names = {var: f"C{i + 1:07d}" for i, var in enumerate(model.variables())}
    row_names = {row.name: f"R{i + 1:07d}" for i, row in enumerate(model.rows())}
    mapping = {"OBJ": "OBJ"}
    mapping.update({orig: m for orig, m in col_names.items()})
    mapping.update({orig: m for orig, m in row_names.items()})

    sense_tag = {"<=": "L", ">=": "G", "=": "E"}
    out = [f"NAME          {model.name[:60]}"]
    out.append("ROWS")
    out.append(" N  OBJ")
    for row in model.rows():
        out.append(f" {sense_tag[row.sense]}  {row_names[row.name]}")
    out.append("COLUMNS")
    # Column-major entries; objective written as maximization (MPS consumers
    # minimize by default, so the objective row is negated and noted).
    for var in model.variables():
        cname = col_names[var]
        obj_c = model.objective.get(var, Fraction(0))
        if obj_c:
            out.append(f"    {cname:<8}  {'OBJ':<8}  {_mps_value(-obj_c):>12}")
        for row in model.rows():
            c = row.coeffs.get(var)
            if c:
                out.append(f"    {cname:<8}  {row_names[row.name]:<8}  {_mps_value(c):>12}")
    out.append("RHS")
    for row in model.rows():
        if row.rhs:
            out.append(f"    {'RHS':<8}  {row_names[row.name]:<8}  {_mps_value(row.rhs):>12}")
    out.append("BOUNDS")
    for var in model.variables():
        if model.is_free(var):
            out.append(f" FR {'BND':<8}  {col_names[var]:<8}")
    out.append("ENDATA")
    return "\n".join(out) + "\n", mapping


def write_mps(model: LpModel, path: str) -> dict[str, str]:
    """Write ``path`` and ``path + '.names.json'``; returns the name table.

    The OBJ row carries the negated objective (MPS solvers minimize); the
    name table records the mangling of every row/column name.
    """
    text, mapping = mps_string(model)
    with open(path, "w") as fh:
        fh.write(text)
    with open(path + ".names.json", "w") as fh:
        json.dump(mapping, fh, indent=1, sort_keys=True)
    return mapping
