"""Assembly of every LP used by the signed-certificate machinery.

The building block is the flow-based extended formulation of the
constraint "this NNS polynomial is binary non-negative" (a *non-negativity
block*): flow variables on the cut network of the polynomial's negative
nonlinear support, with the polynomial's coefficients appearing linearly,
so the caller may pass constants or expressions in other model variables.
Row families per block (A = negative nonlinear supports, N = variables):

    rho_sa + F_a            <= 0        for a in A
    rho_sa - sum_j rho_aj    = 0        for a in A
    -rho_js + sum_a rho_aj - rho_jt = 0 for j in N
    rho_jt - L_j            <= 0        for j in N
    F0 + sum_a F_a + sum_j rho_jt >= 0

with rho_sa, rho_aj, rho_js >= 0 and rho_jt free.  (rho_js is the shortcut
flow with reversed orientation; see the decisions ledger.)

On top of the block sit: cone membership fragments, the signed
reformulation of a fixed polynomial (exact), the level-i standard/Lovász
relaxations driven by partition trees, the first-level Sherali-Adams
baseline, and certificate extraction with an independent min-cut recheck.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .extensions import (
    ExtensionSet,
    Selector,
    all_standard_selectors,
    apply_selector,
    relaxed_lovasz_set,
    verify_exact,
)
from .lpmodel import LpModel
from .mincut import minimize_nns
from .partition import build_partition_tree
from .polynomials import (
    CapExceededError,
    Polynomial,
    SignedDecomposition,
    SignedSupport,
    Support,
    ambient_decomposition,
    decompose,
    grlex_key,
    within,
)
from .simplex import LpSolution, solve, solve_cutting_plane

STANDARD = "standard"
LOVASZ = "lovasz"
SA1 = "sa1"
SIGNED = "signed"


class CertificateError(RuntimeError):
    """A decoded certificate failed its independent recheck."""


# A sparse affine expression in model variables: (coeffs, constant).
LinExpr = tuple[dict[str, Fraction], Fraction]


def _expr(coeffs: dict[str, Fraction] | None = None, const=0) -> LinExpr:
    return (dict(coeffs or {}), Fraction(const))


def _expr_add(*exprs: LinExpr) -> LinExpr:
    coeffs: dict[str, Fraction] = {}
    const = Fraction(0)
    for cs, c in exprs:
        const += c
        for v, a in cs.items():
            coeffs[v] = coeffs.get(v, Fraction(0)) + a
    return ({v: a for v, a in coeffs.items() if a}, const)


def _expr_eval(expr: LinExpr, values) -> Fraction:
    coeffs, const = expr
    total = Fraction(const)
    for v, a in coeffs.items():
        total += a * Fraction(values[v])
    return total


@dataclass(frozen=True)
class NonnegBlock:
    """One emitted (or emittable) non-negativity block."""

    tag: str
    nonlinear_supports: tuple[Support, ...]
    var_indices: tuple[int, ...]
    F0: LinExpr
    F: dict[Support, LinExpr]
    L: dict[int, LinExpr]
    row_names: tuple[str, ...]
    flow_vars: tuple[str, ...]

    def point_cut(self, x: tuple[int, ...]) -> LinExpr:
        """The linear sub-constraint of non-negativity at binary point x.

        x indexes self.var_indices positionally; returns the expression
        whose value is the certified polynomial evaluated at x.
        """
        val = dict(zip(self.var_indices, x))
        parts = [self.F0]
        for sup, fe in self.F.items():
            if all(val[j] for j in sup):
                parts.append(fe)
        for j, le in self.L.items():
            if val[j]:
                parts.append(le)
        return _expr_add(*parts)


def emit_nonneg_block(
    model: LpModel,
    A: list[Support],
    var_indices: list[int],
    L: dict[int, LinExpr],
    F: dict[Support, LinExpr],
    F0: LinExpr,
    tag: str,
    final_row: bool = True,
) -> NonnegBlock:
    """Append the five block row families to the model; returns the handles.

    ``final_row=False`` omits the closing >= 0 row, leaving the max-flow
    polytope whose optimum over sum_j rho_jt is the certified polynomial's
    shifted minimum (used by the extended-formulation equality tests).
    """
    A = sorted((tuple(sorted(a)) for a in A), key=grlex_key)
    for a in A:
        if len(a) < 2:
            raise ValueError(f"nonlinear support {a} has degree < 2")
        if a not in F:
            raise ValueError(f"missing coefficient expression for {a}")
    rows: list[str] = []
    flows: list[str] = []

    def sup_key(sup: Support) -> str:
        return "_".join(map(str, sup))

    rsa = {a: model.add_var(f"{tag}.sa.{sup_key(a)}") for a in A}
    raj = {
        (a, j): model.add_var(f"{tag}.aj.{sup_key(a)}.{j}") for a in A for j in a
    }
    rjs = {j: model.add_var(f"{tag}.js.{j}") for j in var_indices}
    rjt = {j: model.add_var(f"{tag}.jt.{j}", free=True) for j in var_indices}
    flows.extend(rsa.values())
    flows.extend(raj.values())
    flows.extend(rjs.values())
    flows.extend(rjt.values())

    for a in A:
        fe_coeffs, fe_const = F[a]
        rows.append(
            model.add_constr(
                _merge({rsa[a]: Fraction(1)}, fe_coeffs), "<=", -fe_const, f"{tag}.cap.{sup_key(a)}"
            )
        )
        split = {rsa[a]: Fraction(1)}
        for j in a:
            split[raj[(a, j)]] = Fraction(-1)
        rows.append(model.add_constr(split, "=", 0, f"{tag}.split.{sup_key(a)}"))
    for j in var_indices:
        bal = {rjs[j]: Fraction(-1), rjt[j]: Fraction(-1)}
        for a in A:
            if j in a:
                bal[raj[(a, j)]] = Fraction(1)
        rows.append(model.add_constr(bal, "=", 0, f"{tag}.bal.{j}"))
        le_coeffs, le_const = L[j]
        rows.append(
            model.add_constr(
                _merge({rjt[j]: Fraction(1)}, {v: -c for v, c in le_coeffs.items()}),
                "<=",
                le_const,
                f"{tag}.sink.{j}",
            )
        )
    if final_row:
        total = _expr_add(F0, *(F[a] for a in A))
        final = _merge({rjt[j]: Fraction(1) for j in var_indices}, total[0])
        rows.append(model.add_constr(final, ">=", -total[1], f"{tag}.nonneg"))
    return NonnegBlock(
        tag,
        tuple(A),
        tuple(var_indices),
        F0,
        dict(F),
        dict(L),
        tuple(rows),
        tuple(flows),
    )


def _merge(base: dict[str, Fraction], extra: dict[str, Fraction]) -> dict[str, Fraction]:
    out = dict(base)
    for v, c in extra.items():
        out[v] = out.get(v, Fraction(0)) + c
    return {v: c for v, c in out.items() if c}


@dataclass
class BlockGroup:
    """One signed certificate f^k: its pattern, coefficients, and blocks."""

    tag: str
    theta2_supports: tuple[Support, ...]
    coeff_exprs: dict[Support, LinExpr]  # every monomial of the certificate
    selector_blocks: list[tuple[Selector, NonnegBlock]]


@dataclass
class RelaxationModel:
    """An assembled LP plus everything needed to decode and re-solve it."""

    model: LpModel
    kind: str  # "level" | "signed" | "sa1" | "membership"
    f: Polynomial
    method: str | None = None
    level: int | None = None
    lam: str | None = None
    groups: list[BlockGroup] = field(default_factory=list)
    g_vars: dict[Support, str] = field(default_factory=dict)
    decomp: SignedDecomposition | None = None
    sa_vars: dict[str, list[str]] = field(default_factory=dict)

    @property
    def num_rows(self) -> int:
        return self.model.num_rows

    @property
    def num_cols(self) -> int:
        return self.model.num_cols

    def block_row_names(self) -> set[str]:
        return {
            name
            for group in self.groups
            for _, block in group.selector_blocks
            for name in block.row_names
        }

    def flow_var_names(self) -> set[str]:
        return {
            name
            for group in self.groups
            for _, block in group.selector_blocks
            for name in block.flow_vars
        }

    def master_model(self) -> LpModel:
        """The cutting-plane master: block rows and flows replaced by one
        seed cut per group (non-negativity at the all-zero point)."""
        drop_rows = self.block_row_names()
        drop_vars = self.flow_var_names()
        master = LpModel(self.model.name + ".master")
        for var in self.model.variables():
            if var not in drop_vars:
                master.add_var(var, self.model.is_free(var))
        for row in self.model.rows():
            if row.name not in drop_rows:
                master.add_constr(dict(row.coeffs), row.sense, row.rhs, row.name)
        for group in self.groups:
            if not group.selector_blocks:
                continue
            block = group.selector_blocks[0][1]
            coeffs, const = block.F0
            master.add_constr(coeffs, ">=", -const, f"seed.{group.tag}")
        master.set_objective(dict(self.model.objective), self.model.objective_const)
        return master

    def separation_oracle(self, tolerance: Fraction | float = 0):
        """Min-cut separation over every (group, selector) candidate."""

        def oracle(sol: LpSolution):
            cuts = []
            for group in self.groups:
                for selector, block in group.selector_blocks:
                    terms: dict[Support, Fraction] = {}
                    c0 = _expr_eval(block.F0, sol.values)
                    if c0:
                        terms[()] = c0
                    for a, fe in block.F.items():
                        v = _expr_eval(fe, sol.values)
                        if v > 0:
                            # Float solves can leave sign bounds violated by
                            # roundoff; clamp within tolerance, else it is a bug.
                            if v > tolerance:
                                raise AssertionError(f"positive NNS coefficient {v} at {a}")
                            v = Fraction(0)
                        if v:
                            terms[a] = v
                    for j, le in block.L.items():
                        v = _expr_eval(le, sol.values)
                        if v:
                            terms[(j,)] = v
                    cand = Polynomial(self.f.n_vars, terms)
                    x, value = minimize_nns(cand)
                    if value < -tolerance:
                        point = tuple(x[j - 1] for j in block.var_indices)
                        coeffs, const = block.point_cut(point)
                        cuts.append((f"cut.{block.tag}", coeffs, ">=", -const))
            return cuts

        return oracle


# -- cone membership -----------------------------------------------------------


def _checked_extension(decomp: SignedDecomposition, ext: ExtensionSet) -> ExtensionSet:
    if ext.base != decomp.s2:
        raise ValueError("extension set was built for a different PS pattern")
    if decomp.s2.n_active <= 14 and not verify_exact(ext):
        raise ValueError("extension set is not exact for the PS pattern")
    return ext


def build_nm_membership(
    decomp: SignedDecomposition,
    ext: ExtensionSet,
    tag: str = "nm",
) -> RelaxationModel:
    """The membership fragment for the cone of binary non-negative
    polynomials within the pattern: monomial variables carrying the sign
    constraints, one non-negativity block per selector."""
    _checked_extension(decomp, ext)
    n = decomp.n_vars
    model = LpModel(f"{tag}-membership")
    coeff_exprs: dict[Support, LinExpr] = {}
    c0 = model.add_var(f"{tag}.c", free=True)
    coeff_exprs[()] = _expr({c0: Fraction(1)})
    for j in range(1, n + 1):
        lv = model.add_var(f"{tag}.l.{j}", free=True)
        coeff_exprs[(j,)] = _expr({lv: Fraction(1)})
    neg_supports = [s for s in decomp.s1.supports() if len(s) >= 2]
    for sup in neg_supports:
        # f_a <= 0 via f_a = -u_a with u_a >= 0 (model bounds allow only 0/-inf).
        uv = model.add_var(f"{tag}.n.{'_'.join(map(str, sup))}")
        coeff_exprs[sup] = _expr({uv: Fraction(-1)})
    ps_supports = decomp.s2.supports()
    for sup in ps_supports:
        pv = model.add_var(f"{tag}.p.{'_'.join(map(str, sup))}")
        coeff_exprs[sup] = _expr({pv: Fraction(1)})

    group = BlockGroup(tag, tuple(ps_supports), coeff_exprs, [])
    var_indices = list(range(1, n + 1))
    for s_idx, selector in enumerate(ext.selectors):
        L = {}
        for j in var_indices:
            parts = [coeff_exprs[(j,)]]
            parts += [coeff_exprs[a] for a in ps_supports if selector(a) == j]
            L[j] = _expr_add(*parts)
        F = {a: coeff_exprs[a] for a in neg_supports}
        block = emit_nonneg_block(
            model, neg_supports, var_indices, L, F, coeff_exprs[()], f"{tag}.sel{s_idx}"
        )
        group.selector_blocks.append((selector, block))
    model.set_objective({})
    return RelaxationModel(
        model, "membership", Polynomial(n, {}), groups=[group], decomp=decomp
    )


def nm_contains(
    membership: RelaxationModel, f: Polynomial, arithmetic: str = "exact"
) -> bool:
    """Decide membership of a fixed polynomial by pinning the coefficient
    variables and solving the feasibility LP."""
    decomp = membership.decomp
    nn_part, ps_part = decompose(f)
    if not within(nn_part, decomp.s1) or not within(ps_part, decomp.s2):
        return False
    pinned = membership.model.copy(membership.model.name + ".pinned")
    group = membership.groups[0]
    for sup, expr in group.coeff_exprs.items():
        coeffs, const = expr
        pinned.add_constr(coeffs, "=", f.coeff(sup) - const, f"pin.{'_'.join(map(str, sup)) or 'c'}")
    return solve(pinned, arithmetic).status == "optimal"


# -- signed reformulation (exact, fixed polynomial) ----------------------------


def build_signed_reformulation(
    f: Polynomial,
    method: str = STANDARD,
    max_standard: int = 65536,
    max_lovasz_vars: int = 20,
) -> RelaxationModel:
    """max lambda s.t. f - lambda is certified binary non-negative, with the
    full exact extension set of f's PS pattern.  The optimum is the exact
    binary minimum of f.  Raises CapExceededError when the PS pattern is
    too large for a monolithic extension set (use the hierarchies then).
    """
    decomp = ambient_decomposition(f)
    if method == STANDARD:
        ext = all_standard_selectors(decomp.s2, max_size=max_standard)
    elif method == LOVASZ:
        ext = relaxed_lovasz_set(decomp.s2, max_vars=max_lovasz_vars)
    else:
        raise ValueError(f"unknown extension method {method!r}")
    n = f.n_vars
    model = LpModel("signed-reformulation")
    lam = model.add_var("lam", free=True)
    neg_supports = [s for s in decomp.s1.supports() if len(s) >= 2]
    ps_supports = decomp.s2.supports()
    coeff_exprs: dict[Support, LinExpr] = {(): _expr({lam: Fraction(-1)}, f.coeff(()))}
    for j in range(1, n + 1):
        coeff_exprs[(j,)] = _expr({}, f.coeff((j,)))
    for sup in neg_supports + ps_supports:
        coeff_exprs[sup] = _expr({}, f.coeff(sup))

    group = BlockGroup("sr", tuple(ps_supports), coeff_exprs, [])
    var_indices = list(range(1, n + 1))
    for s_idx, selector in enumerate(ext.selectors):
        L = {}
        for j in var_indices:
            parts = [coeff_exprs[(j,)]]
            parts += [coeff_exprs[a] for a in ps_supports if selector(a) == j]
            L[j] = _expr_add(*parts)
        F = {a: coeff_exprs[a] for a in neg_supports}
        block = emit_nonneg_block(
            model, neg_supports, var_indices, L, F, coeff_exprs[()], f"sr.sel{s_idx}"
        )
        group.selector_blocks.append((selector, block))
    model.set_objective({lam: Fraction(1)})
    return RelaxationModel(
        model, SIGNED, f, method=method, lam=lam, groups=[group], decomp=decomp
    )


# -- hierarchy levels -----------------------------------------------------------


def num_levels(f: Polynomial, method: str) -> int:
    """Levels of the relevant partition tree (1 when the PS part is empty)."""
    decomp = ambient_decomposition(f)
    size = decomp.m2 if method == STANDARD else decomp.n2
    if method not in (STANDARD, LOVASZ):
        raise ValueError(f"unknown hierarchy method {method!r}")
    if size <= 1:
        return 1
    return math.ceil(math.log2(size)) + 1


def build_level_relaxation(
    f: Polynomial,
    level: int,
    method: str,
    widen_when_pure_ps: bool = False,
    max_standard: int = 65536,
    max_lovasz_vars: int = 20,
) -> RelaxationModel:
    """The level-i signed relaxation of min f over the hypercube.

    Standard method: the partition tree runs over the PS monomials; each
    node k becomes a certificate whose PS support is the node, with the
    full product selector set.  Lovász method: the tree runs over the PS
    variables; node k's certificate covers the PS monomials inside the
    node's variables, with a relaxed Lovász selector set; PS monomials
    spanning two nodes are matched by the nonnegative remainder g alone.
    Every certificate shares the ambient NNS pattern (full affine block
    plus f's negative nonlinear support).

    ``widen_when_pure_ps``: when f has no negative nonlinear terms, widen
    every certificate's PS support to the whole PS pattern (a coarser
    single-certificate alternative); off by default.
    """
    if method not in (STANDARD, LOVASZ):
        raise ValueError(f"unknown hierarchy method {method!r}")
    levels = num_levels(f, method)
    if not 1 <= level <= levels:
        raise ValueError(f"level {level} out of range 1..{levels}")
    decomp = ambient_decomposition(f)
    n = f.n_vars
    neg_supports = [s for s in decomp.s1.supports() if len(s) >= 2]
    ps_supports = decomp.s2.supports()

    # Partition the PS pattern into per-certificate supports.
    if decomp.m2 == 0:
        node_supports: list[tuple[Support, ...]] = [()]
    elif method == STANDARD:
        tree = build_partition_tree(ps_supports)
        node_supports = [tuple(node) for node in tree.level(level)]
    else:
        tree = build_partition_tree(decomp.s2.variables)
        node_supports = []
        for node in tree.level(level):
            vars_in = set(node)
            node_supports.append(tuple(a for a in ps_supports if set(a) <= vars_in))
    if widen_when_pure_ps and not neg_supports:
        # Pure-PS alternative: one certificate whose PS support is the
        # whole pattern.
        node_supports = [tuple(ps_supports)]
    else:
        # Drop certificates with an empty PS support: their NNS part folds
        # into any remaining certificate (the cone is closed under
        # addition).  Keep one when everything is empty so a pure-NNS
        # bound still exists.
        node_supports = [sups for sups in node_supports if sups] or [()]
        covered: set[Support] = set()
        for sups in node_supports:
            overlap = covered.intersection(sups)
            if overlap:
                raise AssertionError(f"PS supports assigned twice: {overlap}")
            covered.update(sups)

    model = LpModel(f"{method}-level{level}")
    lam = model.add_var("lam", free=True)
    couple_supports = [(), *[(j,) for j in range(1, n + 1)], *neg_supports, *ps_supports]
    g_vars = {sup: model.add_var(f"g.{'_'.join(map(str, sup)) or 'c'}") for sup in couple_supports}

    groups: list[BlockGroup] = []
    var_indices = list(range(1, n + 1))
    for k, sups in enumerate(node_supports):
        tag = f"k{k}"
        coeff_exprs: dict[Support, LinExpr] = {}
        c0 = model.add_var(f"{tag}.c", free=True)
        coeff_exprs[()] = _expr({c0: Fraction(1)})
        for j in range(1, n + 1):
            lv = model.add_var(f"{tag}.l.{j}", free=True)
            coeff_exprs[(j,)] = _expr({lv: Fraction(1)})
        for sup in neg_supports:
            uv = model.add_var(f"{tag}.n.{'_'.join(map(str, sup))}")
            coeff_exprs[sup] = _expr({uv: Fraction(-1)})
        for sup in sups:
            pv = model.add_var(f"{tag}.p.{'_'.join(map(str, sup))}")
            coeff_exprs[sup] = _expr({pv: Fraction(1)})
        block_s2 = decomp.s2.restrict(sups)
        if method == STANDARD:
            ext = all_standard_selectors(block_s2, max_size=max_standard)
        else:
            ext = relaxed_lovasz_set(block_s2, max_vars=max_lovasz_vars)
        group = BlockGroup(tag, tuple(sups), coeff_exprs, [])
        for s_idx, selector in enumerate(ext.selectors):
            L = {}
            for j in var_indices:
                parts = [coeff_exprs[(j,)]]
                parts += [coeff_exprs[a] for a in sups if selector(a) == j]
                L[j] = _expr_add(*parts)
            F = {a: coeff_exprs[a] for a in neg_supports}
            block = emit_nonneg_block(
                model, neg_supports, var_indices, L, F, coeff_exprs[()], f"{tag}.sel{s_idx}"
            )
            group.selector_blocks.append((selector, block))
        groups.append(group)

    # Coupling rows: f_a - lam*[a = constant] = g_a + sum_k f^k_a.
    for sup in couple_supports:
        row = {g_vars[sup]: Fraction(1)}
        if sup == ():
            row[lam] = Fraction(1)
        for group in groups:
            expr = group.coeff_exprs.get(sup)
            if expr is not None:
                row = _merge(row, expr[0])
        model.add_constr(row, "=", f.coeff(sup), f"couple.{'_'.join(map(str, sup)) or 'c'}")
    model.set_objective({lam: Fraction(1)})
    return RelaxationModel(
        model,
        "level",
        f,
        method=method,
        level=level,
        lam=lam,
        groups=groups,
        g_vars=g_vars,
        decomp=decomp,
    )


def level_size_bound(f: Polynomial, level: int, method: str) -> int:
    """The encoding-size formula for the level, with degenerate clamps."""
    decomp = ambient_decomposition(f)
    m1, d1 = max(decomp.m1, 1), max(decomp.d1, 1)
    m2 = max(decomp.m2, 1)
    base = max(decomp.d2, 2) if method == STANDARD else 2
    return m1 * d1 * m2 * base ** (2**level)


# -- first-level Sherali-Adams baseline -----------------------------------------


def sherali_adams_1(f: Polynomial) -> RelaxationModel:
    """max lambda s.t. f - lambda is a nonnegative combination of the
    degree-<=2 bound-factor products, matched coefficientwise after
    multilinear expansion.  The products over every variable pair are
    x_j x_j', x_j(1-x_j'), (1-x_j)(1-x_j'), plus the single factors x_j
    and (1-x_j).  Degree <= 2 inputs only.
    """
    if f.degree > 2:
        raise ValueError(f"sherali_adams_1 requires degree <= 2, got {f.degree}")
    n = f.n_vars
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    model = LpModel("sherali-adams-1")
    lam = model.add_var("lam", free=True)
    c_pp: dict[tuple[int, int], str] = {}  # x_a x_b
    c_nn: dict[tuple[int, int], str] = {}  # (1-x_a)(1-x_b)
    c_pn: dict[tuple[int, int], str] = {}  # x_a (1-x_b), ordered
    for (a, b) in pairs:
        c_pp[(a, b)] = model.add_var(f"sa.pp.{a}.{b}")
        c_nn[(a, b)] = model.add_var(f"sa.nn.{a}.{b}")
        c_pn[(a, b)] = model.add_var(f"sa.pn.{a}.{b}")
        c_pn[(b, a)] = model.add_var(f"sa.pn.{b}.{a}")
    c_lin = {j: model.add_var(f"sa.x.{j}") for j in range(1, n + 1)}
    c_bar = {j: model.add_var(f"sa.nx.{j}") for j in range(1, n + 1)}

    const_row = {lam: Fraction(1)}
    for j in range(1, n + 1):
        const_row[c_bar[j]] = Fraction(1)
    for (a, b) in pairs:
        const_row[c_nn[(a, b)]] = Fraction(1)
    model.add_constr(const_row, "=", f.coeff(()), "match.c")
    for j in range(1, n + 1):
        row = {c_lin[j]: Fraction(1), c_bar[j]: Fraction(-1)}
        for (a, b) in pairs:
            if j in (a, b):
                row[c_nn[(a, b)]] = Fraction(-1)
        for (a, b), var in c_pn.items():
            if a == j:
                row[var] = row.get(var, Fraction(0)) + 1
        model.add_constr(row, "=", f.coeff((j,)), f"match.l.{j}")
    for (a, b) in pairs:
        row = {
            c_pp[(a, b)]: Fraction(1),
            c_nn[(a, b)]: Fraction(1),
            c_pn[(a, b)]: Fraction(-1),
            c_pn[(b, a)]: Fraction(-1),
        }
        model.add_constr(row, "=", f.coeff((a, b)), f"match.q.{a}.{b}")
    model.set_objective({lam: Fraction(1)})
    rm = RelaxationModel(model, SA1, f, method=SA1, lam=lam)
    rm.sa_vars = {
        "pp": [c_pp[k] for k in sorted(c_pp)],
        "nn": [c_nn[k] for k in sorted(c_nn)],
        "pn": [c_pn[k] for k in sorted(c_pn)],
        "lin": [c_lin[j] for j in sorted(c_lin)],
        "bar": [c_bar[j] for j in sorted(c_bar)],
    }
    return rm


# -- solving and certificates ----------------------------------------------------


def solve_relaxation(
    rm: RelaxationModel,
    mode: str = "extended",
    arithmetic: str = "exact",
    deadline: float | None = None,
) -> LpSolution:
    """Solve an assembled relaxation in extended or cutting-plane mode."""
    if mode == "extended":
        return solve(rm.model, arithmetic, deadline)
    if mode == "cutplane":
        tolerance = Fraction(0) if arithmetic == "exact" else 1e-9
        return solve_cutting_plane(
            rm.master_model(),
            rm.separation_oracle(tolerance),
            arithmetic,
            deadline,
        )
    raise ValueError(f"unknown mode {mode!r}")


@dataclass
class CertificateBlock:
    theta2_supports: tuple[Support, ...]
    polynomial: Polynomial
    flows: dict[str, dict[str, Fraction]]  # selector JSON -> flow var values


@dataclass
class RelaxationCertificate:
    """A verified decomposition f - lambda = g + sum of signed certificates."""

    lam: Fraction
    g: Polynomial
    blocks: list[CertificateBlock]

    def to_json(self) -> str:
        def poly_obj(p: Polynomial):
            return {" ".join(map(str, s)): str(c) for s, c in p.terms()}

        obj = {
            "lambda": str(self.lam),
            "g": poly_obj(self.g),
            "blocks": [
                {
                    "theta2": [" ".join(map(str, s)) for s in b.theta2_supports],
                    "certificate": poly_obj(b.polynomial),
                    "flows": {
                        sel: {v: str(c) for v, c in flows.items()}
                        for sel, flows in b.flows.items()
                    },
                }
                for b in self.blocks
            ],
        }
        return json.dumps(obj, indent=1)


def extract_certificate(rm: RelaxationModel, sol: LpSolution) -> RelaxationCertificate:
    """Decode lambda, g, and the certificates; re-verify everything.

    The recheck is independent of the LP: coefficient coupling is checked
    by exact polynomial arithmetic and every block's binary non-negativity
    by the min-cut oracle.  Raises CertificateError on any failure (which
    signals a solver or assembly bug).
    """
    if sol.status != "optimal":
        raise CertificateError(f"no certificate: solver status {sol.status}")
    if rm.kind not in ("level", SIGNED):
        raise ValueError(f"certificate extraction applies to signed relaxations, not {rm.kind}")
    values = sol.values
    if any(isinstance(v, float) for v in values.values()):
        raise ValueError("certificate extraction requires an exact solution")
    n = rm.f.n_vars
    lam = Fraction(values[rm.lam])
    if rm.kind == SIGNED:
        g = Polynomial(n, {})
    else:
        g = Polynomial(n, {sup: Fraction(values[var]) for sup, var in rm.g_vars.items()})
    blocks: list[CertificateBlock] = []
    total = g
    for group in rm.groups:
        terms = {
            sup: _expr_eval(expr, values) for sup, expr in group.coeff_exprs.items()
        }
        fk = Polynomial(n, terms)
        nn_part, ps_part = decompose(fk)
        flows: dict[str, dict[str, Fraction]] = {}
        for selector, block in group.selector_blocks:
            flows[selector.to_json()] = {
                v: Fraction(values[v]) for v in block.flow_vars if v in values
            }
            overest = nn_part + apply_selector(selector, ps_part) if not ps_part.is_zero() else nn_part
            _, value = minimize_nns(overest)
            if value < 0:
                raise CertificateError(
                    f"block {block.tag}: certified polynomial has minimum {value} < 0"
                )
        theta = SignedSupport(
            n,
            {
                **{(): 1},
                **{(j,): 1 for j in range(1, n + 1)},
                **{s: -1 for s in rm.decomp.s1.supports() if len(s) >= 2},
                **{s: 1 for s in group.theta2_supports},
            },
        )
        if not within(fk, theta):
            raise CertificateError(f"certificate {group.tag} leaves its signed pattern")
        blocks.append(CertificateBlock(group.theta2_supports, fk, flows))
        total = total + fk
    for sup, c in g.terms():
        if c < 0:
            raise CertificateError(f"remainder g has negative coefficient at {sup}")
    if total != rm.f.shift_constant(-lam):
        raise CertificateError("coefficient coupling failed: g + sum f^k != f - lambda")
    return RelaxationCertificate(lam, g, blocks)
