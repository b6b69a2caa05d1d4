import random
from fractions import Fraction as F

import pytest

from signedbpo.extensions import all_standard_selectors, relaxed_lovasz_set
from signedbpo.lpmodel import LpModel
from signedbpo.mincut import minimize_nns, reduce as mc_reduce
from signedbpo.polynomials import (
    Polynomial,
    ambient_decomposition,
    brute_force_min,
    random_polynomial,
)
from signedbpo.relax import (
    LOVASZ,
    STANDARD,
    CertificateError,
    _expr,
    build_level_relaxation,
    build_nm_membership,
    build_signed_reformulation,
    emit_nonneg_block,
    extract_certificate,
    level_size_bound,
    nm_contains,
    num_levels,
    sherali_adams_1,
    solve_relaxation,
)
from signedbpo.simplex import solve


def P(n, terms):
    return Polynomial(n, terms)


def fixed_block_model(f, final_row=True):
    """A block over a fixed NNS polynomial's coefficients (no free variables)."""
    rf = mc_reduce(f)
    model = LpModel("block")
    A = list(rf.neg_terms)
    N = list(range(1, f.n_vars + 1))
    L = {j: _expr({}, rf.lin_terms.get(j, F(0))) for j in N}
    Fe = {a: _expr({}, rf.neg_terms[a]) for a in A}
    block = emit_nonneg_block(
        model, A, N, L, Fe, _expr({}, rf.f_const), "b", final_row=final_row
    )
    return model, block, rf


class TestNonnegBlock:
    def test_empty_support_degenerates(self):
        # No nonlinear terms: feasibility reduces to F0 + sum min(L_j, 0) >= 0.
        feasible = fixed_block_model(P(2, {(): 2, (1,): -1, (2,): -1}))[0]
        feasible.set_objective({})
        assert solve(feasible).status == "optimal"
        infeasible = fixed_block_model(P(2, {(): 1, (1,): -1, (2,): -1}))[0]
        infeasible.set_objective({})
        assert solve(infeasible).status == "infeasible"
        # Positive linear coefficients do not help feasibility.
        tight = fixed_block_model(P(2, {(): 0, (1,): 5, (2,): -1}))[0]
        tight.set_objective({})
        assert solve(tight).status == "infeasible"

    def test_fixed_nns_feasibility_matches_minimum(self):
        good = fixed_block_model(P(2, {(1,): 1, (2,): 1, (1, 2): -1}))[0]
        good.set_objective({})
        assert solve(good).status == "optimal"  # min = 0
        bad = fixed_block_model(P(2, {(): 1, (1,): -1, (2,): -1}))[0]
        bad.set_objective({})
        assert solve(bad).status == "infeasible"  # min = -1

    def test_extended_equality_oracle(self):
        # max sum rho_jt without the final row equals the shifted minimum.
        rng = random.Random(10)
        for _ in range(120):
            n = rng.randint(1, 8)
            f = random_polynomial(rng, n, rng.randint(0, 5), max_degree=4, nonlinear_sign=-1)
            model, block, rf = fixed_block_model(f, final_row=False)
            model.set_objective({v: 1 for v in block.flow_vars if ".jt." in v})
            sol = solve(model)
            _, v_star = brute_force_min(f)
            assert sol.status == "optimal"
            assert sol.objective == v_star - rf.f_const - rf.f_a

    def test_constant_only(self):
        # No variables at all: the block is exactly F0 >= 0.
        ok = fixed_block_model(P(0, {(): 1}))[0]
        ok.set_objective({})
        assert solve(ok).status == "optimal"
        bad = fixed_block_model(P(0, {(): -1}))[0]
        bad.set_objective({})
        assert solve(bad).status == "infeasible"

    def test_malformed_support(self):
        model = LpModel()
        with pytest.raises(ValueError):
            emit_nonneg_block(model, [(1,)], [1], {1: _expr()}, {(1,): _expr()}, _expr(), "t")

    def test_block_size_linear_in_md(self):
        f = random_polynomial(random.Random(1), 8, 6, max_degree=4, nonlinear_sign=-1)
        model, block, rf = fixed_block_model(f)
        m, d = f.num_terms, max(f.degree, 1)
        assert model.num_rows <= 4 * m * d + 2 * f.n_vars + 1
        assert model.num_cols <= m * d + 2 * f.n_vars + m


class TestMembership:
    def test_pure_ps_monomial(self):
        f = P(2, {(1, 2): 1})
        decomp = ambient_decomposition(f)
        membership = build_nm_membership(decomp, all_standard_selectors(decomp.s2))
        assert nm_contains(membership, f)

    def test_nns_needs_shift(self):
        f = P(2, {(1, 2): -1})
        decomp = ambient_decomposition(f)
        membership = build_nm_membership(decomp, all_standard_selectors(decomp.s2))
        assert not nm_contains(membership, f)
        assert nm_contains(membership, f.shift_constant(1))

    def test_product_of_complements(self):
        f = P(2, {(): 1, (1,): -1, (2,): -1, (1, 2): 1})
        decomp = ambient_decomposition(f)
        membership = build_nm_membership(decomp, all_standard_selectors(decomp.s2))
        assert nm_contains(membership, f)

    def test_membership_equals_binary_nonnegativity(self):
        rng = random.Random(11)
        for _ in range(40):
            n = rng.randint(1, 5)
            f = random_polynomial(rng, n, rng.randint(0, 3), max_degree=3)
            decomp = ambient_decomposition(f)
            membership = build_nm_membership(decomp, all_standard_selectors(decomp.s2))
            _, v_star = brute_force_min(f)
            assert nm_contains(membership, f) == (v_star >= 0)

    def test_wrong_base_rejected(self):
        f = P(2, {(1, 2): 1})
        other = ambient_decomposition(P(2, {(1,): 1}))
        ext = all_standard_selectors(other.s2)
        with pytest.raises(ValueError):
            build_nm_membership(ambient_decomposition(f), ext)


class TestSignedReformulation:
    def test_nns_input(self):
        f = P(3, {(): 3, (1, 2): -1, (2, 3): -1})
        rm = build_signed_reformulation(f)
        assert len(rm.groups[0].selector_blocks) == 1  # trivial selector set
        assert solve_relaxation(rm).objective == 1

    def test_single_ps_monomial(self):
        assert solve_relaxation(build_signed_reformulation(P(2, {(1, 2): 1}))).objective == 0

    def test_random_oracle_equality(self):
        rng = random.Random(12)
        for _ in range(60):
            n = rng.randint(1, 7)
            f = random_polynomial(rng, n, rng.randint(0, 4), max_degree=3)
            for method in (STANDARD, LOVASZ):
                rm = build_signed_reformulation(f, method=method)
                sol = solve_relaxation(rm)
                _, v_star = brute_force_min(f)
                assert sol.status == "optimal" and sol.objective == v_star

    def test_scaling_covariance(self):
        rng = random.Random(13)
        for _ in range(20):
            f = random_polynomial(rng, rng.randint(1, 5), rng.randint(0, 3))
            c = F(rng.randint(1, 9), rng.randint(1, 5))
            a = solve_relaxation(build_signed_reformulation(f)).objective
            b = solve_relaxation(build_signed_reformulation(f.scale(c))).objective
            assert b == c * a


class TestLevelRelaxation:
    def test_level_out_of_range(self):
        f = P(2, {(1, 2): 1})
        with pytest.raises(ValueError):
            build_level_relaxation(f, 99, STANDARD)
        with pytest.raises(ValueError):
            build_level_relaxation(f, 0, STANDARD)

    def test_nns_any_level_exact(self):
        f = P(3, {(): 3, (1, 2): -1, (2, 3): -1})
        for method in (STANDARD, LOVASZ):
            assert num_levels(f, method) == 1
            rm = build_level_relaxation(f, 1, method)
            assert solve_relaxation(rm).objective == 1

    def test_constant_polynomial(self):
        f = P(2, {(): F(5, 3)})
        for method in (STANDARD, LOVASZ):
            rm = build_level_relaxation(f, 1, method)
            sol = solve_relaxation(rm)
            assert sol.objective == F(5, 3)
            cert = extract_certificate(rm, sol)
            assert cert.lam == F(5, 3)

    def test_regression_two_block_instance(self):
        # f = x1x2 + x3x4 - 2 x1x3; exact minimum -2 at (1,0,1,0).
        f = P(4, {(1, 2): 1, (3, 4): 1, (1, 3): -2})
        assert brute_force_min(f)[1] == -2
        rm = build_level_relaxation(f, 1, STANDARD)
        assert len(rm.groups) == 2  # PS blocks {x1x2}, {x3x4}
        lam1 = solve_relaxation(rm).objective
        assert lam1 <= -2
        # Pinned regression value: the level-1 bound is already exact here.
        assert lam1 == -2

    def test_hierarchy_properties_random(self):
        rng = random.Random(14)
        for _ in range(25):
            n = rng.randint(2, 7)
            f = random_polynomial(rng, n, rng.randint(0, 4), max_degree=3)
            _, v_star = brute_force_min(f)
            for method in (STANDARD, LOVASZ):
                total_levels = num_levels(f, method)
                previous = None
                for level in range(1, total_levels + 1):
                    rm = build_level_relaxation(f, level, method)
                    lam = solve_relaxation(rm).objective
                    assert lam <= v_star
                    if previous is not None:
                        assert lam >= previous
                    previous = lam
                assert previous == v_star

    def test_scaling_covariance(self):
        rng = random.Random(19)
        for _ in range(10):
            f = random_polynomial(rng, rng.randint(2, 5), rng.randint(1, 3), max_degree=3)
            c = F(rng.randint(1, 7), rng.randint(1, 4))
            for method in (STANDARD, LOVASZ):
                rm = build_level_relaxation(f, 1, method)
                rm_scaled = build_level_relaxation(f.scale(c), 1, method)
                assert solve_relaxation(rm_scaled).objective == c * solve_relaxation(rm).objective

    def test_widen_flag_pure_ps(self):
        f = P(4, {(1, 2): 1, (3, 4): 2})
        rm = build_level_relaxation(f, 1, STANDARD, widen_when_pure_ps=True)
        assert len(rm.groups) == 1
        assert solve_relaxation(rm).objective == brute_force_min(f)[1]

    def test_size_audit(self):
        rng = random.Random(15)
        for _ in range(15):
            n = rng.randint(2, 7)
            f = random_polynomial(rng, n, rng.randint(1, 4), max_degree=3)
            for method in (STANDARD, LOVASZ):
                for level in range(1, num_levels(f, method) + 1):
                    rm = build_level_relaxation(f, level, method)
                    bound = 8 * level_size_bound(f, level, method)
                    assert rm.num_rows <= bound
                    assert rm.num_cols <= bound


class TestCutplaneMode:
    def test_matches_extended(self):
        rng = random.Random(16)
        for _ in range(25):
            n = rng.randint(1, 6)
            f = random_polynomial(rng, n, rng.randint(0, 3), max_degree=3)
            for method in (STANDARD, LOVASZ):
                for level in range(1, num_levels(f, method) + 1):
                    rm = build_level_relaxation(f, level, method)
                    a = solve_relaxation(rm, mode="extended").objective
                    b = solve_relaxation(rm, mode="cutplane").objective
                    assert a == b

    def test_zero_polynomial(self):
        rm = build_signed_reformulation(P(2, {}))
        assert solve_relaxation(rm, mode="cutplane").objective == 0


class TestSheraliAdams:
    def test_self_certificate(self):
        assert solve_relaxation(sherali_adams_1(P(2, {(1,): 1, (1, 2): -1}))).objective == 0

    def test_complement_product(self):
        f = P(2, {(): 1, (1,): -1, (2,): -1, (1, 2): 1})
        lam = solve_relaxation(sherali_adams_1(f)).objective
        assert lam == 0 == brute_force_min(f)[1]

    def test_constant(self):
        assert solve_relaxation(sherali_adams_1(P(3, {(): F(7, 2)}))).objective == F(7, 2)

    def test_degree_cap(self):
        with pytest.raises(ValueError):
            sherali_adams_1(P(3, {(1, 2, 3): 1}))

    def test_sound_and_dominated_by_level1(self):
        rng = random.Random(17)
        for _ in range(20):
            n = rng.randint(2, 6)
            f = random_polynomial(rng, n, rng.randint(0, 4), max_degree=2)
            lam_sa = solve_relaxation(sherali_adams_1(f)).objective
            _, v_star = brute_force_min(f)
            assert lam_sa <= v_star


class TestCertificates:
    def test_extract_and_recheck(self):
        rng = random.Random(18)
        for _ in range(15):
            n = rng.randint(2, 6)
            f = random_polynomial(rng, n, rng.randint(0, 3), max_degree=3)
            for method in (STANDARD, LOVASZ):
                level = num_levels(f, method)
                rm = build_level_relaxation(f, level, method)
                sol = solve_relaxation(rm)
                cert = extract_certificate(rm, sol)
                assert cert.lam == brute_force_min(f)[1]
                rebuilt = cert.g
                for block in cert.blocks:
                    rebuilt = rebuilt + block.polynomial
                assert rebuilt == f.shift_constant(-cert.lam)

    def test_json_dump(self):
        f = P(2, {(1, 2): 1})
        rm = build_signed_reformulation(f)
        sol = solve_relaxation(rm)
        cert = extract_certificate(rm, sol)
        text = cert.to_json()
        assert '"lambda"' in text and '"blocks"' in text

    def test_infeasible_surfaces(self):
        from signedbpo.simplex import LpSolution

        rm = build_signed_reformulation(P(2, {(1, 2): -1}))
        with pytest.raises(CertificateError):
            extract_certificate(rm, LpSolution("infeasible", None, None))
