import random
from fractions import Fraction as F

import pytest

from signedbpo.polynomials import (
    AFFINE,
    GENERAL,
    NNS,
    NPS,
    NS,
    PS,
    CapExceededError,
    Polynomial,
    SignedDecomposition,
    SignedSupport,
    ambient_decomposition,
    brute_force_min,
    classify,
    decompose,
    evaluate,
    format_polynomial,
    is_submodular,
    parse_polynomial,
    random_polynomial,
    signed_support,
    within,
)


def P(n, terms):
    return Polynomial(n, terms)


class TestEvaluate:
    def test_product_term(self):
        f = P(2, {(1, 2): 1})
        assert evaluate(f, (1, 1)) == 1
        assert evaluate(f, (1, 0)) == 0

    def test_affine(self):
        f = P(2, {(): 1, (1,): -1, (2,): -1})
        assert evaluate(f, (1, 1)) == -1

    def test_nns(self):
        f = P(3, {(): 3, (1, 2): -1, (2, 3): -1})
        assert evaluate(f, (1, 1, 1)) == 1

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            evaluate(P(2, {(1,): 1}), (1,))


class TestClassify:
    def test_affine(self):
        assert classify(P(1, {(): 1, (1,): 1})) == AFFINE

    def test_nns(self):
        assert classify(P(2, {(1,): 1, (1, 2): -1})) == NNS

    def test_ps(self):
        assert classify(P(3, {(1, 2): 2, (2, 3): 3})) == PS

    def test_ns(self):
        assert classify(P(2, {(1,): -1, (1, 2): -1})) == NS

    def test_nps(self):
        assert classify(P(2, {(1,): -1, (1, 2): 1})) == NPS

    def test_general(self):
        assert classify(P(3, {(1, 2): 1, (2, 3): -1})) == GENERAL

    def test_zero_is_affine(self):
        assert classify(P(3, {})) == AFFINE


class TestDecompose:
    def test_mixed(self):
        f = P(3, {(): 1, (1,): 1, (1, 2): -2, (2, 3): 3})
        nn, ps = decompose(f)
        assert nn == P(3, {(): 1, (1,): 1, (1, 2): -2})
        assert ps == P(3, {(2, 3): 3})

    def test_pure_nns(self):
        nn, ps = decompose(P(2, {(1, 2): -1}))
        assert nn == P(2, {(1, 2): -1}) and ps.is_zero()

    def test_pure_ps(self):
        nn, ps = decompose(P(3, {(1, 2, 3): 1}))
        assert nn.is_zero() and ps == P(3, {(1, 2, 3): 1})

    def test_reconstruction_random(self):
        rng = random.Random(0)
        for _ in range(1000):
            n = rng.randint(1, 8)
            f = random_polynomial(rng, n, rng.randint(0, 6), max_degree=4)
            nn, ps = decompose(f)
            assert nn + ps == f
            assert classify(nn) in (NNS, NS, AFFINE)
            assert classify(ps) in (PS, AFFINE)


class TestSignedSupport:
    def test_basic(self):
        s = signed_support(P(2, {(): 1, (1,): 1, (1, 2): -2}))
        assert s.sign(()) == 1 and s.sign((1,)) == 1 and s.sign((1, 2)) == -1
        assert s.m == 3 and s.d == 2

    def test_zero(self):
        s = signed_support(P(3, {}))
        assert s.m == 0 and s.d == 0 and s.n_active == 0

    def test_params(self):
        s = signed_support(P(3, {(2, 3): 3, (1, 2, 3): -1}))
        assert s.m == 2 and s.d == 3 and s.n_active == 3

    def test_within_of_self(self):
        rng = random.Random(1)
        for _ in range(200):
            f = random_polynomial(rng, rng.randint(1, 6), rng.randint(0, 4))
            assert within(f, signed_support(f))

    def test_within_signs(self):
        s = SignedSupport(2, {(1, 2): -1})
        assert within(P(2, {(1, 2): -1}), s)
        assert not within(P(2, {(1, 2): 1}), s)
        # linear signs are free wherever the pattern is nonzero
        s2 = SignedSupport(1, {(1,): 1})
        assert within(P(1, {(1,): -1}), s2)

    def test_within_support_containment(self):
        s = SignedSupport(2, {(1, 2): -1})
        assert not within(P(2, {(1,): 1}), s)


class TestAmbientDecomposition:
    def test_fields(self):
        f = P(3, {(1, 2): -1, (2, 3): 2, (1,): 5})
        dec = ambient_decomposition(f)
        assert dec.s1.sign(()) == 1
        assert all(dec.s1.sign((j,)) == 1 for j in (1, 2, 3))
        assert dec.s1.sign((1, 2)) == -1
        assert dec.s2.sign((2, 3)) == 1
        assert dec.m1 == 5 and dec.m2 == 1 and dec.m == 6
        assert dec.d1 == 2 and dec.d2 == 2
        assert dec.n1 == 3 and dec.n2 == 2

    def test_disjointness_enforced(self):
        with pytest.raises(ValueError):
            SignedDecomposition(
                SignedSupport(1, {(): 1, (1,): 1}),
                SignedSupport(1, {(1,): 1}),
            )


class TestBruteForce:
    def test_affine(self):
        x, v = brute_force_min(P(2, {(): 1, (1,): -1, (2,): -1}))
        assert x == (1, 1) and v == -1

    def test_xor_like(self):
        x, v = brute_force_min(P(2, {(1,): 1, (2,): 1, (1, 2): -2}))
        assert v == 0 and x == (0, 0)  # lexicographically smallest minimizer

    def test_zero(self):
        x, v = brute_force_min(P(3, {}))
        assert v == 0 and x == (0, 0, 0)

    def test_lex_tiebreak(self):
        # min of -x2 over two variables: minimizers (0,1) and (1,1)
        x, v = brute_force_min(P(2, {(2,): -1}))
        assert v == -1 and x == (0, 1)

    def test_cap(self):
        with pytest.raises(CapExceededError):
            brute_force_min(P(25, {(1,): 1}), cap=24)


class TestSubmodular:
    def test_nns_always_submodular(self):
        rng = random.Random(2)
        for _ in range(60):
            n = rng.randint(1, 8)
            f = random_polynomial(rng, n, rng.randint(0, 5), nonlinear_sign=-1)
            assert is_submodular(f)

    def test_positive_quadratic_not_submodular(self):
        assert not is_submodular(P(2, {(1, 2): 1}))

    def test_affine_modular(self):
        f = P(3, {(): 2, (1,): -1, (3,): 4})
        assert is_submodular(f) and is_submodular(-f)

    def test_cap(self):
        with pytest.raises(CapExceededError):
            is_submodular(P(17, {(1,): 1}), cap=16)

    def test_nns_n10(self):
        rng = random.Random(3)
        for _ in range(3):
            f = random_polynomial(rng, 10, 6, nonlinear_sign=-1)
            assert is_submodular(f)


class TestTextFormat:
    def test_parse_basic(self):
        f = parse_polynomial("3 :\n-1 : 1 2\n7/2 : 2 3\n# comment\n")
        assert f == P(3, {(): 3, (1, 2): -1, (2, 3): F(7, 2)})

    def test_round_trip(self):
        rng = random.Random(4)
        for _ in range(50):
            f = random_polynomial(rng, rng.randint(1, 7), rng.randint(0, 5))
            g = parse_polynomial(format_polynomial(f), n_vars=f.n_vars)
            assert f == g

    def test_duplicate_support_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            parse_polynomial("1 : 1 2\n2 : 1 2\n")

    def test_malformed(self):
        with pytest.raises(ValueError):
            parse_polynomial("1 + x2\n")
        with pytest.raises(ValueError):
            parse_polynomial("x : 1\n")
        with pytest.raises(ValueError):
            parse_polynomial("1 : 2 1\n")


class TestPolynomialBasics:
    def test_zero_coefficients_dropped(self):
        f = P(2, {(1,): 0, (1, 2): 1})
        assert f.num_terms == 1

    def test_graded_lex_iteration(self):
        f = P(3, {(1, 2): 1, (3,): 1, (): 1, (1, 3): 1})
        assert [s for s, _ in f.terms()] == [(), (3,), (1, 2), (1, 3)]

    def test_arithmetic(self):
        f = P(2, {(1,): 1})
        g = P(2, {(1,): -1, (2,): 2})
        assert (f + g) == P(2, {(2,): 2})
        assert (f - f).is_zero()
        assert f.scale(F(1, 2)) == P(2, {(1,): F(1, 2)})
        assert f.shift_constant(3) == P(2, {(): 3, (1,): 1})

    def test_bad_index(self):
        with pytest.raises(ValueError):
            P(2, {(3,): 1})
        with pytest.raises(ValueError):
            P(2, {(0,): 1})
