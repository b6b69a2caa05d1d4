# ## Sparse binary polynomials, sign patterns, and exhaustive oracles
#
# Walk through the core vocabulary: multilinear polynomials over {0,1}^n
# with exact rational coefficients, their classification by coefficient
# signs, and the split into a submodular (NNS) part and a supermodular
# (PS) part.  Run top to bottom; every value printed is exact.

from fractions import Fraction as F

from signedbpo import (
    Polynomial,
    ambient_decomposition,
    brute_force_min,
    classify,
    decompose,
    evaluate,
    format_polynomial,
    is_submodular,
    parse_polynomial,
    signed_support,
    within,
)

# ## Construction and evaluation
#
# A monomial is its support: the sorted tuple of variable indices.
# f = 3 - x1*x2 - x2*x3

f = Polynomial(3, {(): 3, (1, 2): -1, (2, 3): -1})
print("f:", f)
print("f(1,1,1) =", evaluate(f, (1, 1, 1)))
print("f(1,0,1) =", evaluate(f, (1, 0, 1)))

# The same polynomial in the text format (one term per line):

text = "3 :\n-1 : 1 2\n-1 : 2 3\n"
assert parse_polynomial(text) == f
print(format_polynomial(f))

# ## Classification by coefficient signs
#
# NNS = nonlinear coefficients all nonpositive (always submodular);
# PS = all coefficients nonnegative, nonlinear only in the useful case.

samples = [
    Polynomial(1, {(): 1, (1,): 1}),                 # affine
    Polynomial(2, {(1,): 1, (1, 2): -1}),            # NNS
    Polynomial(3, {(1, 2): 2, (2, 3): 3}),           # PS
    Polynomial(2, {(1,): -1, (1, 2): -1}),           # NS
    Polynomial(3, {(1, 2): 1, (2, 3): -1}),          # general
]
for g in samples:
    print(f"{str(g):<55} -> {classify(g)}")

# Every NNS polynomial is submodular; a positive product is not.

print("NNS sample submodular:", is_submodular(samples[1]))
print("x1*x2 submodular:", is_submodular(Polynomial(2, {(1, 2): 1})))

# ## The signed support decomposition
#
# f = nn(f) + pp(f): the NNS component keeps the affine part and the
# negative nonlinear terms, the PS component the positive nonlinear terms.

g = Polynomial(3, {(): 1, (1,): 1, (1, 2): -2, (2, 3): 3})
nn_part, ps_part = decompose(g)
print("g      :", g)
print("nn part:", nn_part)
print("ps part:", ps_part)
assert nn_part + ps_part == g

# The sign pattern itself, and the partial order "within":

s = signed_support(g)
print("pattern:", s, "| m =", s.m, "d =", s.d, "active =", s.variables)
print("g within its own pattern:", within(g, s))
print("-x1*x2 within pattern with s_12 = -1:", within(Polynomial(3, {(1, 2): -1}), s))

# The ambient decomposition frees the whole affine block (the shape every
# certificate in the relaxations shares):

dec = ambient_decomposition(g)
print("ambient s1 supports:", dec.s1.supports())
print("ambient s2 supports:", dec.s2.supports())
print("parameters: m1 =", dec.m1, "d1 =", dec.d1, "m2 =", dec.m2, "d2 =", dec.d2)

# ## The exhaustive oracle
#
# Everything downstream is validated against plain enumeration.

x_star, value = brute_force_min(g)
print("min g =", value, "at", x_star)
assert evaluate(g, x_star) == value
