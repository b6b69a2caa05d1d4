# ## Linear overestimators of PS polynomials
#
# A PS polynomial (positive nonlinear coefficients) is dominated on the
# hypercube by linear polynomials obtained from *selectors*: each monomial
# hands its weight to one of its own variables.  A family of selectors is
# exact when its pointwise minimum recovers the polynomial at every binary
# point -- for every PS polynomial within the sign pattern at once.

import itertools
import math
from fractions import Fraction as F

from signedbpo import (
    Polynomial,
    SignedSupport,
    all_standard_selectors,
    apply_selector,
    evaluate,
    lovasz_selector_from_order,
    relaxed_lovasz_set,
    verify_exact,
)

s2 = SignedSupport(3, {(1, 2): 1, (2, 3): 1, (1, 2, 3): 1})
f = Polynomial(3, {(1, 2): 2, (2, 3): 3, (1, 2, 3): 1})

# ## The standard (product) family: one selector per way of choosing a
# variable from each monomial.

std = all_standard_selectors(s2)
print("standard family size:", len(std), "= product of degrees")
for sel in std.selectors[:4]:
    print("  selector", sel.assignment, "->", apply_selector(sel, f, s2))
print("exact:", verify_exact(std))

# ## Ordering-induced selectors: each monomial takes its last variable
# under a permutation.  The coefficients reproduce the telescoping finite
# differences of f along the permutation's prefix chain.

pi = (2, 3, 1)
sel = lovasz_selector_from_order(pi, s2)
print("ordering", pi, "->", sel.assignment, "->", apply_selector(sel, f, s2))

point = [0, 0, 0]
prev = evaluate(f, point)
for j in pi:
    point[j - 1] = 1
    now = evaluate(f, tuple(point))
    print(f"  difference at x{j}: {now - prev}")
    prev = now

# ## The relaxed family: cover every point of the block cube as a prefix
# of some ordering.  At most 2^n' orderings; here far fewer survive the
# irreducibility prune.

relaxed = relaxed_lovasz_set(s2)
print("relaxed orderings:", relaxed.orderings)
print("exact:", verify_exact(relaxed), "| size <= 2^3 =", 2 ** s2.n_active)

# The pointwise minimum over the family equals f everywhere:

for x in itertools.product((0, 1), repeat=3):
    vals = [evaluate(apply_selector(sel, f, s2), x) for sel in relaxed.selectors]
    assert min(vals) == evaluate(f, x)
print("pointwise minimum over the relaxed family recovers f at all 8 points")

# ## Symmetric-chain mode: C(n', floor(n'/2)) orderings from the
# bracketing chain decomposition, strictly fewer than 2^n' as n' grows.

for n in range(2, 8):
    pattern = SignedSupport(n, {tuple(range(1, n + 1)): 1})
    chain_set = relaxed_lovasz_set(pattern, symmetric_chains=True)
    default_set = relaxed_lovasz_set(pattern)
    print(
        f"n' = {n}: default {len(default_set.orderings):>3} orderings, "
        f"symmetric chains {len(chain_set.orderings):>3} "
        f"(= C({n},{n // 2}) = {math.comb(n, n // 2)})"
    )
