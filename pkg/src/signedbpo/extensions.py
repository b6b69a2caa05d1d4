"""Exact sets of overestimation selectors for PS sign patterns.

A PS polynomial (positive nonlinear coefficients, no affine part) is
dominated on the hypercube by the linear polynomial obtained by replacing
each monomial with one of its own variables.  Such a replacement is a
*selector*: a map from each supported monomial to one of its variables.
A set of selectors is *exact* when, at every binary point, the minimum of
the selected linear overestimators equals the polynomial itself -- for
every PS polynomial within the pattern, not just one sample.  Exactness is
therefore checked at the support level: a selector is exact at a point x
iff x_{sel(a)} = x^a for every supported monomial a.

Three constructions are provided:

* the full product set of selectors (standard extension),
* selectors induced by variable orderings (Lovász extension), where each
  monomial picks its last variable under the ordering, and
* a filtered family of orderings covering every point of the block cube as
  a prefix (relaxed Lovász extension), at most 2^n' orderings, optionally
  replaced by a symmetric-chain cover of size C(n', floor(n'/2)).

Everything here is pure and immutable; selector sets can be consumed from
multiple threads.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .polynomials import (
    CapExceededError,
    Polynomial,
    SignedSupport,
    Support,
    grlex_key,
    within,
)


def _check_ps_pattern(s2: SignedSupport) -> None:
    for sup, sg in s2.items():
        if len(sup) < 2 or sg != 1:
            raise ValueError("expected a PS sign pattern (positive, nonlinear only)")


@dataclass(frozen=True)
class Selector:
    """A monomial -> variable assignment with sel(a) in supp(a)."""

    assignment: dict[Support, int]

    def __post_init__(self):
        for sup, j in self.assignment.items():
            if j not in sup:
                raise ValueError(f"selector maps {sup} to {j}, which is outside the monomial")

    def __call__(self, support: Support) -> int:
        return self.assignment[support]

    def __hash__(self) -> int:
        return hash(frozenset(self.assignment.items()))

    def __eq__(self, other) -> bool:
        return isinstance(other, Selector) and self.assignment == other.assignment

    def to_json(self) -> str:
        """Serialize as {"<sorted-indices>": j, ...} with space-joined keys."""
        obj = {" ".join(map(str, sup)): j for sup, j in sorted(self.assignment.items(), key=lambda kv: grlex_key(kv[0]))}
        return json.dumps(obj)

    @classmethod
    def from_json(cls, text: str) -> "Selector":
        obj = json.loads(text)
        return cls({tuple(int(t) for t in key.split()): j for key, j in obj.items()})


@dataclass(frozen=True)
class ExtensionSet:
    """An exact family of selectors for one PS pattern."""

    base: SignedSupport
    selectors: tuple[Selector, ...]
    method: str  # "standard" | "lovasz" | "relaxed_lovasz"
    orderings: tuple[tuple[int, ...], ...] = field(default=())

    def __len__(self) -> int:
        return len(self.selectors)


def all_standard_selectors(s2: SignedSupport, max_size: int = 65536) -> ExtensionSet:
    """The full product set: every way of picking one variable per monomial.

    Size is the product of the monomial degrees; raises CapExceededError
    beyond ``max_size``.  An empty pattern yields the single empty selector
    (the extension of the zero polynomial is the zero polynomial).
    """
    _check_ps_pattern(s2)
    supports = s2.supports()
    size = 1
    for sup in supports:
        size *= len(sup)
        if size > max_size:
            raise CapExceededError(f"standard selector set exceeds cap {max_size}")
    selectors = [
        Selector(dict(zip(supports, choice)))
        for choice in itertools.product(*(sup for sup in supports))
    ]
    return ExtensionSet(s2, tuple(selectors), "standard")


def lovasz_selector_from_order(pi: tuple[int, ...], s2: SignedSupport) -> Selector:
    """The selector induced by a variable ordering: each monomial takes the
    variable of its support that occurs last in the ordering."""
    _check_ps_pattern(s2)
    active = s2.variables
    if sorted(pi) != list(active):
        raise ValueError(f"{pi} is not a permutation of the active variables {active}")
    position = {j: k for k, j in enumerate(pi)}
    return Selector({sup: max(sup, key=position.__getitem__) for sup in s2.supports()})


def _scan_points(variables: tuple[int, ...]):
    """Subsets of the active variables, by increasing size then lex order."""
    for size in range(len(variables) + 1):
        yield from itertools.combinations(variables, size)


def _ordering_for(subset: tuple[int, ...], variables: tuple[int, ...]) -> tuple[int, ...]:
    rest = tuple(j for j in variables if j not in subset)
    return tuple(subset) + rest


def _prefix_sets(ordering: tuple[int, ...]) -> list[frozenset[int]]:
    return [frozenset(ordering[:k]) for k in range(len(ordering) + 1)]


def relaxed_lovasz_set(
    s2: SignedSupport,
    max_vars: int = 20,
    symmetric_chains: bool = False,
) -> ExtensionSet:
    """A filtered family of orderings whose prefixes cover the block cube.

    Scans the points of {0,1}^{N_s2} by increasing popcount then lex order;
    whenever a point's support is a prefix of no chosen ordering, the
    ordering listing that support (ascending) first and the remaining
    variables (ascending) after is added.  A final greedy pass removes any
    ordering all of whose prefixes are covered by the others, so the output
    is irreducible.  At most 2^n' orderings result.

    With ``symmetric_chains`` the cover is built from the bracketing
    symmetric chain decomposition instead, giving C(n', floor(n'/2))
    orderings.
    """
    _check_ps_pattern(s2)
    variables = s2.variables
    n_active = len(variables)
    if n_active > max_vars:
        raise CapExceededError(f"relaxed Lovász construction capped at {max_vars} variables")
    if n_active == 0:
        return ExtensionSet(s2, (Selector({}),), "relaxed_lovasz", ())

    if symmetric_chains:
        orderings = _symmetric_chain_orderings(variables)
    else:
        orderings = []
        covered: set[frozenset[int]] = set()
        for subset in _scan_points(variables):
            key = frozenset(subset)
            if key in covered:
                continue
            ordering = _ordering_for(subset, variables)
            orderings.append(ordering)
            covered.update(_prefix_sets(ordering))
        # Greedy irreducibility pass: drop an ordering when every one of its
        # prefixes is a prefix of some other remaining ordering.
        keep = list(orderings)
        idx = 0
        while idx < len(keep):
            others: set[frozenset[int]] = set()
            for k, ordering in enumerate(keep):
                if k != idx:
                    others.update(_prefix_sets(ordering))
            if all(pref in others for pref in _prefix_sets(keep[idx])):
                del keep[idx]
            else:
                idx += 1
        orderings = keep

    selectors: list[Selector] = []
    seen: set[Selector] = set()
    for ordering in orderings:
        sel = lovasz_selector_from_order(ordering, s2)
        if sel not in seen:
            seen.add(sel)
            selectors.append(sel)
    method = "relaxed_lovasz"
    return ExtensionSet(s2, tuple(selectors), method, tuple(orderings))


def _symmetric_chain_orderings(variables: tuple[int, ...]) -> list[tuple[int, ...]]:
    """One maximal chain per symmetric chain of the bracketing decomposition.

    Bits are read as brackets (1 = open, 0 = close); matched pairs stay
    fixed along a chain while the unmatched positions fill with ones from
    the right.  Each chain extends to a maximal chain of the cube: bottom
    element first (ascending), then the unmatched positions in the order
    they flip to one, then the never-flipped positions (ascending).
    """
    n = len(variables)
    chains: dict[tuple, tuple[int, ...]] = {}
    for bits in itertools.product((0, 1), repeat=n):
        stack: list[int] = []
        matched_one: set[int] = set()
        matched_zero: set[int] = set()
        for pos, b in enumerate(bits):
            if b == 1:
                stack.append(pos)
            elif stack:
                matched_one.add(stack.pop())
                matched_zero.add(pos)
        unmatched = tuple(p for p in range(n) if p not in matched_one and p not in matched_zero)
        signature = (frozenset(matched_one), unmatched)
        if signature in chains:
            continue
        bottom = sorted(matched_one)
        flips = list(reversed(unmatched))  # ones fill from the right
        rest = sorted(matched_zero)
        order_positions = bottom + flips + rest
        chains[signature] = tuple(variables[p] for p in order_positions)
    return sorted(chains.values())


def apply_selector(sel: Selector, f_ps: Polynomial, base: SignedSupport | None = None) -> Polynomial:
    """The linear overestimator: each monomial's weight moves to its
    selected variable.  Validates f_ps against ``base`` when given."""
    if base is not None and not within(f_ps, base):
        raise ValueError("polynomial is not within the extension's base pattern")
    terms: dict[Support, Fraction] = {}
    for sup, c in f_ps.terms():
        if not sup or len(sup) == 1:
            raise ValueError("selectors apply to PS polynomials (nonlinear terms only)")
        j = sel(sup)
        terms[(j,)] = terms.get((j,), Fraction(0)) + c
    return Polynomial(f_ps.n_vars, terms)


def verify_exact(es: ExtensionSet, max_vars: int = 14) -> bool:
    """Support-level exactness check over the whole block cube.

    (a) every selector overestimates: x^a <= x_{sel(a)} at every point, and
    (b) for every point some selector is tight on every supported monomial.
    Both hold for every PS polynomial within the base iff they hold at the
    support level.
    """
    base = es.base
    variables = base.variables
    if len(variables) > max_vars:
        raise CapExceededError(f"verify_exact capped at {max_vars} active variables")
    supports = base.supports()
    for sel in es.selectors:
        for sup in supports:
            if sup not in sel.assignment:
                return False
    for point in itertools.product((0, 1), repeat=len(variables)):
        val = dict(zip(variables, point))
        exact_here = False
        for sel in es.selectors:
            tight = True
            for sup in supports:
                mono = min(val[j] for j in sup)
                chosen = val[sel(sup)]
                if mono > chosen:
                    return False  # overestimation violated (cannot happen for valid selectors)
                if mono != chosen:
                    tight = False
            if tight:
                exact_here = True
        if not exact_here:
            return False
    return True
