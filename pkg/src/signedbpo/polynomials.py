"""Sparse multilinear polynomials over binary variables.

A monomial is identified by its *support*: the sorted tuple of 1-based
variable indices it multiplies (the empty tuple is the constant monomial).
A :class:`Polynomial` maps supports to exact rational coefficients;
coefficients of value zero are never stored, so the stored support set and
the monomial count are always well defined.  All types in this module are
immutable after construction and safe to share between threads.

Text format (one term per line)::

    # comment lines start with '#'
    3     :
    -1    : 1 2
    7/2   : 2 3

i.e. ``<rational-coeff> : <space-separated sorted variable indices>`` with
an empty index list for the constant term.  Duplicate supports are
rejected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .arith import to_fraction

Support = tuple[int, ...]

#: Classification labels (most specific wins; see :func:`classify`).
AFFINE = "affine"
NS = "NS"
PS = "PS"
NNS = "NNS"
NPS = "NPS"
GENERAL = "general"


class CapExceededError(RuntimeError):
    """An exhaustive operation was asked to run beyond its configured cap."""


def make_support(indices: Iterable[int], n_vars: int | None = None) -> Support:
    """Canonicalize an iterable of variable indices into a sorted support tuple."""
    sup = tuple(sorted(set(indices)))
    for j in sup:
        if not isinstance(j, int) or j < 1:
            raise ValueError(f"variable indices must be positive integers, got {j!r}")
        if n_vars is not None and j > n_vars:
            raise ValueError(f"variable index {j} exceeds n_vars={n_vars}")
    return sup


def grlex_key(support: Support) -> tuple[int, Support]:
    """Graded-lex sort key: by monomial degree, then lexicographic support."""
    return (len(support), support)


class Polynomial:
    """An immutable sparse multilinear polynomial with rational coefficients."""

    __slots__ = ("n_vars", "_terms")

    def __init__(self, n_vars: int, terms: Mapping[Iterable[int], object] | None = None):
        if n_vars < 0:
            raise ValueError("n_vars must be >= 0")
        self.n_vars = int(n_vars)
        canon: dict[Support, Fraction] = {}
        for sup, coeff in (terms or {}).items():
            sup = make_support(sup, self.n_vars)
            c = to_fraction(coeff)
            if c == 0:
                continue
            if sup in canon:
                raise ValueError(f"duplicate support {sup} after canonicalization")
            canon[sup] = c
        self._terms = canon

    # -- accessors ---------------------------------------------------------

    def terms(self) -> Iterator[tuple[Support, Fraction]]:
        """Iterate (support, coefficient) pairs in graded-lex order."""
        for sup in sorted(self._terms, key=grlex_key):
            yield sup, self._terms[sup]

    def coeff(self, support: Iterable[int]) -> Fraction:
        return self._terms.get(tuple(sorted(support)), Fraction(0))

    @property
    def num_terms(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int:
        return max((len(s) for s in self._terms), default=0)

    def supports(self) -> list[Support]:
        return sorted(self._terms, key=grlex_key)

    def is_zero(self) -> bool:
        return not self._terms

    # -- arithmetic --------------------------------------------------------

    def _binop(self, other: "Polynomial", sign: int) -> "Polynomial":
        if self.n_vars != other.n_vars:
            raise ValueError("n_vars mismatch")
        out = dict(self._terms)
        for sup, c in other._terms.items():
            out[sup] = out.get(sup, Fraction(0)) + sign * c
        return Polynomial(self.n_vars, out)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return self._binop(other, 1)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self._binop(other, -1)

    def __neg__(self) -> "Polynomial":
        return self.scale(-1)

    def scale(self, factor) -> "Polynomial":
        f = Fraction(factor)
        return Polynomial(self.n_vars, {s: f * c for s, c in self._terms.items()})

    def shift_constant(self, delta) -> "Polynomial":
        """Return self + delta (rational added to the constant term)."""
        out = dict(self._terms)
        out[()] = out.get((), Fraction(0)) + Fraction(delta)
        return Polynomial(self.n_vars, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.n_vars == other.n_vars
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.n_vars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if self.is_zero():
            return f"Polynomial({self.n_vars}, 0)"
        parts = []
        for sup, c in self.terms():
            mono = "*".join(f"x{j}" for j in sup) if sup else "1"
            parts.append(f"{c}*{mono}")
        return f"Polynomial({self.n_vars}, {' + '.join(parts)})"


def evaluate(f: Polynomial, x: Sequence[int]) -> Fraction:
    """Evaluate f at a binary point: sum of f_a * prod_{j in a} x_j.

    Raises ValueError if len(x) != f.n_vars.
    """
    if len(x) != f.n_vars:
        raise ValueError(f"point has {len(x)} entries, polynomial has {f.n_vars} variables")
    total = Fraction(0)
    for sup, c in f._terms.items():
        val = c
        for j in sup:
            if not x[j - 1]:
                val = 0
                break
        if val:
            total += val
    return total


def classify(f: Polynomial) -> str:
    """Classify by signed support pattern, most specific class first.

    Precedence: affine > NS/PS > NNS/NPS > general.  NS/PS constrain every
    coefficient sign; NNS/NPS constrain only the nonlinear ones.
    """
    nonlinear = [c for s, c in f._terms.items() if len(s) >= 2]
    if not nonlinear:
        return AFFINE
    all_coeffs = list(f._terms.values())
    if all(c <= 0 for c in all_coeffs):
        return NS
    if all(c >= 0 for c in all_coeffs):
        return PS
    if all(c <= 0 for c in nonlinear):
        return NNS
    if all(c >= 0 for c in nonlinear):
        return NPS
    return GENERAL


def is_nns_family(f: Polynomial) -> bool:
    """True when f's nonlinear coefficients are all nonpositive."""
    return classify(f) in (AFFINE, NS, NNS)


def decompose(f: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Split f into its NNS component and its PS component.

    The NNS part keeps the constant, all linear terms, and the negative
    nonlinear terms; the PS part keeps the positive nonlinear terms.  The
    two parts sum back to f coefficientwise.
    """
    nn_terms: dict[Support, Fraction] = {}
    ps_terms: dict[Support, Fraction] = {}
    for sup, c in f._terms.items():
        if len(sup) <= 1 or c < 0:
            nn_terms[sup] = c
        else:
            ps_terms[sup] = c
    return Polynomial(f.n_vars, nn_terms), Polynomial(f.n_vars, ps_terms)


class SignedSupport:
    """A sparse sign pattern in {-1,+1} per monomial support (absent = 0)."""

    __slots__ = ("n_vars", "_signs")

    def __init__(self, n_vars: int, signs: Mapping[Iterable[int], int] | None = None):
        self.n_vars = int(n_vars)
        canon: dict[Support, int] = {}
        for sup, sg in (signs or {}).items():
            sup = make_support(sup, self.n_vars)
            if sg not in (-1, 1):
                raise ValueError(f"sign must be -1 or +1, got {sg!r}")
            canon[sup] = sg
        self._signs = canon

    def sign(self, support: Iterable[int]) -> int:
        return self._signs.get(tuple(sorted(support)), 0)

    def supports(self) -> list[Support]:
        return sorted(self._signs, key=grlex_key)

    def items(self) -> Iterator[tuple[Support, int]]:
        for sup in self.supports():
            yield sup, self._signs[sup]

    @property
    def m(self) -> int:
        """Number of nonzero entries."""
        return len(self._signs)

    @property
    def d(self) -> int:
        """Max monomial degree over the support (0 when empty)."""
        return max((len(s) for s in self._signs), default=0)

    @property
    def variables(self) -> tuple[int, ...]:
        """Sorted indices of variables appearing in some supported monomial."""
        seen: set[int] = set()
        for sup in self._signs:
            seen.update(sup)
        return tuple(sorted(seen))

    @property
    def n_active(self) -> int:
        """Number of active variables (|N_s|, written n' elsewhere)."""
        return len(self.variables)

    def restrict(self, supports: Iterable[Support]) -> "SignedSupport":
        """The sub-pattern keeping only the given supports."""
        keep = set(tuple(sorted(s)) for s in supports)
        return SignedSupport(self.n_vars, {s: g for s, g in self._signs.items() if s in keep})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SignedSupport)
            and self.n_vars == other.n_vars
            and self._signs == other._signs
        )

    def __hash__(self) -> int:
        return hash((self.n_vars, frozenset(self._signs.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{s}:{g:+d}" for s, g in self.items())
        return f"SignedSupport({self.n_vars}, {{{body}}})"


def signed_support(f: Polynomial) -> SignedSupport:
    """The sign of each stored coefficient of f."""
    return SignedSupport(f.n_vars, {s: (1 if c > 0 else -1) for s, c in f._terms.items()})


def within(f: Polynomial, s: SignedSupport) -> bool:
    """The signed support constraint: is f within the pattern s?

    Constant and linear coefficients are free wherever s is nonzero and
    forced to zero where s is zero; nonlinear coefficients must be zero
    where s is zero and must not oppose s's sign elsewhere.
    """
    if f.n_vars != s.n_vars:
        raise ValueError("n_vars mismatch")
    for sup, c in f._terms.items():
        sg = s.sign(sup)
        if sg == 0:
            return False  # support of f must sit inside support of s
        if len(sup) >= 2 and ((sg > 0) != (c > 0)):
            return False
    return True


@dataclass(frozen=True)
class SignedDecomposition:
    """The split s = s1 + s2 of an ambient signed support pattern.

    s1 is the NNS part: the full constant/linear block plus the negative
    nonlinear entries; s2 is the PS part: positive nonlinear entries only.
    The two supports are disjoint and the constant/linear block always
    belongs to s1.
    """

    s1: SignedSupport
    s2: SignedSupport

    def __post_init__(self):
        sup1, sup2 = set(self.s1.supports()), set(self.s2.supports())
        if sup1 & sup2:
            raise ValueError("s1 and s2 supports must be disjoint")
        for sup, sg in self.s2.items():
            if len(sup) < 2 or sg != 1:
                raise ValueError("s2 may contain only positive nonlinear entries")
        for sup, sg in self.s1.items():
            if len(sup) >= 2 and sg != -1:
                raise ValueError("nonlinear entries of s1 must be negative")
        if self.s1.sign(()) == 0 or any(self.s1.sign((j,)) == 0 for j in range(1, self.s1.n_vars + 1)):
            raise ValueError("s1 must contain the full constant/linear block")

    @property
    def n_vars(self) -> int:
        return self.s1.n_vars

    # Derived parameters: counts, degrees, active variables of each part.
    @property
    def m1(self) -> int:
        return self.s1.m

    @property
    def d1(self) -> int:
        return self.s1.d

    @property
    def n1(self) -> int:
        return self.s1.n_active

    @property
    def m2(self) -> int:
        return self.s2.m

    @property
    def d2(self) -> int:
        return self.s2.d

    @property
    def n2(self) -> int:
        return self.s2.n_active

    @property
    def m(self) -> int:
        return self.m1 + self.m2


def ambient_decomposition(f: Polynomial) -> SignedDecomposition:
    """The ambient signed support decomposition used for bounding f.

    The nonlinear part of the pattern is f's own signed support; the
    constant and every linear entry are declared present (free) so that a
    constant shift and arbitrary linear certificate terms stay within the
    pattern.
    """
    n = f.n_vars
    s1_signs: dict[Support, int] = {(): 1}
    for j in range(1, n + 1):
        s1_signs[(j,)] = 1
    s2_signs: dict[Support, int] = {}
    for sup, c in f.terms():
        if len(sup) >= 2:
            if c < 0:
                s1_signs[sup] = -1
            else:
                s2_signs[sup] = 1
    return SignedDecomposition(SignedSupport(n, s1_signs), SignedSupport(n, s2_signs))


# -- exhaustive oracles -----------------------------------------------------


def brute_force_min(f: Polynomial, cap: int = 24) -> tuple[tuple[int, ...], Fraction]:
    """Exhaustive minimum of f over the binary hypercube.

    Returns the lexicographically smallest minimizer (x_1 is the most
    significant coordinate).  Coefficients are scaled to integers first so
    the inner loop runs on machine/big ints.
    """
    n = f.n_vars
    if n > cap:
        raise CapExceededError(f"brute_force_min: n_vars={n} exceeds cap={cap}")
    if n == 0:
        return (), f.coeff(())
    denom = 1
    for _, c in f._terms.items():
        denom = denom * c.denominator // _gcd(denom, c.denominator)
    masks = []
    const = 0
    for sup, c in f._terms.items():
        scaled = int(c * denom)
        if sup:
            mask = 0
            for j in sup:
                mask |= 1 << (n - j)  # x_1 is the most significant bit
            masks.append((mask, scaled))
        else:
            const = scaled
    best_val = None
    best_x = 0
    for point in range(1 << n):
        val = const
        for mask, coeff in masks:
            if point & mask == mask:
                val += coeff
        if best_val is None or val < best_val:
            best_val = val
            best_x = point
    xs = tuple((best_x >> (n - j)) & 1 for j in range(1, n + 1))
    return xs, Fraction(best_val, denom)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def is_submodular(f: Polynomial, cap: int = 16) -> bool:
    """Brute-force the submodularity inequality over all pairs of points.

    Checks g(x) + g(y) >= g(x|y) + g(x&y) for every x, y in the hypercube;
    values are precomputed once per point.
    """
    n = f.n_vars
    if n > cap:
        raise CapExceededError(f"is_submodular: n_vars={n} exceeds cap={cap}")
    size = 1 << n
    values = [Fraction(0)] * size
    for sup, c in f._terms.items():
        mask = 0
        for j in sup:
            mask |= 1 << (n - j)
        for point in range(size):
            if point & mask == mask:
                values[point] += c
    for x in range(size):
        for y in range(x + 1, size):
            if values[x] + values[y] < values[x | y] + values[x & y]:
                return False
    return True


# -- text format --------------------------------------------------------------


def parse_polynomial(text: str, n_vars: int | None = None) -> Polynomial:
    """Parse the one-term-per-line text format.

    ``n_vars`` defaults to the largest index seen (the format itself does
    not carry a variable count).  Duplicate supports are an error.
    """
    terms: dict[Support, Fraction] = {}
    max_idx = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ValueError(f"line {lineno}: expected '<coeff> : <indices>'")
        coeff_part, idx_part = line.split(":", 1)
        try:
            coeff = Fraction(coeff_part.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: bad coefficient {coeff_part.strip()!r}") from exc
        try:
            indices = tuple(int(tok) for tok in idx_part.split())
        except ValueError as exc:
            raise ValueError(f"line {lineno}: bad variable index in {idx_part.strip()!r}") from exc
        if any(j < 1 for j in indices):
            raise ValueError(f"line {lineno}: variable indices are 1-based")
        if list(indices) != sorted(set(indices)):
            raise ValueError(f"line {lineno}: indices must be sorted and distinct")
        sup = indices
        if sup in terms:
            raise ValueError(f"line {lineno}: duplicate support {sup}")
        terms[sup] = coeff
        if indices:
            max_idx = max(max_idx, indices[-1])
    if n_vars is None:
        n_vars = max_idx
    return Polynomial(n_vars, terms)


def format_polynomial(f: Polynomial) -> str:
    """Serialize to the text format (graded-lex term order)."""
    lines = [f"{c} : {' '.join(map(str, sup))}".rstrip() for sup, c in f.terms()]
    return "\n".join(lines) + ("\n" if lines else "")


def random_polynomial(
    rng,
    n_vars: int,
    n_nonlinear: int,
    max_degree: int = 3,
    coeff_range: tuple[int, int] = (-5, 5),
    nonlinear_sign: int | None = None,
    linear_density: float = 0.7,
    max_denominator: int = 10,
) -> Polynomial:
    """Draw a random sparse polynomial (test/demo helper).

    ``nonlinear_sign``: force -1 (NNS-style) or +1 (PS-style) nonlinear
    coefficients; None leaves them unconstrained.  Coefficients are uniform
    rationals p/q with p/q in ``coeff_range`` and q <= max_denominator.
    """
    lo, hi = coeff_range

    def draw_coeff() -> Fraction:
        den = rng.randint(1, max_denominator)
        num = rng.randint(lo * den, hi * den)
        return Fraction(num, den)

    terms: dict[Support, Fraction] = {}
    if rng.random() < 0.8:
        terms[()] = draw_coeff()
    for j in range(1, n_vars + 1):
        if rng.random() < linear_density:
            c = draw_coeff()
            if c:
                terms[(j,)] = c
    top = min(max_degree, n_vars)
    attempts = 0
    while sum(1 for s in terms if len(s) >= 2) < n_nonlinear and attempts < 50 * (n_nonlinear + 1):
        attempts += 1
        if top < 2:
            break
        deg = rng.randint(2, top)
        sup = tuple(sorted(rng.sample(range(1, n_vars + 1), deg)))
        if sup in terms:
            continue
        c = draw_coeff()
        if not c:
            continue
        if nonlinear_sign is not None:
            c = Fraction(nonlinear_sign) * abs(c)
        terms[sup] = c
    return Polynomial(n_vars, terms)


def all_points(n: int) -> Iterator[tuple[int, ...]]:
    """All binary points of dimension n, in lexicographic order."""
    return itertools.product((0, 1), repeat=n)
