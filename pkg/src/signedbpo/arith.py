"""Exact rational arithmetic backend.

All exact computations (flows, cuts, simplex pivots) run on ``gmpy2.mpq``
when gmpy2 is importable, because its arithmetic is several times faster
than ``fractions.Fraction``.  Values crossing the public API are always
normalized back to ``Fraction`` so callers never see backend types.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as _mpq

    HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _mpq = Fraction
    HAVE_GMPY2 = False

#: Zero and one in the fast backend type.
QZERO = _mpq(0)
QONE = _mpq(1)


def q(value) -> "_mpq":
    """Coerce an int/Fraction/mpq/str into the fast rational type."""
    if isinstance(value, float):
        # Floats round-trip exactly through Fraction (dyadic rationals).
        value = Fraction(value)
    if isinstance(value, Fraction):
        # Go through numerator/denominator: a Fraction carrying mpz
        # internals (created from gmpy2 values) trips mpq's fast path.
        return _mpq(value.numerator, value.denominator)
    return _mpq(value)


def to_fraction(value) -> Fraction:
    """Normalize a backend rational (or int) to a Fraction with int internals."""
    if isinstance(value, Fraction) and type(value.numerator) is int:
        return value
    if hasattr(value, "numerator"):
        return Fraction(int(value.numerator), int(value.denominator))
    return Fraction(value)
