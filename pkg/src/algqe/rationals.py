"""Exact rational scalars.

Every numeric value in this package is an exact rational: no floats
anywhere.  We use gmpy2.mpq when available (it is several times faster)
and fall back to fractions.Fraction.  Both types keep values in lowest
terms with a positive denominator and interoperate freely (arithmetic,
comparison, hashing).
"""

from fractions import Fraction

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover
    Rat = Fraction

ZERO = Rat(0)
ONE = Rat(1)


def rat(num, den=1):
    """Exact rational num/den."""
    return Rat(num, den)


def as_fraction(x):
    """Convert any exact rational (mpq, Fraction, int) to Fraction."""
    return Fraction(int(x.numerator), int(x.denominator)) if hasattr(x, "numerator") else Fraction(x)


def rat_str(x):
    """Canonical text form p or p/q."""
    n, d = int(x.numerator), int(x.denominator)
    return str(n) if d == 1 else f"{n}/{d}"
