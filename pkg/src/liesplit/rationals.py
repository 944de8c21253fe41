"""Exact rational scalars shared by the whole package.

``gmpy2.mpq`` is used when available (it is considerably faster);
``fractions.Fraction`` is the drop-in fallback.  Both keep
gcd(|numerator|, denominator) = 1 with a positive denominator, compare
and hash compatibly, and never lose precision.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as QQ

    RATIONAL_BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as QQ

    RATIONAL_BACKEND = "fractions"

QQ0 = QQ(0)
QQ1 = QQ(1)


def qq(value, den=None):
    """Coerce ``value`` (int, rational, or 'num/den' string) to an exact rational."""
    if den is not None:
        return QQ(value, den)
    return QQ(value)


def num_den(q) -> tuple[int, int]:
    return int(q.numerator), int(q.denominator)


def qq_str(q) -> str:
    """Canonical 'num' or 'num/den' form, identical for both backends."""
    n, d = num_den(q)
    return str(n) if d == 1 else f"{n}/{d}"
