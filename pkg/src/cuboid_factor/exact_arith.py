"""Exact integer and rational helpers.

Python ints are arbitrary precision, so they serve directly as the big
integer type; ``fractions.Fraction`` keeps rationals in lowest terms with a
positive denominator.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]

# Quadratic-residue tables for the square pre-filter. 64*63*65*11 < 2**22, and
# any square must be a residue modulo each factor.
_FILTER_MODULI = (64, 63, 65, 11)
_RESIDUES = {m: frozenset((k * k) % m for k in range(m)) for m in _FILTER_MODULI}


class DomainError(ValueError):
    """Raised when an operation is called outside its domain."""


def integer_sqrt(n: int) -> int:
    """Return floor(sqrt(n)) for a non-negative integer ``n``."""
    if n < 0:
        raise DomainError(f"integer_sqrt of negative number {n}")
    return math.isqrt(n)


def passes_square_filter(n: int) -> bool:
    """Cheap necessary condition for ``n >= 0`` to be a perfect square."""
    return all(n % m in _RESIDUES[m] for m in _FILTER_MODULI)


def is_perfect_square(n: int, use_filter: bool = True) -> bool:
    if n < 0:
        return False
    if use_filter and not passes_square_filter(n):
        return False
    r = math.isqrt(n)
    return r * r == n


def to_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``"num"``/``"num/den"`` literal."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``num`` or ``num/den`` with integer parts; no decimals or floats."""
    s = text.strip()
    num_s, sep, den_s = s.partition("/")
    try:
        num = int(num_s)
        den = int(den_s) if sep else 1
    except ValueError:
        raise DomainError(f"not a rational literal: {text!r}") from None
    if sep and not den_s.strip().lstrip("+-").isdigit():
        raise DomainError(f"not a rational literal: {text!r}")
    if den == 0:
        raise DomainError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    """Canonical string form: ``"num"`` or ``"num/den"``."""
    q = to_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
