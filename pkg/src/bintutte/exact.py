"""Exact rational parsing and formatting."""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import InputError

Rational = Union[int, Fraction]


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q`` or ``p``. Decimal strings such as ``0.5`` are rejected."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise InputError(f"not a rational: {text!r}") from None
    if q == 0:
        raise InputError(f"zero denominator: {text!r}")
    return Fraction(p, q)


def format_rational(x: Rational) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
