"""Rigorous enclosures with exact rational endpoints.

Endpoints are :class:`fractions.Fraction`; rounding is always outward to a
dyadic with a fixed number of significant bits, so long computations stay
small.  Transcendental enclosures (``ln``, ``exp``) come from mpmath's
interval context and are converted to exact dyadic endpoints.
"""

from __future__ import annotations

import math
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction

from mpmath import iv
from mpmath.libmp import to_man_exp

GUARD_BITS = 16
_IV_LOCK = threading.Lock()


def round_down(x: Fraction, bits: int) -> Fraction:
    """Largest dyadic with ``bits`` significant bits that is <= x."""
    x = Fraction(x)
    if x == 0 or x.denominator.bit_length() == 1 and x.numerator.bit_length() <= bits:
        return x
    e = abs(x.numerator).bit_length() - x.denominator.bit_length()
    k = bits - e
    if k >= 0:
        return Fraction((x.numerator << k) // x.denominator, 1 << k)
    return Fraction((x.numerator // (x.denominator << -k)) << -k)


def round_up(x: Fraction, bits: int) -> Fraction:
    return -round_down(-Fraction(x), bits)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x) -> "Interval":
        return cls(Fraction(x), Fraction(x))

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def within(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def _coerce(self, other) -> "Interval":
        return other if isinstance(other, Interval) else Interval.point(other)

    def __add__(self, other):
        o = self._coerce(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def rounded(self, bits: int) -> "Interval":
        """Outward rounding of both endpoints to ``bits`` significant bits."""
        return Interval(round_down(self.lo, bits), round_up(self.hi, bits))

    def to_str(self, digits: int = 20) -> str:
        """``[lo,hi]`` in decimal, lo rounded down and hi rounded up."""
        with localcontext() as ctx:
            ctx.prec = digits + 10
            ctx.rounding = ROUND_FLOOR
            lo = Decimal(self.lo.numerator) / Decimal(self.lo.denominator)
            ctx.rounding = ROUND_CEILING
            hi = Decimal(self.hi.numerator) / Decimal(self.hi.denominator)
            ctx.prec = digits
            ctx.rounding = ROUND_FLOOR
            lo = +lo
            ctx.rounding = ROUND_CEILING
            hi = +hi
        return f"[{lo},{hi}]"

    def __str__(self):
        return self.to_str()


def decimal_digits(bits: int) -> int:
    return max(1, math.ceil(bits * math.log10(2)))


# -- algebraic enclosures -----------------------------------------------------


def iroot(x: int, k: int) -> int:
    """floor(x ** (1/k)) for integers x >= 0, k >= 1."""
    if x < 0 or k < 1:
        raise ValueError("iroot needs x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    # start above the root so Newton decreases monotonically onto it
    y = 1 << -(-x.bit_length() // k)
    while True:
        z = ((k - 1) * y + x // y ** (k - 1)) // k
        if z >= y:
            return y
        y = z


def two_power(exponent, bits: int) -> Interval:
    """Enclosure of ``2 ** exponent`` for rational ``exponent``.

    Exact when ``exponent`` is an integer; otherwise an interval of width
    ``2 ** -bits`` relative to the scale of the result.
    """
    e = Fraction(exponent)
    if e.denominator == 1:
        return Interval.point(Fraction(2) ** e.numerator)
    if e < 0:
        return two_power(-e, bits).reciprocal()
    a, b = e.numerator, e.denominator
    # floor(2**(a/b) * 2**bits) = iroot(2**(a + b*bits), b)
    target = 1 << (a + b * bits)
    r = iroot(target, b)
    scale = 1 << bits
    if r ** b == target:
        return Interval.point(Fraction(r, scale))
    return Interval(Fraction(r, scale), Fraction(r + 1, scale))


# -- transcendental enclosures via mpmath -------------------------------------


def _raw_to_fraction(raw) -> Fraction:
    # to_man_exp drops the sign, which lives in raw[0]
    man, exp = to_man_exp(raw)
    sign = -1 if raw[0] else 1
    # mantissa may be a gmpy2 mpz; Fraction arithmetic needs a plain int
    return sign * Fraction(int(man)) * Fraction(2) ** int(exp)


def _from_iv(v) -> Interval:
    lo, hi = v._mpi_
    return Interval(_raw_to_fraction(lo), _raw_to_fraction(hi))


def _iv_rational(x: Fraction):
    x = Fraction(x)
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


@contextmanager
def _iv_prec(bits: int):
    # mpmath's interval context keeps its precision as global state
    with _IV_LOCK:
        saved = iv.prec
        iv.prec = bits
        try:
            yield
        finally:
            iv.prec = saved


def ln(x, bits: int = 128) -> Interval:
    """Enclosure of the natural log of a positive rational."""
    with _iv_prec(bits + GUARD_BITS):
        return _from_iv(iv.log(_iv_rational(x)))


def exp(x, bits: int = 128) -> Interval:
    """Enclosure of ``e ** x`` for rational ``x``."""
    with _iv_prec(bits + GUARD_BITS):
        return _from_iv(iv.exp(_iv_rational(x)))
