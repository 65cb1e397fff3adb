import math
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bintutte.intervals import Interval, exp, iroot, ln, round_down, round_up, two_power


@given(st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6), st.integers(4, 80))
def test_rounding_brackets(x, bits):
    lo, hi = round_down(x, bits), round_up(x, bits)
    assert lo <= x <= hi
    assert lo.denominator & (lo.denominator - 1) == 0
    if x != 0:
        assert (hi - lo) <= abs(x) / 2 ** (bits - 2)


@given(st.integers(0, 10**40), st.integers(1, 7))
def test_iroot(x, k):
    r = iroot(x, k)
    assert r**k <= x < (r + 1) ** k


@given(st.fractions(min_value=-6, max_value=6, max_denominator=12), st.integers(20, 200))
def test_two_power_encloses(e, bits):
    iv = two_power(e, bits)
    if e.denominator == 1:
        assert iv.is_point
    # check the enclosure with exact powers: lo^b <= 2^a <= hi^b
    a, b = e.numerator, e.denominator
    assert iv.lo**b <= Fraction(2) ** a <= iv.hi**b
    assert iv.width <= Fraction(4, 2**bits) * max(1, iv.hi)


@pytest.mark.parametrize("x", [Fraction(2), Fraction(48), Fraction(1, 3), Fraction(10**30 + 7, 3)])
def test_ln_encloses_decimal_value(x):
    getcontext().prec = 80
    ref = (Decimal(x.numerator) / Decimal(x.denominator)).ln()
    iv = ln(x, 128)
    assert Decimal(iv.lo.numerator) / Decimal(iv.lo.denominator) <= ref
    assert ref <= Decimal(iv.hi.numerator) / Decimal(iv.hi.denominator)
    assert iv.width < Fraction(1, 2**120) * max(1, abs(iv.hi))


@pytest.mark.parametrize("x", [Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-7, 3)])
def test_exp_encloses_decimal_value(x):
    getcontext().prec = 80
    ref = (Decimal(x.numerator) / Decimal(x.denominator)).exp()
    iv = exp(x, 128)
    assert Decimal(iv.lo.numerator) / Decimal(iv.lo.denominator) <= ref
    assert ref <= Decimal(iv.hi.numerator) / Decimal(iv.hi.denominator)


def test_interval_arithmetic():
    a = Interval(Fraction(-1), Fraction(2))
    b = Interval(Fraction(3), Fraction(4))
    assert a * b == Interval(-4, 8)
    assert a + 1 == Interval(0, 3)
    assert b.reciprocal() == Interval(Fraction(1, 4), Fraction(1, 3))
    assert 1 - b == Interval(-3, -2)
    with pytest.raises(ZeroDivisionError):
        a.reciprocal()
    with pytest.raises(ValueError):
        Interval(2, 1)


def test_to_str_rounds_outward():
    iv = Interval(Fraction(1, 3), Fraction(2, 3))
    assert iv.to_str(5) == "[0.33333,0.66667]"
    assert Interval.point(Fraction(3, 2)).to_str(5) == "[1.5,1.5]"


def test_precision_restored():
    from mpmath import iv as ivctx

    before = ivctx.prec
    ln(3, 300)
    assert ivctx.prec == before
    assert math.isclose(float(ln(3, 53).lo), math.log(3))
