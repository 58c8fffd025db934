"""Enclosure correctness of the fixed-point kernel, checked against mpmath."""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primesums.errors import DomainError
from primesums import intervals as iv

mpmath.mp.prec = 400


def _contains(pair, w, true_value, slack=0):
    lo, hi = pair
    scaled = true_value * mpmath.mpf(2) ** w
    return mpmath.mpf(lo - slack) <= scaled <= mpmath.mpf(hi + slack)


@given(st.integers(2, 10 ** 30), st.sampled_from([32, 64, 96, 128]))
def test_ln_int_encloses(a, w):
    pair = iv.ln_int(a, w)
    assert _contains(pair, w, mpmath.log(a))
    assert pair[1] - pair[0] <= 4


@given(st.integers(1, 10 ** 15), st.integers(1, 10 ** 15))
def test_ln_rat_encloses(num, den):
    pair = iv.ln_rat(num, den, 64)
    assert _contains(pair, 64, mpmath.log(mpmath.mpf(num) / den))


def test_ln_one_is_exact():
    assert iv.ln_int(1, 64) == (0, 0)
    assert iv.ln_rat(7, 7, 64) == (0, 0)


@given(st.fractions(min_value=Fraction(-20), max_value=Fraction(20)))
@settings(max_examples=60)
def test_exp_point_encloses(x):
    w = 64
    m = (x.numerator << w) // x.denominator
    pair = iv.exp_point(m, w)
    assert _contains(pair, w, mpmath.exp(mpmath.mpf(m) / mpmath.mpf(2) ** w))


def test_exp_widths_tight():
    w = 96
    m = int(2.5 * 2 ** w)
    lo, hi = iv.exp_point(m, w)
    assert hi - lo <= 8


@given(st.integers(0, 10 ** 12), st.integers(1, 10 ** 6))
def test_sqrt_encloses(num, den):
    pair = iv.sqrt_rat(num, den, 64)
    assert _contains(pair, 64, mpmath.sqrt(mpmath.mpf(num) / den))


def test_pi_encloses():
    for w in (32, 64, 128, 256):
        assert _contains(iv.pi(w), w, mpmath.pi)
        assert iv.pi(w)[1] - iv.pi(w)[0] <= 4


def test_widths_shrink_with_precision():
    widths = []
    for w in (32, 64, 128):
        lo, hi = iv.ln_int(115438667, w)
        widths.append(Fraction(hi - lo, 1 << w))
    assert widths[0] >= widths[1] >= widths[2]


@given(
    st.fractions(min_value=Fraction(-100), max_value=Fraction(100)),
    st.fractions(min_value=Fraction(-100), max_value=Fraction(100)),
)
@settings(max_examples=60)
def test_imul_encloses_products(x, y):
    w = 64
    a = iv.from_fraction(x, w)
    b = iv.from_fraction(y, w)
    lo, hi = iv.imul(a, b, w)
    assert Fraction(lo, 1 << w) <= x * y <= Fraction(hi, 1 << w)


@given(
    st.fractions(min_value=Fraction(-50), max_value=Fraction(50)),
    st.fractions(min_value=Fraction(1, 100), max_value=Fraction(50)),
)
@settings(max_examples=60)
def test_idiv_encloses_quotients(x, y):
    w = 64
    lo, hi = iv.idiv(iv.from_fraction(x, w), iv.from_fraction(y, w), w)
    assert Fraction(lo, 1 << w) <= x / y <= Fraction(hi, 1 << w)


def test_atanh2_domain():
    with pytest.raises(DomainError):
        iv.atanh2(2, 3, 64)
    with pytest.raises(DomainError):
        iv.atanh2(-1, 3, 64)


def test_interval_type():
    I = iv.Interval(Fraction(1, 3), Fraction(1, 2))
    assert I.contains(Fraction(2, 5))
    assert not I.contains(1)
    assert I.width() == Fraction(1, 6)
    assert iv.Interval(Fraction(1), Fraction(2)).contains_interval(
        iv.Interval(Fraction(5, 4), Fraction(3, 2))
    )
    with pytest.raises(DomainError):
        iv.Interval(Fraction(2), Fraction(1))


def test_scale_frac_directed_both_signs():
    w = 64
    pair = iv.from_fraction(Fraction(7, 3), w)
    for c in (Fraction(5, 7), Fraction(-5, 7)):
        lo, hi = iv.iscale_frac(pair, c)
        assert Fraction(lo, 1 << w) <= c * Fraction(7, 3) <= Fraction(hi, 1 << w)
