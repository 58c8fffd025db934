"""Fixed-point interval arithmetic with directed rounding.

Everything here works on integer pairs ``(lo, hi)`` interpreted at a scale of
``2**-w`` fractional bits: the pair encloses a real value ``v`` iff
``lo <= v * 2**w <= hi``.  Every operation rounds its lower endpoint down and
its upper endpoint up, so enclosures are preserved by construction.  Python's
arbitrary-precision integers make the arithmetic exact up to these explicit
roundings, which is what turns a comparison against zero into a certificate.

The transcendental kernels (log, exp, atan/pi) are truncated series with an
explicit tail bound added to the upper endpoint; each bound is justified in
the docstring of the function that applies it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import DomainError

FixedPair = tuple[int, int]


def ceil_div(a: int, b: int) -> int:
    """Ceiling division for b > 0 (a may be negative)."""
    return -((-a) // b)


# ---------------------------------------------------------------------------
# basic directed-rounded pair operations
# ---------------------------------------------------------------------------

def iadd(a: FixedPair, b: FixedPair) -> FixedPair:
    return (a[0] + b[0], a[1] + b[1])


def isub(a: FixedPair, b: FixedPair) -> FixedPair:
    return (a[0] - b[1], a[1] - b[0])


def ineg(a: FixedPair) -> FixedPair:
    return (-a[1], -a[0])


def imul(a: FixedPair, b: FixedPair, w: int) -> FixedPair:
    """General interval product (any signs)."""
    one = 1 << w
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(ps) >> w, ceil_div(max(ps), one))


def imul_int(a: FixedPair, m: int) -> FixedPair:
    """Exact product with an integer scalar."""
    if m >= 0:
        return (a[0] * m, a[1] * m)
    return (a[1] * m, a[0] * m)


def iscale_frac(a: FixedPair, c: Fraction) -> FixedPair:
    """Directed product with an exact rational scalar."""
    p, q = c.numerator, c.denominator
    if p >= 0:
        return ((a[0] * p) // q, ceil_div(a[1] * p, q))
    return ((a[1] * p) // q, ceil_div(a[0] * p, q))


def idiv(a: FixedPair, b: FixedPair, w: int) -> FixedPair:
    """Interval quotient; the divisor must be strictly positive."""
    if b[0] <= 0:
        raise DomainError("interval division requires a strictly positive divisor")
    lo = (a[0] << w) // (b[1] if a[0] >= 0 else b[0])
    hi = ceil_div(a[1] << w, b[0] if a[1] >= 0 else b[1])
    return (lo, hi)


def ipow_int(a: FixedPair, k: int, w: int) -> FixedPair:
    """k-th power of a nonnegative interval, k >= 0."""
    if a[0] < 0:
        raise DomainError("ipow_int requires a nonnegative interval")
    lo, hi = 1 << w, 1 << w
    for _ in range(k):
        lo = (lo * a[0]) >> w
        hi = ceil_div(hi * a[1], 1 << w)
    return (lo, hi)


def from_fraction(x: Fraction | int, w: int) -> FixedPair:
    """Tightest fixed-point enclosure of an exact rational."""
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    return ((num << w) // den, ceil_div(num << w, den))


# ---------------------------------------------------------------------------
# certified logarithm
# ---------------------------------------------------------------------------

_GUARD = 16


def _shift_down(pair: FixedPair, g: int) -> FixedPair:
    return (pair[0] >> g, ceil_div(pair[1], 1 << g))


def _atanh2_raw(num: int, den: int, w: int) -> FixedPair:
    one = 1 << w
    zl = (num << w) // den
    zh = ceil_div(num << w, den)
    z2l = (zl * zl) >> w
    z2h = ceil_div(zh * zh, one)
    sl, sh = 2 * zl, 2 * zh
    ul, uh = zl, zh
    m = 3
    while True:
        ul = (ul * z2l) >> w
        uh = ceil_div(uh * z2h, one)
        if uh == 0:
            sh += 1
            break
        sl += (2 * ul) // m
        sh += ceil_div(2 * uh, m)
        if uh <= m:
            un = ceil_div(uh * z2h, one)
            sh += ceil_div((2 * un) << w, (m + 2) * (one - z2h))
            break
        m += 2
    return (sl, sh)


def atanh2(num: int, den: int, w: int) -> FixedPair:
    """Enclosure of ``2*atanh(num/den) = ln((den+num)/(den-num))``.

    Requires ``0 <= num/den <= 1/2``.  The series is
    ``2*sum_{k>=0} z^(2k+1)/(2k+1)``; all terms are positive, so the rounded-
    down partial sum is a valid lower bound as it stands.  The tail after the
    last included exponent ``m`` is bounded by

        2 * z^(m+2) / ((m+2) * (1 - z^2)),

    a geometric-series bound, which is added to the upper endpoint.  The
    series runs with guard bits so the returned width is a couple of ulps
    at scale w regardless of how many terms were summed.
    """
    if num == 0:
        return (0, 0)
    if num < 0 or 2 * num > den:
        raise DomainError("atanh2 requires 0 <= num/den <= 1/2")
    return _shift_down(_atanh2_raw(num, den, w + _GUARD), _GUARD)


_LN2_CACHE: dict[int, FixedPair] = {}


def ln2(w: int) -> FixedPair:
    """Enclosure of ln 2 = 2*atanh(1/3)."""
    pair = _LN2_CACHE.get(w)
    if pair is None:
        pair = _LN2_CACHE[w] = atanh2(1, 3, w)
    return pair


def _ln_int_at(a: int, w: int) -> FixedPair:
    e = a.bit_length() - 1
    t = 1 << e
    l2l, l2h = ln2(w)
    if a == t:
        return (e * l2l, e * l2h)
    ml, mh = atanh2(a - t, a + t, w)
    return (e * l2l + ml, e * l2h + mh)


def ln_int(a: int, w: int) -> FixedPair:
    """Enclosure of ln(a) for a positive integer.

    Reduction: a = 2^e * m with m in [1, 2), then
    ln m = 2*atanh((a - 2^e)/(a + 2^e)) with argument < 1/3.  The e*ln2 term
    amplifies the ln2 enclosure width by e, so the reduction runs with guard
    bits and the result is rounded back to scale w.
    """
    if a <= 0:
        raise DomainError("ln_int requires a positive integer")
    if a == 1:
        return (0, 0)
    return _shift_down(_ln_int_at(a, w + _GUARD), _GUARD)


def ln_rat(num: int, den: int, w: int) -> FixedPair:
    """Enclosure of ln(num/den) for positive integers num, den.

    Ratios within a factor 2 of 1 go through a single atanh evaluation,
    which both tightens the result and makes incremental sequence updates
    (ratios near 1) cheap.
    """
    if num <= 0 or den <= 0:
        raise DomainError("ln_rat requires positive arguments")
    if num == den:
        return (0, 0)
    neg = num < den
    if neg:
        num, den = den, num
    if num <= 2 * den:
        lo, hi = atanh2(num - den, num + den, w)
    else:
        g = _GUARD
        al, ah = _ln_int_at(num, w + g)
        bl, bh = _ln_int_at(den, w + g)
        lo, hi = _shift_down((al - bh, ah - bl), g)
    return (-hi, -lo) if neg else (lo, hi)


def ln_fraction(x: Fraction | int, w: int) -> FixedPair:
    x = Fraction(x)
    return ln_rat(x.numerator, x.denominator, w)


# ---------------------------------------------------------------------------
# certified exponential
# ---------------------------------------------------------------------------

def _exp_point_raw(x: int, w: int) -> FixedPair:
    one = 1 << w
    l2l, l2h = ln2(w)
    l2m = (l2l + l2h) // 2
    k = (2 * x + l2m) // (2 * l2m)
    if k >= 0:
        rl, rh = x - k * l2h, x - k * l2l
    else:
        rl, rh = x - k * l2l, x - k * l2h
    if not (-(3 * one) // 4 <= rl and rh <= (3 * one) // 4):
        raise DomainError("exp_point argument reduction failed; w too small")
    acc_l, acc_h = one, one
    tl, th = one, one
    j = 1
    while True:
        pl = min(tl * rl, tl * rh, th * rl, th * rh)
        ph = max(tl * rl, tl * rh, th * rl, th * rh)
        tl = (pl >> w) // j
        th = ceil_div(ceil_div(ph, one), j)
        acc_l += tl
        acc_h += th
        mb = max(abs(tl), abs(th))
        if mb <= 2 and 2 * j >= 1:
            acc_l -= 2 * (mb + 1)
            acc_h += 2 * (mb + 1)
            break
        j += 1
    if k >= 0:
        lo, hi = acc_l << k, acc_h << k
    else:
        q = -k
        lo, hi = acc_l >> q, ceil_div(acc_h, 1 << q)
    return (max(lo, 0), hi)


def exp_point(x: int, w: int) -> FixedPair:
    """Enclosure of exp(x / 2**w) for an exact fixed-point argument.

    Reduction: pick k ~ round(x/ln2) and write exp(x) = 2^k * exp(r) with
    |r| <= 0.75 (the slack over ln2/2 absorbs the width of the ln2
    enclosure).  exp(r) is the Taylor series; the tail after term J is
    bounded by |term_J| * sum_{i>=1} (|r|/(J+1))^i <= 2*|term_J| once
    |r|/(J+1) <= 1/2, which the stopping rule guarantees.  Runs with guard
    bits, so the returned relative width is a few ulps at scale w.
    """
    g = _GUARD
    return _shift_down(_exp_point_raw(x << g, w + g), g)


def iexp(a: FixedPair, w: int) -> FixedPair:
    """Enclosure of exp over an interval (exp is increasing)."""
    return (exp_point(a[0], w)[0], exp_point(a[1], w)[1])


# ---------------------------------------------------------------------------
# certified square root and pi
# ---------------------------------------------------------------------------

def sqrt_rat(num: int, den: int, w: int) -> FixedPair:
    """Enclosure of sqrt(num/den) for num >= 0, den > 0 via integer isqrt."""
    if num < 0 or den <= 0:
        raise DomainError("sqrt_rat requires a nonnegative rational")
    scaled = num << (2 * w)
    lo = isqrt(scaled // den)
    hi = isqrt(ceil_div(scaled, den)) + 1
    return (lo, hi)


def isqrt_iv(a: FixedPair, w: int) -> FixedPair:
    """Enclosure of sqrt over a nonnegative interval."""
    if a[0] < 0:
        raise DomainError("isqrt_iv requires a nonnegative interval")
    return (isqrt(a[0] << w), isqrt(ceil_div(a[1] << w, 1)) + 1)


def _atan_inv(q: int, w: int) -> FixedPair:
    # atan(1/q) = sum (-1)^k / ((2k+1) q^(2k+1)); alternating with strictly
    # decreasing terms, so the truncation error is below the first omitted
    # term, which is below one ulp when the loop exits.
    one = 1 << w
    lo = hi = 0
    qq = q * q
    qpow = q
    k = 0
    while True:
        d = (2 * k + 1) * qpow
        t_lo, t_hi = one // d, ceil_div(one, d)
        if k % 2 == 0:
            lo += t_lo
            hi += t_hi
        else:
            lo -= t_hi
            hi -= t_lo
        if t_hi <= 1:
            return (lo - 1, hi + 1)
        qpow *= qq
        k += 1


_PI_CACHE: dict[int, FixedPair] = {}


def pi(w: int) -> FixedPair:
    """Enclosure of pi via Machin's formula 16*atan(1/5) - 4*atan(1/239)."""
    pair = _PI_CACHE.get(w)
    if pair is None:
        g = _GUARD
        al, ah = _atan_inv(5, w + g)
        bl, bh = _atan_inv(239, w + g)
        pair = _PI_CACHE[w] = _shift_down((16 * al - 4 * bh, 16 * ah - 4 * bl), g)
    return pair


# ---------------------------------------------------------------------------
# public interval type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    """A closed enclosure [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise DomainError(f"invalid interval: {self.lo} > {self.hi}")

    @classmethod
    def from_fixed(cls, pair: FixedPair, w: int) -> "Interval":
        scale = 1 << w
        return cls(Fraction(pair[0], scale), Fraction(pair[1], scale))

    @classmethod
    def point(cls, x: Fraction | int) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: Fraction | int | float) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def strictly_positive(self) -> bool:
        return self.lo > 0

    def strictly_negative(self) -> bool:
        return self.hi < 0

    def __str__(self) -> str:
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"
