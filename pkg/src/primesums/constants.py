"""Two-sided brackets for the prime-sum series constants

    s1 = sum 1/S_n   and   s2 = sum (-1)^n / S_n.

Both are computed, never approximated: s1's tail is dominated through the
power-sum lower bound S_k > (k^2/2)(ln k - 1/2) (the alpha = 1 case of the
integral estimate), s2's through the alternating-series enclosure.  The
partial sums run as exact rationals while the common denominator stays
small, then switch to directed-rounded fixed point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ResourceError
from .intervals import Interval, ceil_div, from_fraction, ln_int
from .primes import PrimeStream, default_stream

_EXACT_DENOM_BITS = 4096
_W = 160


@dataclass(frozen=True)
class SeriesBracket:
    series_id: str
    partial_n: int
    bracket: Interval
    tail_bound_method: str

    def to_dict(self) -> dict:
        return {
            "series_id": self.series_id,
            "partial_n": self.partial_n,
            "lo": float(self.bracket.lo),
            "hi": float(self.bracket.hi),
            "width": float(self.bracket.width()),
            "tail_bound_method": self.tail_bound_method,
        }


def _tail_bound_s1(n: int, w: int) -> int:
    """Upper fixed-point bound for sum_{k>n} 1/S_k.

    For k >= 3, S_k > (k^2/2)(ln k - 1/2), which is increasing in the log
    factor, so the tail is below
        2/(ln(n+1) - 1/2) * sum_{k>n} 1/k^2 < 2 / ((ln(n+1) - 1/2) * n).
    """
    lnl = ln_int(n + 1, w)[0]
    denom = (lnl - (1 << w) // 2) * n
    if denom <= 0:
        raise DomainError("tail bound needs n >= 3")
    return ceil_div(2 << (2 * w), denom)


def s1_bracket(target_width: Fraction | float, *,
               stream: PrimeStream | None = None,
               max_terms: int = 2_000_000) -> SeriesBracket:
    """Bracket of width <= target_width containing sum 1/S_n.

    The lower end is the rounded-down partial sum; the upper end adds the
    certified tail bound.  Raises ResourceError when max_terms cannot reach
    the requested width (the achieved bracket rides along in the cursor).
    """
    target = Fraction(target_width)
    if target <= 0:
        raise DomainError("target width must be positive")
    stream = stream or default_stream()
    w = _W
    scaled_target = (target.numerator << w) // target.denominator
    acc = Fraction(0)
    lo = hi = 0
    exact = True
    s = 0
    n = 0
    for p in stream.iter_primes():
        n += 1
        s += p
        if exact:
            acc += Fraction(1, s)
            if acc.denominator.bit_length() > _EXACT_DENOM_BITS:
                lo = (acc.numerator << w) // acc.denominator
                hi = ceil_div(acc.numerator << w, acc.denominator)
                exact = False
        else:
            lo += (1 << w) // s
            hi += ceil_div(1 << w, s)
        if n >= 8 and (n & 1023) == 0 or n == max_terms:
            if exact:
                lo = (acc.numerator << w) // acc.denominator
                hi = ceil_div(acc.numerator << w, acc.denominator)
            tail = _tail_bound_s1(n, w)
            if hi + tail - lo <= scaled_target:
                return SeriesBracket(
                    "s1", n, Interval.from_fixed((lo, hi + tail), w),
                    "power-sum-lower-bound-tail",
                )
            if n >= max_terms:
                raise ResourceError(
                    f"width {float(target)} unreachable in {max_terms} terms",
                    cursor={"partial_n": n, "achieved_width":
                            float(Fraction(hi + tail - lo, 1 << w))},
                )


def s2_bracket(target_width: Fraction | float, *,
               stream: PrimeStream | None = None,
               max_terms: int = 2_000_000) -> SeriesBracket:
    """Bracket containing sum (-1)^n / S_n by the alternating-series rule.

    1/S_n decreases strictly, so consecutive partial sums enclose the limit:
    odd-length partials sit below, even-length partials above.
    """
    target = Fraction(target_width)
    if target <= 0:
        raise DomainError("target width must be positive")
    stream = stream or default_stream()
    w = _W
    scaled_target = (target.numerator << w) // target.denominator
    lo = hi = 0          # directed enclosure of the current partial sum
    prev_lo = prev_hi = 0
    s = 0
    n = 0
    for p in stream.iter_primes():
        n += 1
        s += p
        prev_lo, prev_hi = lo, hi
        if n & 1:
            lo -= ceil_div(1 << w, s)
            hi -= (1 << w) // s
        else:
            lo += (1 << w) // s
            hi += ceil_div(1 << w, s)
        if n >= 2:
            # limit lies between the previous and current partial sums
            b_lo = min(lo, prev_lo)
            b_hi = max(hi, prev_hi)
            if b_hi - b_lo <= scaled_target:
                return SeriesBracket(
                    "s2", n, Interval.from_fixed((b_lo, b_hi), w),
                    "alternating-series",
                )
        if n >= max_terms:
            raise ResourceError(
                f"width {float(target)} unreachable in {max_terms} terms",
                cursor={"partial_n": n},
            )
