"""Range checkers and threshold calculators for the prime power-sum statements.

Statement ids:

* EQ21 / EQ22          - n-th root of S_n/n (resp. S_n) strictly decreasing
* RATIO_MEAN / RATIO_PLAIN - the corresponding root ratios strictly increasing
* FIROOZBAKHT          - p_n^(1/n) strictly decreasing
* PRIMORIAL            - P_n < p_(n+1)^n (root sequence of primorials increases)
* PRIME_BETWEEN_SUMS   - a prime exists strictly between S_n and S_(n+1)
* EX11_DEC / EX11_RATIO - the n^(1/n) calibration sequence
* LEMMA31 / LEMMA32 / Q_BOUND - side conditions used by the proofs
* PN_LOWER / PN_UPPER / P1348 - prime growth bounds (certified numerically)
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .cmpcert import LogCombination, PrecisionPolicy
from .errors import DomainError, PrecisionCapError
from .intervals import (
    Interval,
    from_fraction,
    iadd,
    idiv,
    iexp,
    imul,
    ineg,
    ipow_int,
    iscale_frac,
    isub,
    ln_int,
    ln_rat,
)
from .powersums import power_sums_at
from .primes import PrimeStream, default_stream, is_prime
from .reports import CheckReport
from .scans import DEFAULT_SETTINGS, ScanSettings, run_scan

DESCRIPTIONS = {
    "EQ21": "n-th root of the mean prime power sum is strictly decreasing",
    "EQ22": "n-th root of the prime power sum is strictly decreasing",
    "RATIO_MEAN": "ratio of consecutive mean-power-sum roots is strictly increasing",
    "RATIO_PLAIN": "ratio of consecutive power-sum roots is strictly increasing",
    "FIROOZBAKHT": "n-th root of the n-th prime is strictly decreasing",
    "PRIMORIAL": "primorial stays below the next prime to the n-th power",
    "PRIME_BETWEEN_SUMS": "a prime lies strictly between consecutive prime sums",
    "EX11_DEC": "n-th root of n is strictly decreasing",
    "EX11_RATIO": "ratio of consecutive n-th roots of n is strictly increasing",
    "LEMMA31": "power sums dominate their integral lower bound",
    "LEMMA32": "power sums exceed n^(alpha+1)",
    "Q_BOUND": "next-prime power over the sum stays below c_alpha / n",
    "PN_LOWER": "the n-th prime is at least n log n",
    "PN_UPPER": "the n-th prime is below n (log n + log log n)",
    "P1348": "the next prime is below 1.348 n log n",
}


# ---------------------------------------------------------------------------
# monotonicity checkers (thin wrappers over the scan engines)
# ---------------------------------------------------------------------------

def check_mean_root_decreasing(alpha: int, n_from: int, n_to: int, *,
                               settings: ScanSettings = DEFAULT_SETTINGS,
                               stream: PrimeStream | None = None,
                               onset_scan: bool = False,
                               checkpoint_path: str | None = None) -> CheckReport:
    """Certify (S_n/n)^(1/n) > (S_(n+1)/(n+1))^(1/(n+1)) on [n_from, n_to]."""
    _require_alpha(alpha)
    return run_scan(
        engine="pair", desc={"kind": "powersum", "alpha": alpha}, mean=True,
        n_from=n_from, n_to=n_to, statement_id="EQ21", alpha=alpha,
        settings=settings, stream=stream, onset_scan=onset_scan,
        checkpoint_path=checkpoint_path,
    )


def check_root_decreasing(alpha: int, n_from: int, n_to: int, *,
                          settings: ScanSettings = DEFAULT_SETTINGS,
                          stream: PrimeStream | None = None,
                          onset_scan: bool = False,
                          checkpoint_path: str | None = None) -> CheckReport:
    """Certify S_n^(1/n) > S_(n+1)^(1/(n+1)); for alpha=1 this holds from n=2."""
    _require_alpha(alpha)
    return run_scan(
        engine="pair", desc={"kind": "powersum", "alpha": alpha}, mean=False,
        n_from=n_from, n_to=n_to, statement_id="EQ22", alpha=alpha,
        settings=settings, stream=stream, onset_scan=onset_scan,
        checkpoint_path=checkpoint_path,
    )


def check_ratio_increasing(alpha: int, with_mean: bool, n_from: int, n_to: int, *,
                           settings: ScanSettings = DEFAULT_SETTINGS,
                           stream: PrimeStream | None = None,
                           onset_scan: bool = False,
                           checkpoint_path: str | None = None) -> CheckReport:
    """Certify x_(n+1)/x_n < x_(n+2)/x_(n+1) for the root sequence x."""
    _require_alpha(alpha)
    return run_scan(
        engine="three", desc={"kind": "powersum", "alpha": alpha}, mean=with_mean,
        n_from=n_from, n_to=n_to,
        statement_id="RATIO_MEAN" if with_mean else "RATIO_PLAIN", alpha=alpha,
        settings=settings, stream=stream, onset_scan=onset_scan,
        checkpoint_path=checkpoint_path,
    )


def check_firoozbakht(n_from: int, n_to: int, *,
                      settings: ScanSettings = DEFAULT_SETTINGS,
                      stream: PrimeStream | None = None,
                      onset_scan: bool = False,
                      checkpoint_path: str | None = None) -> CheckReport:
    """Certify p_n^(1/n) > p_(n+1)^(1/(n+1)) per index."""
    return run_scan(
        engine="pair", desc={"kind": "primes"}, mean=False,
        n_from=n_from, n_to=n_to, statement_id="FIROOZBAKHT",
        settings=settings, stream=stream, onset_scan=onset_scan,
        checkpoint_path=checkpoint_path,
    )


def check_example11(n_from: int, n_to: int, *,
                    settings: ScanSettings = DEFAULT_SETTINGS,
                    onset_scan: bool = False) -> tuple[CheckReport, CheckReport]:
    """Kernel calibration on a_n = n^(1/n): decreasing from 3, ratio up from 4.

    Each statement is clamped to its own claimed onset; pass onset_scan to
    probe below (the decreasing claim genuinely fails at n = 2).
    """
    dec = run_scan(
        engine="pair", desc={"kind": "nat"}, mean=False,
        n_from=max(n_from, 3), n_to=n_to, statement_id="EX11_DEC",
        settings=settings, onset_scan=onset_scan,
    )
    ratio = run_scan(
        engine="three", desc={"kind": "nat"}, mean=False,
        n_from=max(n_from, 4), n_to=n_to, statement_id="EX11_RATIO",
        settings=settings, onset_scan=onset_scan,
    )
    return dec, ratio


def _require_alpha(alpha: int):
    if not isinstance(alpha, int) or alpha < 1:
        raise DomainError("integer checkers require integer alpha >= 1")


def check_mean_root_decreasing_real(alpha: Fraction, n_from: int, n_to: int, *,
                                    policy: PrecisionPolicy | None = None,
                                    stream: PrimeStream | None = None) -> CheckReport:
    """Interval-route variant of the mean-root check for any rational alpha > 0.

    Power sums become running enclosures of sum(exp(alpha * ln p_k)); an
    index that stays inconclusive is retried with the whole scan at the next
    precision rung, and reported undecided only at the cap.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    policy = policy or PrecisionPolicy()
    stream = stream or default_stream()
    t0 = time.perf_counter()
    report = CheckReport("EQ21", str(alpha), n_from, n_to)
    primes = stream.prime_slice(1, n_to + 1)
    for w in policy.ladder():
        report.violations, report.undecided = [], []
        report.max_precision_bits = w
        s_lo = s_hi = 0
        prev = None
        for n in range(1, n_to + 2):
            t = iexp(iscale_frac(ln_int(primes[n - 1], w), alpha), w)
            s_lo += t[0]
            s_hi += t[1]
            l_pair = (ln_rat(s_lo, 1 << w, w)[0], ln_rat(s_hi, 1 << w, w)[1])
            d_pair = ln_int(n, w)
            if prev is not None and n - 1 >= n_from:
                m = n - 1
                (al, ah), (ml, mh) = prev
                lo = (m + 1) * (al - mh) - m * (l_pair[1] - d_pair[0])
                if lo <= 0:
                    hi = (m + 1) * (ah - ml) - m * (l_pair[0] - d_pair[1])
                    if hi < 0:
                        report.violations.append(
                            {"n": m, "verdict": "LESS", "precision_bits": w})
                    else:
                        report.undecided.append(m)
            prev = (l_pair, d_pair)
        if not report.undecided:
            break
    report.wall_time_s = time.perf_counter() - t0
    return report


# ---------------------------------------------------------------------------
# primorial and prime-between-sums checkers
# ---------------------------------------------------------------------------

_PRIMORIAL_EXACT_LIMIT = 64


def check_primorial_increasing(n_from: int, n_to: int, *,
                               settings: ScanSettings = DEFAULT_SETTINGS,
                               stream: PrimeStream | None = None) -> CheckReport:
    """Certify P_n < p_(n+1)^n (hence P_n^(1/n) strictly increasing).

    Exact integers decide small n; beyond that the comparison is
    n*ln p_(n+1) vs the running certified sum of ln p_k.
    """
    t0 = time.perf_counter()
    stream = stream or default_stream()
    report = CheckReport("PRIMORIAL", None, n_from, n_to,
                         max_precision_bits=settings.scan_bits)
    w = settings.scan_bits
    primes = stream.prime_slice(1, n_to + 1)
    prod = 1
    sum_lo = sum_hi = 0
    for n in range(1, n_to + 1):
        p_next = primes[n]
        if n <= _PRIMORIAL_EXACT_LIMIT:
            prod *= primes[n - 1]
            if n >= n_from and not prod < p_next ** n:
                report.violations.append(
                    {"n": n, "verdict": "GREATER", "precision_bits": None})
            dl, dh = ln_int(primes[n - 1], w)
            sum_lo += dl
            sum_hi += dh
        else:
            dl, dh = ln_int(primes[n - 1], w)
            sum_lo += dl
            sum_hi += dh
            if n >= n_from:
                pl, _ = ln_int(p_next, w)
                if not n * pl > sum_hi:
                    # enclosure inconclusive; settle exactly (n is moderate)
                    if prod == 1 or not _primorial_exact(primes, n):
                        report.violations.append(
                            {"n": n, "verdict": "GREATER", "precision_bits": None})
    report.wall_time_s = time.perf_counter() - t0
    return report


def _primorial_exact(primes: list[int], n: int) -> bool:
    prod = 1
    for p in primes[:n]:
        prod *= p
    return prod < primes[n] ** n


def check_prime_between_sums(n_from: int, n_to: int, *,
                             stream: PrimeStream | None = None) -> CheckReport:
    """Certify that (S_n, S_(n+1)) contains a prime for each n in range.

    Witnesses come from prime_in_open_interval (ascending scan certified by
    deterministic Miller-Rabin above the sieve frontier); absence over a
    whole open interval is the (sensational) violation case.
    """
    t0 = time.perf_counter()
    stream = stream or default_stream()
    report = CheckReport("PRIME_BETWEEN_SUMS", None, n_from, n_to)
    s = sum(stream.prime_slice(1, n_from - 1)) if n_from > 1 else 0
    primes = stream.prime_slice(n_from, n_to + 1)
    for i, n in enumerate(range(n_from, n_to + 1)):
        s_lo = s + primes[i]
        s_hi = s_lo + primes[i + 1]
        if stream.prime_in_open_interval(s_lo, s_hi) is None:
            report.violations.append(
                {"n": n, "verdict": "EQUAL", "precision_bits": None})
        s = s_lo
    report.wall_time_s = time.perf_counter() - t0
    return report


# ---------------------------------------------------------------------------
# prime growth bounds (certified with directed rounding)
# ---------------------------------------------------------------------------

def check_prime_growth_bounds(n_from: int, n_to: int, *,
                              stream: PrimeStream | None = None,
                              scan_bits: int = 96) -> dict[str, list[int]]:
    """Certify, for every n in range, the three growth bounds

    - PN_LOWER: p_n >= n ln n          (checked for n >= 2)
    - PN_UPPER: p_n < n (ln n + ln ln n)   (checked for n >= 6)
    - P1348:   p_(n+1) < 1.348 n ln n      (checked for n >= 100)

    Returns violation indices per statement id (all empty on success).
    A pass is a certificate: each inequality is asserted against the
    rounded-unfavourable side of the enclosure of ln n, with ln ln n
    lower-bounded once per chunk (it is increasing in n).
    """
    stream = stream or default_stream()
    bad: dict[str, list[int]] = {"PN_LOWER": [], "PN_UPPER": [], "P1348": []}
    w = scan_bits
    one = 1 << w
    chunk = 8192
    c0 = max(n_from, 2)
    stream.ensure_count(n_to + 1)
    while c0 <= n_to:
        c1 = min(n_to, c0 + chunk - 1)
        ml, mh = ln_int(c0, w)
        # lnln is increasing, so its lower bound at the anchor serves every
        # n >= anchor in this chunk
        anchor_lo = ln_int(max(c0, 6), w)[0]
        lnln_lo = ln_rat(anchor_lo, one, w)[0]
        primes = stream.prime_slice(c0, c1 + 1)
        n = c0
        for i in range(c1 - c0 + 1):
            p = primes[i]
            scaled_p = p << w
            if scaled_p < n * mh:
                # pass needs p >= n * ub(ln n); straddle escalates per index
                el, eh = ln_int(n, 2 * w)
                if (p << (2 * w)) < n * eh:
                    bad["PN_LOWER"].append(n)
            if n >= 6:
                if not scaled_p < n * (ml + lnln_lo):
                    el, eh = ln_int(n, 2 * w)
                    ll = ln_rat(el, 1 << (2 * w), 2 * w)[0]
                    if not (p << (2 * w)) < n * (el + ll):
                        bad["PN_UPPER"].append(n)
            if n >= 100:
                if not 1000 * (primes[i + 1] << w) < 1348 * n * ml:
                    el, _ = ln_int(n, 2 * w)
                    if not 1000 * (primes[i + 1] << (2 * w)) < 1348 * n * el:
                        bad["P1348"].append(n)
            dl, dh = ln_rat(n + 1, n, w)
            ml += dl
            mh += dh
            n += 1
        c0 = c1 + 1
    return bad


# ---------------------------------------------------------------------------
# thresholds
# ---------------------------------------------------------------------------

def _ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor_fraction(x: Fraction) -> int:
    return x.numerator // x.denominator


def _certified_exp_int(exponent_iv, w0: int = 128, cap: int = 1 << 14,
                       mode: str = "ceil") -> int:
    """floor/ceil of exp over a certified exponent enclosure, escalating
    precision until the integer part is unambiguous."""
    w = w0
    while True:
        lo, hi = iexp(exponent_iv(w), w)
        I = Interval.from_fixed((lo, hi), w)
        a = _ceil_fraction(I.lo) if mode == "ceil" else _floor_fraction(I.lo)
        b = _ceil_fraction(I.hi) if mode == "ceil" else _floor_fraction(I.hi)
        if a == b:
            return a
        if w >= cap:
            raise PrecisionCapError(
                f"exp enclosure still straddles an integer at {w} bits")
        w *= 2


def threshold_N(alpha) -> int:
    """max(350000, ceil(exp(((a+1)^2 1.2^(2a+1) + (a+1) 1.2^(a+1)) / a)))."""
    a = Fraction(alpha)
    if a < 1:
        raise DomainError("threshold_N requires alpha >= 1")
    six5 = Fraction(6, 5)
    if a.denominator == 1:
        e = ((a + 1) ** 2 * six5 ** (2 * a.numerator + 1)
             + (a + 1) * six5 ** (a.numerator + 1)) / a

        def exponent_iv(w):
            return from_fraction(e, w)
    else:
        def exponent_iv(w):
            ln65 = ln_rat(6, 5, w)
            t1 = iexp(iscale_frac(ln65, 2 * a + 1), w)
            t2 = iexp(iscale_frac(ln65, a + 1), w)
            acc = iadd(iscale_frac(t1, (a + 1) ** 2), iscale_frac(t2, a + 1))
            return iscale_frac(acc, 1 / a)

    return max(350000, _certified_exp_int(exponent_iv, mode="ceil"))


def threshold_T23(alpha: int) -> int:
    """floor(exp(2 * 1.348^alpha + 1)), by certified interval evaluation."""
    if alpha < 1:
        raise DomainError("threshold_T23 requires alpha >= 1")
    e = 2 * Fraction(1348, 1000) ** alpha + 1
    return _certified_exp_int(lambda w: from_fraction(e, w), mode="floor")


# ---------------------------------------------------------------------------
# proof side conditions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProofConstants:
    """Constants from the ratio-monotonicity proof for a given alpha."""

    alpha: int

    @property
    def c_alpha(self) -> Fraction:
        return Fraction(1085, 1000) * (self.alpha + 1) * Fraction(6, 5) ** self.alpha

    def q_n(self, n: int, stream: PrimeStream | None = None,
            s_n: int | None = None) -> Fraction:
        stream = stream or default_stream()
        if s_n is None:
            s_n = power_sums_at((self.alpha,), (n,), stream)[(self.alpha, n)]
        p_next = stream.nth_prime(n + 1)
        return Fraction(p_next ** self.alpha, s_n)

    def d_n_combination(self, n: int, stream: PrimeStream | None = None) -> LogCombination:
        stream = stream or default_stream()
        sums = power_sums_at((self.alpha,), (n, n + 1, n + 2), stream)
        a = self.alpha
        return LogCombination([
            (Fraction(2, n + 1), Fraction(sums[(a, n + 1)], n + 1)),
            (Fraction(-1, n), Fraction(sums[(a, n)], n)),
            (Fraction(-1, n + 2), Fraction(sums[(a, n + 2)], n + 2)),
        ])


def lemma31_bound(alpha: int, n: int, w: int = 128) -> Interval:
    """Certified enclosure of the power-sum lower bound

        2^alpha + (n^(alpha+1) ln^alpha(n) / (alpha+1)) *
                  (1 - alpha / ((alpha+1) ln n)),

    defined for n >= 2."""
    if n < 2:
        raise DomainError("lemma31_bound requires n >= 2")
    _require_alpha(alpha)
    ln_n = ln_int(n, w)
    main = iscale_frac(ipow_int(ln_n, alpha, w),
                       Fraction(n ** (alpha + 1), alpha + 1))
    correction = isub(
        from_fraction(1, w),
        idiv(from_fraction(Fraction(alpha, alpha + 1), w), ln_n, w),
    )
    total = iadd(from_fraction(2 ** alpha, w), imul(main, correction, w))
    return Interval.from_fixed(total, w)


def lemma31_holds(alpha: int, n: int, *, stream: PrimeStream | None = None,
                  s_n: int | None = None, w: int = 128) -> bool:
    """Certified: S_n^(alpha) strictly exceeds the lemma's lower bound."""
    stream = stream or default_stream()
    if s_n is None:
        s_n = power_sums_at((alpha,), (n,), stream)[(alpha, n)]
    return Fraction(s_n) > lemma31_bound(alpha, n, w).hi


def lemma32_holds(alpha: int, n: int, *, stream: PrimeStream | None = None,
                  s_n: int | None = None) -> bool:
    """Exact-integer check of S_n^(alpha) > n^(alpha+1) (hypothesis n >= 55)."""
    _require_alpha(alpha)
    stream = stream or default_stream()
    if s_n is None:
        s_n = power_sums_at((alpha,), (n,), stream)[(alpha, n)]
    return s_n > n ** (alpha + 1)


def q_bound_check(alpha: int, n: int, *, stream: PrimeStream | None = None,
                  s_n: int | None = None) -> bool:
    """Exact-integer check of p_(n+1)^alpha / S_n < c_alpha / n.

    With c_alpha = 1.085 (alpha+1) 1.2^alpha encoded as an exact rational,
    the comparison is p^alpha * n * 1000 * 5^alpha < 1085 (alpha+1) 6^alpha * S.
    """
    _require_alpha(alpha)
    stream = stream or default_stream()
    if s_n is None:
        s_n = power_sums_at((alpha,), (n,), stream)[(alpha, n)]
    p_next = stream.nth_prime(n + 1)
    lhs = p_next ** alpha * n * 1000 * 5 ** alpha
    rhs = 1085 * (alpha + 1) * 6 ** alpha * s_n
    return lhs < rhs
