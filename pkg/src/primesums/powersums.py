"""Exact running sums of prime powers, and certified enclosures for real exponents.

Integer exponents get exact arbitrary-precision sums (every theorem-level
statement uses integer alpha and deserves an exact certificate).  Real
exponents get directed-rounded interval sums of exp(alpha * ln p).
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, PrecisionCapError, ResourceError
from .intervals import Interval, iexp, imul_int, iscale_frac, ln_int
from .primes import PrimeStream, default_stream


def _pow_small(p: int, alpha: int) -> int:
    # alpha is small (1..4 in every checker); inline the common cases
    if alpha == 1:
        return p
    if alpha == 2:
        return p * p
    if alpha == 3:
        return p * p * p
    if alpha == 4:
        pp = p * p
        return pp * pp
    return p ** alpha


@dataclass
class PowerSumSeries:
    """Append-only exact values S_n = sum_{k<=n} p_k^alpha, 1-indexed."""

    alpha: int
    values: list[int] = field(default_factory=list)
    memory_budget_bytes: int = 4 << 30

    def __post_init__(self):
        if self.alpha < 1:
            raise DomainError("PowerSumSeries requires integer alpha >= 1")

    @property
    def n_max(self) -> int:
        return len(self.values)

    def value(self, n: int) -> int:
        if not 1 <= n <= self.n_max:
            raise DomainError(f"S_{n} not computed (have 1..{self.n_max})")
        return self.values[n - 1]

    def mean(self, n: int) -> Fraction:
        return Fraction(self.value(n), n)

    def extend(self, n_target: int, stream: PrimeStream | None = None) -> "PowerSumSeries":
        """Fill exact values up to n_target; valid state is kept on failure."""
        if n_target <= self.n_max:
            return self
        stream = stream or default_stream()
        s = self.values[-1] if self.values else 0
        # rough footprint model: n values of the current width
        width_bytes = max(s.bit_length() // 8, 8)
        if n_target * width_bytes > self.memory_budget_bytes:
            raise ResourceError(
                f"dense series to n={n_target} would need roughly "
                f"{n_target * width_bytes} bytes; use streaming mode",
                cursor=checkpoint_payload(self, stream),
            )
        alpha = self.alpha
        append = self.values.append
        for p in stream.iter_primes(self.n_max + 1, n_target):
            s += _pow_small(p, alpha)
            append(s)
        return self


def extend(series: PowerSumSeries, n_target: int, stream: PrimeStream | None = None):
    """Module-level alias of PowerSumSeries.extend."""
    return series.extend(n_target, stream)


def iter_power_sums(alpha: int, n_from: int, n_to: int,
                    stream: PrimeStream | None = None,
                    start_sum: int | None = None):
    """Streaming (window-free) supply of (n, S_n) pairs.

    `start_sum` must equal S_{n_from - 1} when given; otherwise it is
    computed by a throwaway pass.  This is the frontier-push path: memory
    stays O(1) regardless of range.
    """
    stream = stream or default_stream()
    s = start_sum if start_sum is not None else power_sum_at(alpha, n_from - 1, stream)
    for n, p in enumerate(stream.iter_primes(n_from, n_to), start=n_from):
        s += _pow_small(p, alpha)
        yield n, s


def power_sum_at(alpha: int, n: int, stream: PrimeStream | None = None) -> int:
    """Exact S_n by a single pass (0 for n = 0)."""
    if n < 0:
        raise DomainError("power_sum_at requires n >= 0")
    stream = stream or default_stream()
    s = 0
    for p in stream.iter_primes(1, n):
        s += _pow_small(p, alpha)
    return s


def power_sums_at(alphas: tuple[int, ...], ns: tuple[int, ...],
                  stream: PrimeStream | None = None) -> dict[tuple[int, int], int]:
    """Exact S_n^(alpha) at every (alpha, n) grid point in one prime pass."""
    stream = stream or default_stream()
    targets = sorted(set(ns))
    out: dict[tuple[int, int], int] = {}
    sums = {a: 0 for a in alphas}
    it = iter(targets)
    nxt = next(it, None)
    for n, p in enumerate(stream.iter_primes(1, max(targets)), start=1):
        for a in alphas:
            sums[a] += _pow_small(p, a)
        if n == nxt:
            for a in alphas:
                out[(a, n)] = sums[a]
            nxt = next(it, None)
    return out


# ---------------------------------------------------------------------------
# checkpoints (streaming-mode resume)
# ---------------------------------------------------------------------------

def checkpoint_payload(series: PowerSumSeries, stream: PrimeStream | None = None) -> dict:
    stream = stream or default_stream()
    n = series.n_max
    payload = {
        "alpha": series.alpha,
        "n_max": n,
        "s_hex": hex(series.value(n)) if n else "0x0",
        "prime_index": n,
        "last_prime": stream.nth_prime(n) if n else None,
    }
    payload["checksum"] = _payload_checksum(payload)
    return payload


def _payload_checksum(payload: dict) -> str:
    body = {k: v for k, v in payload.items() if k != "checksum"}
    return hashlib.sha256(
        json.dumps(body, sort_keys=True).encode()
    ).hexdigest()


def write_checkpoint(path: str, series: PowerSumSeries,
                     stream: PrimeStream | None = None):
    payload = checkpoint_payload(series, stream)
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(payload, fh, sort_keys=True)
    os.replace(tmp, path)


def read_checkpoint(path: str) -> dict:
    from .errors import CheckpointError

    try:
        with open(path) as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"unreadable checkpoint {path}: {exc}") from exc
    if payload.get("checksum") != _payload_checksum(payload):
        raise CheckpointError(f"checksum mismatch in {path}")
    return payload


# ---------------------------------------------------------------------------
# real exponents
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RealPowerSumEnclosure:
    alpha: Fraction
    n: int
    enclosure: Interval


def real_power_sum(alpha: Fraction | float | int, n: int,
                   precision_bits: int = 64, *,
                   cap_bits: int = 4096,
                   stream: PrimeStream | None = None) -> RealPowerSumEnclosure:
    """Certified enclosure of sum_{k<=n} p_k^alpha for any rational alpha > 0.

    Each term is exp(alpha * ln p_k) in directed rounding; the working
    precision escalates until the total width is below 2^-precision_bits.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise DomainError("real_power_sum requires alpha > 0")
    if n < 1:
        raise DomainError("real_power_sum requires n >= 1")
    stream = stream or default_stream()
    primes = stream.prime_slice(1, n)
    w = min(max(precision_bits + n.bit_length() + 8, 64), cap_bits)
    while True:
        lo = hi = 0
        for p in primes:
            e = iscale_frac(ln_int(p, w), alpha)
            t = iexp(e, w)
            lo += t[0]
            hi += t[1]
        if hi - lo <= (1 << w) >> precision_bits:
            return RealPowerSumEnclosure(alpha, n, Interval.from_fixed((lo, hi), w))
        if w >= cap_bits:
            raise PrecisionCapError(
                f"cannot reach width 2^-{precision_bits} within {cap_bits} bits"
            )
        w = min(2 * w, cap_bits)


def exact_mean_ratio_holds(n_to: int, stream: PrimeStream | None = None) -> bool:
    """(n+1) S_n < n S_{n+1} for all n in [1, n_to], by exact integers."""
    stream = stream or default_stream()
    s_prev = 0
    for n, p in enumerate(stream.iter_primes(1, n_to + 1), start=1):
        s = s_prev + p
        if n >= 2 and not (n * s_prev < (n - 1) * s):
            return False
        s_prev = s
    return True
