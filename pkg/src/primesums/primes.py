"""Prime generation: segmented sieve, indexed access, twin pairs, interval queries.

The sieve is odd-only and segmented (numpy bool masks, one segment at a time)
so pushing the frontier to ~1.5e8 stays cache-friendly and takes seconds.
Interval queries above the sieved frontier use a deterministic Miller-Rabin
test whose base set is a proven certificate for every modulus below
3.317e24, far past anything desk scale reaches.
"""

from __future__ import annotations

import hashlib
import math
import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, EmptyRangeError, ResourceError

# deterministic Miller-Rabin bases, valid for all n < 3317044064679887385961981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Deterministic primality for 0 <= n < 3.317e24."""
    if n >= _MR_LIMIT:
        raise DomainError(f"primality test is only certified below {_MR_LIMIT}")
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _simple_sieve(limit: int) -> np.ndarray:
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p).astype(np.int64)


def _upper_bound_nth_prime(n: int) -> int:
    # p_n < n(log n + log log n) for n >= 6; small cases padded by hand
    if n < 6:
        return 14
    ln = math.log(n)
    return int(n * (ln + math.log(ln)) * 1.02) + 16


@dataclass
class SieveConfig:
    """Sieve tuning.  segment_odds is the count of odd residues per segment;
    the default (2^21 odds = 2 MB mask) fits comfortably in L2-sized caches."""

    segment_odds: int = 1 << 21
    memory_budget_bytes: int = 2 << 30


@dataclass
class TwinPair:
    index: int
    lower: int

    @property
    def upper(self) -> int:
        return self.lower + 2


class PrimeStream:
    """Ordered supply of primes with lazy frontier growth.

    Primes are held in a single int64 array; `frontier` is the largest value
    sieved, so membership of any m <= frontier is decided by the array.
    """

    def __init__(self, config: SieveConfig | None = None):
        self.config = config or SieveConfig()
        self._primes = np.array([], dtype=np.int64)
        self.frontier = 1
        self._twin_lowers: np.ndarray | None = None

    @property
    def count(self) -> int:
        return len(self._primes)

    # -- frontier management ------------------------------------------------

    def _check_budget(self, limit: int):
        est_count = int(limit / max(math.log(limit) - 1.2, 1.0)) + 64
        est_bytes = est_count * 8 + self.config.segment_odds
        if est_bytes > self.config.memory_budget_bytes:
            raise ResourceError(
                f"sieving to {limit} needs ~{est_bytes} bytes, over the "
                f"{self.config.memory_budget_bytes} byte budget; reduce "
                "segment_odds or raise memory_budget_bytes",
                cursor={"frontier": self.frontier, "count": self.count},
            )

    def ensure_limit(self, limit: int):
        """Extend the sieve so every prime <= limit is present."""
        if limit <= self.frontier:
            return
        self._check_budget(limit)
        base = _simple_sieve(math.isqrt(limit) + 1)
        chunks = [self._primes] if self.count else [np.array([2], dtype=np.int64)]
        if self.count == 0 and limit < 2:
            raise EmptyRangeError("no primes below 2")
        low = self.frontier + 1
        if low <= 2:
            low = 3
        if low % 2 == 0:
            low += 1
        span = 2 * self.config.segment_odds
        while low <= limit:
            high = min(low + span, limit + 1)  # exclusive
            n_odds = (high - low + 1) // 2
            mask = np.ones(n_odds, dtype=bool)
            for p in base[1:]:
                p = int(p)
                if p * p >= high:
                    break
                start = max(p * p, ((low + p - 1) // p) * p)
                if start % 2 == 0:
                    start += p
                if start < high:
                    mask[(start - low) // 2 :: p] = False
            chunks.append(low + 2 * np.flatnonzero(mask).astype(np.int64))
            low = high
        self._primes = np.concatenate(chunks)
        self.frontier = limit
        self._twin_lowers = None

    def ensure_count(self, n: int):
        """Extend the frontier until at least n primes are available."""
        if n <= self.count:
            return
        target = max(_upper_bound_nth_prime(n), self.frontier + 1)
        while self.count < n:
            self.ensure_limit(target)
            target = int(target * 3 / 2) + 64

    # -- queries ------------------------------------------------------------

    def primes_up_to(self, limit: int) -> np.ndarray:
        """All primes in [2, limit], ascending."""
        if limit < 2:
            raise EmptyRangeError("primes_up_to requires limit >= 2")
        self.ensure_limit(limit)
        return self._primes[: int(np.searchsorted(self._primes, limit, "right"))]

    def nth_prime(self, n: int) -> int:
        """The n-th prime, 1-indexed."""
        if n < 1:
            raise DomainError("prime indices start at 1")
        self.ensure_count(n)
        return int(self._primes[n - 1])

    def iter_primes(self, start_index: int = 1, stop_index: int | None = None):
        """Yield p_n as python ints for n = start_index.. (1-indexed)."""
        n = start_index
        while stop_index is None or n <= stop_index:
            batch_end = n + 65536 - 1
            if stop_index is not None:
                batch_end = min(batch_end, stop_index)
            self.ensure_count(batch_end)
            yield from self._primes[n - 1 : batch_end].tolist()
            n = batch_end + 1

    def prime_slice(self, start_index: int, stop_index: int) -> list[int]:
        """Primes p_n for n in [start_index, stop_index] as python ints."""
        self.ensure_count(stop_index)
        return self._primes[start_index - 1 : stop_index].tolist()

    def prime_in_open_interval(self, lo: int, hi: int) -> int | None:
        """Some prime p with lo < p < hi, or None.

        Below the sieved frontier this is an array lookup; above it, an
        ascending scan certified by deterministic Miller-Rabin.
        """
        if lo >= hi:
            raise DomainError("prime_in_open_interval requires lo < hi")
        if hi - lo < 2:
            return None
        if hi <= self.frontier:
            i = int(np.searchsorted(self._primes, lo, "right"))
            if i < self.count and self._primes[i] < hi:
                return int(self._primes[i])
            return None
        c = max(lo + 1, 2)
        if c == 2:
            if hi > 2:
                return 2
            return None
        if c % 2 == 0:
            c += 1
        while c < hi:
            if is_prime(c):
                return c
            c += 2
        return None

    # -- twins ----------------------------------------------------------------

    def _twins(self) -> np.ndarray:
        if self._twin_lowers is None:
            gaps = np.diff(self._primes) == 2
            self._twin_lowers = self._primes[:-1][gaps]
        return self._twin_lowers

    def twin_lowers(self, count: int) -> np.ndarray:
        """Lower members of the first `count` twin pairs ((3,5) is pair 1)."""
        if count < 1:
            raise DomainError("twin pair indices start at 1")
        # pi_2(x) ~ 1.32 x / ln^2 x; start near the inverse and grow
        try:
            if self.frontier < 1000:
                self.ensure_limit(1000)
            while len(self._twins()) < count + 1:
                guess = self.frontier
                if len(self._twins()) > 0:
                    ln = math.log(guess)
                    guess = int(count * ln * ln / 1.32 * 1.05) + 1000
                self.ensure_limit(max(guess, int(self.frontier * 3 / 2)))
        except ResourceError as exc:
            found = len(self._twins()) if self.count else 0
            raise ResourceError(
                f"memory budget hit after {found} twin pairs "
                f"(frontier {self.frontier}); raise the budget and resume",
                cursor={
                    "pairs_found": found,
                    "last_lower": int(self._twins()[-1]) if found else None,
                    "frontier": self.frontier,
                },
            ) from exc
        return self._twins()[:count]

    def twin_pairs(self, count: int) -> list[TwinPair]:
        """The first `count` twin pairs ordered by lower member."""
        lowers = self.twin_lowers(count)
        return [TwinPair(i + 1, int(t)) for i, t in enumerate(lowers)]

    def twin_count_up_to(self, limit: int) -> int:
        """Number of twin pairs whose lower member is <= limit."""
        self.ensure_limit(limit + 2)
        t = self._twins()
        return int(np.searchsorted(t, limit, "right"))

    # -- binary cache ---------------------------------------------------------

    _CACHE_MAGIC = b"PSUMCACH"

    def save_cache(self, path: str):
        """Write primes as little-endian u64 deltas with a checksummed header."""
        deltas = np.diff(self._primes, prepend=np.int64(0)).astype("<u8")
        payload = deltas.tobytes()
        digest = hashlib.sha256(payload).digest()
        header = self._CACHE_MAGIC + struct.pack(
            "<IQQ", 1, self.count, self.frontier
        )
        with open(path, "wb") as fh:
            fh.write(header + digest + payload)

    @classmethod
    def load_cache(cls, path: str, config: SieveConfig | None = None) -> "PrimeStream":
        with open(path, "rb") as fh:
            blob = fh.read()
        if blob[:8] != cls._CACHE_MAGIC:
            raise DomainError("not a prime cache file")
        version, count, frontier = struct.unpack("<IQQ", blob[8:28])
        if version != 1:
            raise DomainError(f"unsupported cache version {version}")
        digest, payload = blob[28:60], blob[60:]
        if hashlib.sha256(payload).digest() != digest:
            raise DomainError("prime cache checksum mismatch")
        deltas = np.frombuffer(payload, dtype="<u8")
        if len(deltas) != count:
            raise DomainError("prime cache truncated")
        stream = cls(config)
        stream._primes = np.cumsum(deltas.astype(np.int64))
        stream.frontier = int(frontier)
        return stream


# ---------------------------------------------------------------------------
# module-level convenience API over a shared stream
# ---------------------------------------------------------------------------

_default_stream: PrimeStream | None = None


def default_stream() -> PrimeStream:
    global _default_stream
    if _default_stream is None:
        _default_stream = PrimeStream()
    return _default_stream


def reset_default_stream():
    global _default_stream
    _default_stream = None


def primes_up_to(limit: int) -> np.ndarray:
    return default_stream().primes_up_to(limit)


def nth_prime(n: int) -> int:
    return default_stream().nth_prime(n)


def twin_pairs(count: int) -> list[TwinPair]:
    return default_stream().twin_pairs(count)


def prime_in_open_interval(lo: int, hi: int) -> int | None:
    return default_stream().prime_in_open_interval(lo, hi)
