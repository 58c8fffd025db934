"""Sieve correctness against a trial-division oracle, twins, bounds, cache."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primesums.errors import DomainError, EmptyRangeError, ResourceError
from primesums.intervals import ln_int
from primesums.primes import PrimeStream, SieveConfig, is_prime


def _trial_division_primes(limit):
    out = []
    for n in range(2, limit + 1):
        for d in range(2, int(math.isqrt(n)) + 1):
            if n % d == 0:
                break
        else:
            out.append(n)
    return out


def test_examples(stream):
    assert stream.primes_up_to(10).tolist() == [2, 3, 5, 7]
    assert stream.primes_up_to(2).tolist() == [2]
    assert stream.nth_prime(1) == 2
    assert stream.nth_prime(4) == 7
    assert stream.nth_prime(25) == 97


def test_against_trial_division(stream):
    oracle = _trial_division_primes(10 ** 5)
    assert stream.primes_up_to(10 ** 5).tolist() == oracle


@given(st.integers(2, 3000))
@settings(max_examples=40)
def test_primes_up_to_prefix_property(stream, limit):
    got = stream.primes_up_to(limit)
    assert got[0] == 2
    assert all(is_prime(int(p)) for p in got[-5:])
    assert int(got[-1]) <= limit
    # no prime missed right above the last one
    for m in range(int(got[-1]) + 1, limit + 1):
        assert not is_prime(m)


def test_errors(stream):
    with pytest.raises(EmptyRangeError):
        stream.primes_up_to(1)
    with pytest.raises(DomainError):
        stream.nth_prime(0)
    with pytest.raises(DomainError):
        stream.prime_in_open_interval(5, 5)


def test_budget_error_mentions_remedy():
    tiny = PrimeStream(SieveConfig(memory_budget_bytes=10_000))
    with pytest.raises(ResourceError, match="segment_odds"):
        tiny.ensure_limit(10 ** 7)


def test_twin_examples(stream):
    pairs = stream.twin_pairs(3)
    assert [p.lower for p in pairs] == [3, 5, 11]
    assert [p.upper for p in pairs] == [5, 7, 13]
    assert stream.twin_pairs(1)[0].lower == 3


def test_twins_match_gap_filter(stream):
    primes = stream.primes_up_to(10 ** 4)
    expected = primes[:-1][np.diff(primes) == 2].tolist()
    got = stream.twin_lowers(len(expected)).tolist()
    assert got == expected


def test_twin_budget_error_has_cursor():
    tiny = PrimeStream(SieveConfig(segment_odds=1 << 12,
                                   memory_budget_bytes=40_000))
    with pytest.raises(ResourceError) as err:
        tiny.twin_pairs(10 ** 6)
    assert err.value.cursor is not None
    assert err.value.cursor["pairs_found"] > 0
    assert err.value.cursor["last_lower"] is not None


def test_prime_in_open_interval(stream):
    assert stream.prime_in_open_interval(2, 5) == 3
    assert stream.prime_in_open_interval(3, 5) is None
    assert stream.prime_in_open_interval(17, 28) in (19, 23)
    assert stream.prime_in_open_interval(1, 3) == 2
    # above the frontier: deterministic Miller-Rabin path
    assert stream.prime_in_open_interval(10 ** 12, 10 ** 12 + 100) == 10 ** 12 + 39
    assert stream.prime_in_open_interval(1082, 1086) is None  # gap around 1084


def test_is_prime_against_oracle():
    oracle = set(_trial_division_primes(3000))
    for n in range(3000):
        assert is_prime(n) == (n in oracle)


def test_growth_bound_invariants(stream):
    """p_n >= n ln n (n >= 2) and p_n < n(ln n + ln ln n) (n >= 6), asserted
    against the rounded-unfavourable side of the log enclosures so a pass
    certifies the inequality."""
    from primesums.intervals import ln_rat

    w = 96
    stream.ensure_count(20000)
    for n in range(2, 20001):
        p = stream.nth_prime(n)
        lo, hi = ln_int(n, w)
        assert (p << w) >= n * hi, n
        if n >= 6:
            lnln_lo = ln_rat(lo, 1 << w, w)[0]
            assert (p << w) < n * (lo + lnln_lo), n


def test_cache_roundtrip(tmp_path, stream):
    stream.ensure_limit(10 ** 5)
    path = tmp_path / "primes.bin"
    stream.save_cache(str(path))
    loaded = PrimeStream.load_cache(str(path))
    assert loaded.frontier == stream.frontier
    assert loaded.count == stream.count
    assert loaded.nth_prime(100) == stream.nth_prime(100)


def test_cache_rejects_corruption(tmp_path, stream):
    stream.ensure_limit(10 ** 4)
    path = tmp_path / "primes.bin"
    stream.save_cache(str(path))
    blob = bytearray(path.read_bytes())
    blob[-3] ^= 0xFF
    path.write_bytes(bytes(blob))
    with pytest.raises(DomainError, match="checksum"):
        PrimeStream.load_cache(str(path))
