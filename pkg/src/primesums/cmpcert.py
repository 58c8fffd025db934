"""Certified sign determination for rational combinations of logarithms.

The central object is a combination sum(c_i * ln(v_i)) with exact rational
coefficients c_i and exact positive rational values v_i.  Deciding its sign
decides every root and ratio inequality handled by this package:
A^(1/n) > B^(1/m) iff (1/n) ln A - (1/m) ln B > 0.

Verdicts are certificates.  Less/Greater are only returned when a
directed-rounded enclosure lies strictly on one side of zero (or when exact
integer arithmetic settles the question); Equal is only returned from a
symbolic cancellation proof, never from finite-precision agreement.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, ExactWorkBoundError
from .intervals import iscale_frac, ln_rat

DEFAULT_EXACT_WORK_BOUND_DIGITS = 10 ** 8


class VerdictKind(enum.Enum):
    LESS = "LESS"
    GREATER = "GREATER"
    EQUAL = "EQUAL"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a certified comparison.

    ``precision_bits`` records the working precision that settled the
    comparison (None for exact integer decisions); for UNDECIDED it is the
    cap at which evaluation stopped.
    """

    kind: VerdictKind
    precision_bits: int | None = None

    @property
    def decided(self) -> bool:
        return self.kind is not VerdictKind.UNDECIDED

    def flipped(self) -> "Verdict":
        if self.kind is VerdictKind.LESS:
            return Verdict(VerdictKind.GREATER, self.precision_bits)
        if self.kind is VerdictKind.GREATER:
            return Verdict(VerdictKind.LESS, self.precision_bits)
        return self

    def __str__(self) -> str:
        return self.kind.value


LESS = VerdictKind.LESS
GREATER = VerdictKind.GREATER
EQUAL = VerdictKind.EQUAL
UNDECIDED = VerdictKind.UNDECIDED


@dataclass(frozen=True)
class PrecisionPolicy:
    """Escalation ladder for adaptive-precision evaluation."""

    start_bits: int = 64
    cap_bits: int = 4096
    growth: int = 2

    def __post_init__(self):
        if self.start_bits < 8 or self.cap_bits < self.start_bits or self.growth < 2:
            raise DomainError("invalid precision policy")

    def ladder(self):
        w = self.start_bits
        while w < self.cap_bits:
            yield w
            w *= self.growth
        yield self.cap_bits


DEFAULT_POLICY = PrecisionPolicy()


@dataclass
class LogCombination:
    """sum(coeff * ln(value)) with exact rational coefficients and values."""

    terms: list[tuple[Fraction, Fraction]] = field(default_factory=list)

    def __post_init__(self):
        checked = []
        for coeff, value in self.terms:
            coeff, value = Fraction(coeff), Fraction(value)
            if value <= 0:
                raise DomainError("LogCombination values must be positive")
            checked.append((coeff, value))
        self.terms = checked

    def collected(self) -> dict[Fraction, Fraction]:
        """Merge equal values, drop ln(1) and zero coefficients."""
        acc: dict[Fraction, Fraction] = {}
        for coeff, value in self.terms:
            if value == 1:
                continue
            acc[value] = acc.get(value, Fraction(0)) + coeff
        return {v: c for v, c in acc.items() if c != 0}


# ---------------------------------------------------------------------------
# symbolic equality check
# ---------------------------------------------------------------------------

def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, int(limit ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * len(sieve[p * p :: p])
    return [i for i, b in enumerate(sieve) if b]


_FACTOR_PRIMES = _small_primes(10_000)


def _perfect_power(n: int) -> tuple[int, int]:
    """Largest e with n = r^e (n >= 2); returns (r, e)."""
    for e in range(min(n.bit_length(), 64), 1, -1):
        r = round(n ** (1.0 / e)) if n.bit_length() < 900 else 0
        for cand in (r - 1, r, r + 1):
            if cand >= 2 and cand ** e == n:
                return cand, e
    return n, 1


def _factor_with_budget(n: int) -> tuple[dict[int, int], int]:
    """Trial-divide by small primes; returns (exponents, leftover cofactor)."""
    fac: dict[int, int] = {}
    for p in _FACTOR_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            fac[p] = fac.get(p, 0) + 1
            n //= p
    if 1 < n <= _FACTOR_PRIMES[-1] ** 2:
        fac[n] = fac.get(n, 0) + 1
        n = 1
    return fac, n


def _symbolic_zero(collected: dict[Fraction, Fraction]) -> bool:
    """True iff the combination provably cancels to 0.

    Each value is written over a basis of small primes plus opaque cofactor
    atoms (cofactors reduced by perfect-power extraction).  If the resulting
    exponent vector is zero the combination is exactly zero by unique
    factorization.  Atoms are only trusted for cancellation when the vector
    is identically zero, which never asserts independence of the atoms.
    """
    vec: dict[tuple[str, int], Fraction] = {}
    for value, coeff in collected.items():
        for n, sgn in ((value.numerator, 1), (value.denominator, -1)):
            if n == 1:
                continue
            fac, rest = _factor_with_budget(n)
            for p, e in fac.items():
                key = ("p", p)
                vec[key] = vec.get(key, Fraction(0)) + sgn * e * coeff
            if rest > 1:
                root, e = _perfect_power(rest)
                key = ("a", root)
                vec[key] = vec.get(key, Fraction(0)) + sgn * e * coeff
    return all(c == 0 for c in vec.values())


# ---------------------------------------------------------------------------
# adaptive sign evaluation
# ---------------------------------------------------------------------------

def sign_log_combination(
    c: LogCombination, policy: PrecisionPolicy = DEFAULT_POLICY
) -> Verdict:
    """Certified three-way sign of sum(coeff * ln(value)).

    Escalates working precision along the policy ladder until the enclosure
    excludes zero.  Equality is decided symbolically before any numeric
    work; if the symbolic check fails and enclosures keep straddling zero
    at the cap, the result is UNDECIDED (carrying the cap), never a guess.
    """
    collected = c.collected()
    if not collected:
        return Verdict(VerdictKind.EQUAL)
    if _symbolic_zero(collected):
        return Verdict(VerdictKind.EQUAL)
    for w in policy.ladder():
        lo = hi = 0
        for value, coeff in collected.items():
            pair = iscale_frac(ln_rat(value.numerator, value.denominator, w), coeff)
            lo += pair[0]
            hi += pair[1]
        if lo > 0:
            return Verdict(VerdictKind.GREATER, w)
        if hi < 0:
            return Verdict(VerdictKind.LESS, w)
    return Verdict(VerdictKind.UNDECIDED, policy.cap_bits)


def compare_roots(
    A: Fraction | int,
    n: int,
    B: Fraction | int,
    m: int,
    policy: PrecisionPolicy = DEFAULT_POLICY,
) -> Verdict:
    """Certified comparison A^(1/n) vs B^(1/m) for positive rationals."""
    A, B = Fraction(A), Fraction(B)
    if A <= 0 or B <= 0 or n < 1 or m < 1:
        raise DomainError("compare_roots requires positive bases and exponents")
    return sign_log_combination(
        LogCombination([(Fraction(1, n), A), (Fraction(-1, m), B)]), policy
    )


def exact_compare_powers(
    A: Fraction | int,
    expA: int,
    B: Fraction | int,
    expB: int,
    work_bound_digits: int = DEFAULT_EXACT_WORK_BOUND_DIGITS,
) -> Verdict:
    """Compare A^expA vs B^expB by exact big-integer cross multiplication.

    Never returns UNDECIDED.  Raises ExactWorkBoundError when the result
    integers would exceed the work bound (callers fall back to the adaptive
    path).
    """
    A, B = Fraction(A), Fraction(B)
    if A <= 0 or B <= 0 or expA < 0 or expB < 0:
        raise DomainError("exact_compare_powers requires positive bases")
    bits = (
        expA * (A.numerator.bit_length() + A.denominator.bit_length())
        + expB * (B.numerator.bit_length() + B.denominator.bit_length())
    )
    if bits * 0.302 > work_bound_digits:
        raise ExactWorkBoundError(
            f"exact comparison needs ~{int(bits * 0.302)} digits "
            f"(bound {work_bound_digits})"
        )
    lhs = A.numerator ** expA * B.denominator ** expB
    rhs = B.numerator ** expB * A.denominator ** expA
    if lhs < rhs:
        return Verdict(VerdictKind.LESS)
    if lhs > rhs:
        return Verdict(VerdictKind.GREATER)
    return Verdict(VerdictKind.EQUAL)
