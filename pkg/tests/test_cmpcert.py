"""The comparison kernel: certificates, symbolic equality, oracle agreement."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primesums.cmpcert import (
    LogCombination,
    PrecisionPolicy,
    VerdictKind,
    compare_roots,
    exact_compare_powers,
    sign_log_combination,
)
from primesums.errors import DomainError, ExactWorkBoundError

positive_fractions = st.fractions(min_value=F(1, 1000), max_value=F(1000))
small_exponents = st.integers(1, 30)


def test_basic_signs():
    assert sign_log_combination(
        LogCombination([(F(1), F(2)), (F(-1), F(3))])
    ).kind is VerdictKind.LESS
    assert sign_log_combination(
        LogCombination([(F(1), F(2)), (F(-1), F(2))])
    ).kind is VerdictKind.EQUAL
    assert sign_log_combination(
        LogCombination([(F(1, 2), F(5, 2)), (F(-1, 3), F(10, 3))])
    ).kind is VerdictKind.GREATER


def test_symbolic_equalities():
    # multiplicative relations must be found symbolically, not numerically
    assert sign_log_combination(
        LogCombination([(F(2), F(2)), (F(-1), F(4))])
    ).kind is VerdictKind.EQUAL
    assert sign_log_combination(
        LogCombination([(F(1), F(6)), (F(-1), F(2)), (F(-1), F(3))])
    ).kind is VerdictKind.EQUAL
    assert sign_log_combination(
        LogCombination([(F(1, 2), F(9, 4)), (F(-1), F(3, 2))])
    ).kind is VerdictKind.EQUAL
    assert sign_log_combination(LogCombination([])).kind is VerdictKind.EQUAL
    assert sign_log_combination(
        LogCombination([(F(5), F(1))])
    ).kind is VerdictKind.EQUAL


def test_rejects_nonpositive_values():
    with pytest.raises(DomainError):
        LogCombination([(F(1), F(-2))])
    with pytest.raises(DomainError):
        compare_roots(F(-1), 2, F(2), 3)


def test_compare_roots_examples():
    assert compare_roots(F(5, 2), 2, F(10, 3), 3).kind is VerdictKind.GREATER
    assert compare_roots(2, 1, 2, 1).kind is VerdictKind.EQUAL
    assert compare_roots(7, 4, 11, 5).kind is VerdictKind.GREATER
    # 2^(1/2) vs 3^(1/3): 2^3 = 8 < 3^2 = 9
    assert compare_roots(2, 2, 3, 3).kind is VerdictKind.LESS


def test_exact_compare_powers_examples():
    assert exact_compare_powers(F(5, 2), 3, F(10, 3), 2).kind is VerdictKind.GREATER
    assert exact_compare_powers(4, 1, 2, 2).kind is VerdictKind.EQUAL
    with pytest.raises(ExactWorkBoundError):
        exact_compare_powers(F(10 ** 30 + 1), 10 ** 7, 3, 2)


@given(positive_fractions, small_exponents, positive_fractions, small_exponents)
@settings(max_examples=150)
def test_adaptive_agrees_with_exact_oracle(a, n, b, m):
    adaptive = compare_roots(a, n, b, m)
    exact = exact_compare_powers(a, m, b, n)
    if adaptive.kind is VerdictKind.UNDECIDED:
        # only permissible when the two sides are genuinely equal
        assert exact.kind is VerdictKind.EQUAL
    else:
        assert adaptive.kind is exact.kind


@given(positive_fractions, small_exponents, positive_fractions, small_exponents)
@settings(max_examples=80)
def test_negation_symmetry(a, n, b, m):
    v = compare_roots(a, n, b, m)
    w = compare_roots(b, m, a, n)
    assert v.flipped().kind is w.kind


@given(
    positive_fractions, positive_fractions,
    st.fractions(min_value=F(1, 7), max_value=F(7)),
)
@settings(max_examples=80)
def test_scaling_coherence(a, b, scale):
    base = LogCombination([(F(1, 3), a), (F(-1, 5), b)])
    scaled = LogCombination([(F(1, 3) * scale, a), (F(-1, 5) * scale, b)])
    assert sign_log_combination(base).kind is sign_log_combination(scaled).kind


def test_soundness_under_escalation():
    # a verdict reached at low precision persists at every higher precision
    comb = LogCombination([(F(1, 10), F(24133, 10)), (F(-1, 11), F(28434, 11))])
    kinds = {
        sign_log_combination(comb, PrecisionPolicy(start, 1 << 14)).kind
        for start in (16, 64, 256, 1024)
    }
    assert len(kinds) == 1


def test_tight_comparison_escalates_not_lies():
    # ln(v) vs ln(v') with v' = v * (1 + 2^-200): needs > 200 bits to split
    v = F(3)
    vp = v * (F(2 ** 200 + 1, 2 ** 200))
    comb = LogCombination([(F(1), vp), (F(-1), v)])
    assert sign_log_combination(
        comb, PrecisionPolicy(64, 128)
    ).kind is VerdictKind.UNDECIDED
    assert sign_log_combination(
        comb, PrecisionPolicy(64, 512)
    ).kind is VerdictKind.GREATER


def test_undecided_carries_cap():
    v = sign_log_combination(
        LogCombination([(F(1), F(2 ** 100 + 1, 2 ** 100)), (F(-1), F(1))]),
        PrecisionPolicy(16, 32),
    )
    assert v.kind is VerdictKind.UNDECIDED
    assert v.precision_bits == 32


def test_equal_only_from_symbolic_proof():
    # numerically indistinguishable at cap but NOT equal: must be UNDECIDED
    v = sign_log_combination(
        LogCombination([(F(1), F(2 ** 300 + 1, 2 ** 300)), (F(-1), F(1))]),
        PrecisionPolicy(16, 64),
    )
    assert v.kind is VerdictKind.UNDECIDED
