"""Partition tables against enumeration oracles, identities, and the bundles."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primesums.errors import DomainError
from primesums import partitions as pt


def _enum_partitions(n):
    def rec(remaining, max_part):
        if remaining == 0:
            return 1
        return sum(rec(remaining - k, k)
                   for k in range(min(remaining, max_part), 0, -1))

    return rec(n, n)


def _enum_strict(n):
    def rec(remaining, max_part):
        if remaining == 0:
            return 1
        return sum(rec(remaining - k, k - 1)
                   for k in range(min(remaining, max_part), 0, -1))

    return rec(n, n)


def test_tables_against_enumeration():
    table = pt.partition_table(40)
    strict = pt.strict_partition_table(40)
    for n in range(41):
        assert table.value(n) == _enum_partitions(n), n
        assert strict.value(n) == _enum_strict(n), n


def test_known_values():
    table = pt.partition_table(10)
    strict = pt.strict_partition_table(10)
    assert table.value(0) == strict.value(0) == 1
    assert table.value(4) == 5
    assert table.value(10) == 42
    assert strict.value(4) == 2          # 4 and 3+1
    assert strict.value(10) == 10


def test_invariants(tables_2k):
    ordinary, strict = tables_2k
    for n in range(1, 2001):
        assert ordinary.value(n) >= strict.value(n) >= 1
        assert ordinary.value(n + 1) >= ordinary.value(n)


def test_euler_distinct_equals_odd(tables_2k):
    _, strict = tables_2k
    odd = pt.odd_parts_table(2000)
    assert all(odd[n] == strict.value(n) for n in range(2001))


def test_pentagonal_cold_restart_consistency(tables_2k):
    ordinary, _ = tables_2k
    cold = pt.partition_table(1234)
    assert cold.value(1234) == ordinary.value(1234)


@given(st.integers(0, 28))
@settings(max_examples=29, deadline=None)
def test_tables_property(n):
    assert pt.partition_table(n).value(n) == _enum_partitions(n)


def test_conjecture_statements(tables_2k):
    reports = pt.check_conjecture212(2000, tables=tables_2k, onset_scan=True)
    assert set(reports) == {"Q_RATIO_DEC", "QSTAR_RATIO_DEC",
                            "R_RATIO_INC", "RSTAR_RATIO_INC"}
    for sid, rep in reports.items():
        assert rep.ok, (sid, rep.violations[:3])
        assert rep.measured_onset == pt.CONJ_ONSETS[sid], sid


def test_derived_statements(tables_2k):
    reports = pt.check_remark213(2000, tables=tables_2k, onset_scan=True)
    assert len(reports) == 6
    for sid, rep in reports.items():
        assert rep.ok, (sid, rep.violations[:3])
        assert rep.measured_onset == pt.DERIVED_ONSETS[sid], sid


def test_implication_chain(tables_2k):
    # if the four mean statements certify, the six derived ones must too
    conj = pt.check_conjecture212(1500, tables=tables_2k)
    derived = pt.check_remark213(1500, tables=tables_2k)
    assert all(r.ok for r in conj.values())
    assert all(r.ok for r in derived.values())


def test_root_example_exact():
    # p(6) = 11, p(7) = 15: 11^7 = 19487171 > 15^6 = 11390625
    table = pt.partition_table(7)
    assert table.value(6) == 11 and table.value(7) == 15
    assert 11 ** 7 > 15 ** 6


def test_onset_probes(tables_2k):
    ordinary, strict = tables_2k
    # q-ratio fails just below its onset
    rep = pt.check_conjecture212(100, tables=tables_2k, onset_scan=True)
    assert 30 in rep["Q_RATIO_DEC"].diagnostics["onset_failures"]
    # strict-root fails at n = 8 (onset 9)
    rep213 = pt.check_remark213(100, tables=tables_2k, onset_scan=True)
    assert 8 in rep213["PSTAR_ROOT_DEC"].diagnostics["onset_failures"]


def test_hr_ratio(tables_2k):
    import mpmath

    mpmath.mp.prec = 150
    ordinary, strict = tables_2k
    r1 = pt.hr_asymptotic_ratio(1, table=ordinary)
    # oracle: p(1) * 4 sqrt(3) / exp(pi sqrt(2/3))
    oracle = 4 * mpmath.sqrt(3) / mpmath.exp(mpmath.pi * mpmath.sqrt(F(2, 3)))
    assert abs(float(r1.lo) - float(oracle)) < 1e-9
    r100 = pt.hr_asymptotic_ratio(100, table=ordinary)
    r2000 = pt.hr_asymptotic_ratio(2000, table=ordinary)
    assert abs(float(r2000.lo) - 1) < abs(float(r100.lo) - 1)
    rs = pt.hr_asymptotic_ratio(1000, kind="strict", table=strict)
    assert F(1, 2) < rs.lo and rs.hi < F(3, 2)


def test_domain_errors():
    with pytest.raises(DomainError):
        pt.partition_table(-1)
    with pytest.raises(DomainError):
        pt.hr_asymptotic_ratio(0)
