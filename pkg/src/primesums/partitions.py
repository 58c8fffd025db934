"""Exact partition counts and their monotonicity statements.

p(n) counts unrestricted partitions (Euler's pentagonal recurrence);
p*(n) counts partitions into distinct parts (dynamic programming over the
generating product).  The statements come in two flavours:

* exact rational scans - q(n+1)/q(n) decreasing and p(n+1)/p(n) decreasing
  reduce to big-integer cross-multiplications (log-concavity form);
* kernel scans - root and root-ratio statements go through the shared
  certified engines with the tables supplied as value slices.

Statement ids: Q_RATIO_DEC, QSTAR_RATIO_DEC, R_RATIO_INC, RSTAR_RATIO_INC
(the four conjecture statements) and P_RATIO_DEC, PSTAR_RATIO_DEC,
P_ROOT_DEC, PSTAR_ROOT_DEC, P_ROOT_RATIO_INC, PSTAR_ROOT_RATIO_INC (the six
derived ones).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .intervals import (
    Interval,
    from_fraction,
    idiv,
    iexp,
    imul,
    iscale_frac,
    isqrt_iv,
    pi as pi_iv,
    sqrt_rat,
)
from .reports import CheckReport
from .scans import DEFAULT_SETTINGS, ScanSettings, run_scan


@dataclass
class PartitionTable:
    """Exact values indexed 0..n_max; kind is 'ordinary' or 'strict'."""

    kind: str
    values: list[int]

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def value(self, n: int) -> int:
        return self.values[n]


def _pentagonal_pairs(n_max: int) -> list[tuple[int, int, int]]:
    out = []
    j = 1
    while j * (3 * j - 1) // 2 <= n_max:
        out.append((j * (3 * j - 1) // 2, j * (3 * j + 1) // 2,
                    1 if j % 2 else -1))
        j += 1
    return out


def partition_table(n_max: int) -> PartitionTable:
    """Exact p(0..n_max) via the pentagonal-number recurrence."""
    if n_max < 0:
        raise DomainError("partition_table requires n_max >= 0")
    pent = _pentagonal_pairs(n_max)
    p = [0] * (n_max + 1)
    p[0] = 1
    for n in range(1, n_max + 1):
        acc = 0
        for g1, g2, s in pent:
            if g1 > n:
                break
            acc += s * p[n - g1] if g2 > n else s * (p[n - g1] + p[n - g2])
        p[n] = acc
    return PartitionTable("ordinary", p)


def strict_partition_table(n_max: int) -> PartitionTable:
    """Exact p*(0..n_max) by DP over the distinct-parts product (1+x^k)."""
    if n_max < 0:
        raise DomainError("strict_partition_table requires n_max >= 0")
    q = [0] * (n_max + 1)
    q[0] = 1
    for k in range(1, n_max + 1):
        q[k:] = [a + b for a, b in zip(q[k:], q)]
    return PartitionTable("strict", q)


def odd_parts_table(n_max: int) -> list[int]:
    """Partitions into odd parts (independent route for Euler's identity)."""
    q = [0] * (n_max + 1)
    q[0] = 1
    for k in range(1, n_max + 1, 2):
        for j in range(k, n_max + 1):
            q[j] += q[j - k]
    return q


# ---------------------------------------------------------------------------
# exact rational ratio scans (no kernel needed)
# ---------------------------------------------------------------------------

def _exact_ratio_scan(values: list[int], statement_id: str, n_from: int,
                      n_to: int, over_n: bool, decreasing: bool) -> CheckReport:
    """Check x(n+1)/x(n) strictly monotone for x(n) = values[n] (/n if over_n).

    Strictly decreasing ratios mean x(n+1)^2 > x(n) x(n+2) (log-concavity);
    with the /n weights the cross-multiplied exact form is
    p(n+1)^2 n (n+2) vs p(n) p(n+2) (n+1)^2.
    """
    t0 = time.perf_counter()
    report = CheckReport(statement_id, None, n_from, n_to)
    for n in range(n_from, n_to + 1):
        a, b, c = values[n], values[n + 1], values[n + 2]
        if over_n:
            lhs = b * b * n * (n + 2)
            rhs = a * c * (n + 1) * (n + 1)
        else:
            lhs = b * b
            rhs = a * c
        ok = lhs > rhs if decreasing else lhs < rhs
        if not ok:
            verdict = "EQUAL" if lhs == rhs else ("LESS" if decreasing else "GREATER")
            report.violations.append(
                {"n": n, "verdict": verdict, "precision_bits": None})
    report.wall_time_s = time.perf_counter() - t0
    return report


def _measure_exact_onset(values, over_n, decreasing, onset: int, n_to: int):
    fails = []
    for n in range(1, onset):
        a, b, c = values[n], values[n + 1], values[n + 2]
        lhs = b * b * (n * (n + 2) if over_n else 1)
        rhs = a * c * ((n + 1) ** 2 if over_n else 1)
        ok = lhs > rhs if decreasing else lhs < rhs
        if not ok:
            fails.append(n)
    return (max(fails) + 1 if fails else 1), fails


def _table_scan(values: list[int], statement_id: str, engine: str, mean: bool,
                n_from: int, n_to: int, settings: ScanSettings,
                onset_scan: bool) -> CheckReport:
    desc = {"kind": "table", "offset": 0, "values": values}
    return run_scan(
        engine=engine, desc=desc, mean=mean, n_from=n_from, n_to=n_to,
        statement_id=statement_id, settings=settings, onset_scan=onset_scan,
    )


# ---------------------------------------------------------------------------
# the two statement bundles
# ---------------------------------------------------------------------------

CONJ_ONSETS = {"Q_RATIO_DEC": 31, "QSTAR_RATIO_DEC": 44,
               "R_RATIO_INC": 60, "RSTAR_RATIO_INC": 120}

DERIVED_ONSETS = {"P_RATIO_DEC": 25, "PSTAR_RATIO_DEC": 32,
                  "P_ROOT_DEC": 6, "PSTAR_ROOT_DEC": 9,
                  "P_ROOT_RATIO_INC": 26, "PSTAR_ROOT_RATIO_INC": 45}

DESCRIPTIONS = {
    "Q_RATIO_DEC": "ratio of consecutive partition means is strictly decreasing",
    "QSTAR_RATIO_DEC": "ratio of consecutive strict-partition means is strictly decreasing",
    "R_RATIO_INC": "ratio of consecutive partition-mean roots is strictly increasing",
    "RSTAR_RATIO_INC": "ratio of consecutive strict-partition-mean roots is strictly increasing",
    "P_RATIO_DEC": "ratio of consecutive partition counts is strictly decreasing",
    "PSTAR_RATIO_DEC": "ratio of consecutive strict-partition counts is strictly decreasing",
    "P_ROOT_DEC": "n-th root of the partition count is strictly decreasing",
    "PSTAR_ROOT_DEC": "n-th root of the strict-partition count is strictly decreasing",
    "P_ROOT_RATIO_INC": "ratio of consecutive partition-count roots is strictly increasing",
    "PSTAR_ROOT_RATIO_INC": "ratio of consecutive strict-partition-count roots is strictly increasing",
}


def check_conjecture212(n_max: int, *,
                        tables: tuple[PartitionTable, PartitionTable] | None = None,
                        settings: ScanSettings = DEFAULT_SETTINGS,
                        onset_scan: bool = False) -> dict[str, CheckReport]:
    """The four statements on q(n) = p(n)/n and q*(n) = p*(n)/n:
    q-ratios strictly decreasing (from 31 resp. 44), root-ratios strictly
    increasing (from 60 resp. 120)."""
    ordinary, strict = tables or (partition_table(n_max + 2),
                                  strict_partition_table(n_max + 2))
    out: dict[str, CheckReport] = {}
    for sid, vals in (("Q_RATIO_DEC", ordinary.values),
                      ("QSTAR_RATIO_DEC", strict.values)):
        onset = CONJ_ONSETS[sid]
        rep = _exact_ratio_scan(vals, sid, onset, n_max, over_n=True,
                                decreasing=True)
        if onset_scan:
            rep.measured_onset, fails = _measure_exact_onset(
                vals, True, True, onset, n_max)
            rep.diagnostics = {"onset_scan_from": 1, "onset_failures": fails}
        out[sid] = rep
    for sid, vals in (("R_RATIO_INC", ordinary.values),
                      ("RSTAR_RATIO_INC", strict.values)):
        out[sid] = _table_scan(vals, sid, "three", True,
                               CONJ_ONSETS[sid], n_max, settings, onset_scan)
    return out


def check_remark213(n_max: int, *,
                    tables: tuple[PartitionTable, PartitionTable] | None = None,
                    settings: ScanSettings = DEFAULT_SETTINGS,
                    onset_scan: bool = False) -> dict[str, CheckReport]:
    """The six derived statements: plain ratios decreasing, roots decreasing,
    root-ratios increasing, for both partition kinds."""
    ordinary, strict = tables or (partition_table(n_max + 2),
                                  strict_partition_table(n_max + 2))
    out: dict[str, CheckReport] = {}
    for sid, vals in (("P_RATIO_DEC", ordinary.values),
                      ("PSTAR_RATIO_DEC", strict.values)):
        onset = DERIVED_ONSETS[sid]
        rep = _exact_ratio_scan(vals, sid, onset, n_max, over_n=False,
                                decreasing=True)
        if onset_scan:
            rep.measured_onset, fails = _measure_exact_onset(
                vals, False, True, onset, n_max)
            rep.diagnostics = {"onset_scan_from": 1, "onset_failures": fails}
        out[sid] = rep
    for sid, vals, engine, mean in (
        ("P_ROOT_DEC", ordinary.values, "pair", False),
        ("PSTAR_ROOT_DEC", strict.values, "pair", False),
        ("P_ROOT_RATIO_INC", ordinary.values, "three", False),
        ("PSTAR_ROOT_RATIO_INC", strict.values, "three", False),
    ):
        out[sid] = _table_scan(vals, sid, engine, mean,
                               DERIVED_ONSETS[sid], n_max, settings, onset_scan)
    return out


# ---------------------------------------------------------------------------
# growth-rate diagnostic
# ---------------------------------------------------------------------------

def hr_asymptotic_ratio(n: int, *, kind: str = "ordinary",
                        table: PartitionTable | None = None,
                        w: int = 128) -> Interval:
    """Certified enclosure of p(n) (resp. p*(n)) over its main-term growth
    approximation:

        ordinary: exp(pi sqrt(2n/3)) / (4 sqrt(3) n)
        strict:   exp(pi sqrt(n/3)) / (4 (3 n^3)^(1/4))

    The ratio drifts toward 1; a diagnostic only, nothing certified about
    the limit."""
    if n < 1:
        raise DomainError("hr_asymptotic_ratio requires n >= 1")
    if table is None:
        table = (partition_table(n) if kind == "ordinary"
                 else strict_partition_table(n))
    value = table.value(n)
    pi_ = pi_iv(w)
    if kind == "ordinary":
        root = sqrt_rat(2 * n, 3, w)
        denom = imul(iscale_frac(sqrt_rat(3, 1, w), 4 * n), from_fraction(1, w), w)
    elif kind == "strict":
        root = sqrt_rat(n, 3, w)
        denom = iscale_frac(isqrt_iv(isqrt_iv(from_fraction(3 * n ** 3, w), w), w), 4)
    else:
        raise DomainError("kind must be 'ordinary' or 'strict'")
    main = idiv(iexp(imul(pi_, root, w), w), denom, w)
    ratio = idiv(from_fraction(value, w), main, w)
    return Interval.from_fixed(ratio, w)
