"""Twin-prime monotonicity checks: root decrease of t_n and ratio increase
of the partial-sum roots T_n^(1/n).

Statement ids: TWIN_ROOT, TWIN_SUM_RATIO.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .intervals import Interval, iscale_frac, isub, ln_int
from .primes import PrimeStream, default_stream
from .reports import CheckReport
from .scans import DEFAULT_SETTINGS, ScanSettings, run_scan

DESCRIPTIONS = {
    "TWIN_ROOT": "n-th root of the n-th twin prime is strictly decreasing",
    "TWIN_SUM_RATIO": "ratio of consecutive twin-sum roots is strictly increasing",
}


@dataclass
class TwinSumSeries:
    """Append-only exact partial sums T_n of the lower twin members."""

    values: list[int] = field(default_factory=list)

    @property
    def n_max(self) -> int:
        return len(self.values)

    def value(self, n: int) -> int:
        return self.values[n - 1]

    def extend(self, n_target: int, stream: PrimeStream | None = None) -> "TwinSumSeries":
        if n_target <= self.n_max:
            return self
        stream = stream or default_stream()
        lowers = stream.twin_lowers(n_target)
        t = self.values[-1] if self.values else 0
        for lower in lowers[self.n_max : n_target].tolist():
            t += lower
            self.values.append(t)
        return self


def check_twin_root_decreasing(n_from: int, n_to: int, *,
                               settings: ScanSettings = DEFAULT_SETTINGS,
                               stream: PrimeStream | None = None,
                               onset_scan: bool = False,
                               checkpoint_path: str | None = None) -> CheckReport:
    """Certify t_n^(1/n) > t_(n+1)^(1/(n+1)) per index."""
    return run_scan(
        engine="pair", desc={"kind": "twin_lower"}, mean=False,
        n_from=n_from, n_to=n_to, statement_id="TWIN_ROOT",
        settings=settings, stream=stream, onset_scan=onset_scan,
        checkpoint_path=checkpoint_path,
    )


def check_twin_sum_ratio_increasing(n_from: int, n_to: int, *,
                                    settings: ScanSettings = DEFAULT_SETTINGS,
                                    stream: PrimeStream | None = None,
                                    onset_scan: bool = False,
                                    checkpoint_path: str | None = None) -> CheckReport:
    """Certify T roots' ratio increase; also report how far the final ratio
    sits from 1 (the limit clause is an asymptotic and is never certified)."""
    stream = stream or default_stream()
    report = run_scan(
        engine="three", desc={"kind": "twin_sum"}, mean=False,
        n_from=n_from, n_to=n_to, statement_id="TWIN_SUM_RATIO",
        settings=settings, stream=stream, onset_scan=onset_scan,
        checkpoint_path=checkpoint_path,
    )
    ratio = _final_ratio_enclosure(n_to, stream)
    diag = dict(report.diagnostics or {})
    diag.update({
        "final_ratio_lo": float(ratio.lo),
        "final_ratio_hi": float(ratio.hi),
        "distance_from_one_hi": float(max(abs(ratio.lo - 1), abs(ratio.hi - 1))),
    })
    report.diagnostics = diag
    return report


def _final_ratio_enclosure(n: int, stream: PrimeStream, w: int = 128) -> Interval:
    """Enclosure of T_(n+1)^(1/(n+1)) / T_n^(1/n) at the end of the range."""
    from fractions import Fraction

    from .intervals import iexp

    lowers = stream.twin_lowers(n + 1)
    t_n = int(lowers[:n].sum())
    t_n1 = t_n + int(lowers[n])
    diff = isub(
        iscale_frac(ln_int(t_n1, w), Fraction(1, n + 1)),
        iscale_frac(ln_int(t_n, w), Fraction(1, n)),
    )
    return Interval.from_fixed(iexp(diff, w), w)


def twin_count_matches(limit: int, expected: int,
                       stream: PrimeStream | None = None) -> bool:
    """Cross-check: number of twin pairs with lower member <= limit."""
    stream = stream or default_stream()
    return stream.twin_count_up_to(limit) == expected
