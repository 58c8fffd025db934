"""Certified verification of monotonicity statements about prime power sums,
twin primes, and integer partitions.

Every pass is a certificate: comparisons are decided either by exact
arbitrary-precision integer arithmetic or by directed-rounded interval
enclosures that exclude zero, with adaptive precision escalation in between.
"""

from .cmpcert import (
    LogCombination,
    PrecisionPolicy,
    Verdict,
    VerdictKind,
    compare_roots,
    exact_compare_powers,
    sign_log_combination,
)
from .intervals import Interval
from .primes import PrimeStream, SieveConfig, TwinPair, nth_prime, primes_up_to
from .powersums import PowerSumSeries, RealPowerSumEnclosure, real_power_sum
from .reports import CheckReport
from .scans import ScanSettings

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "Interval",
    "LogCombination",
    "PowerSumSeries",
    "PrecisionPolicy",
    "PrimeStream",
    "RealPowerSumEnclosure",
    "ScanSettings",
    "SieveConfig",
    "TwinPair",
    "Verdict",
    "VerdictKind",
    "compare_roots",
    "exact_compare_powers",
    "nth_prime",
    "primes_up_to",
    "real_power_sum",
    "sign_log_combination",
    "__version__",
]
