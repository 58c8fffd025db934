"""Command-line surface: one subcommand per verified statement.

Exit codes: 0 all certified, 2 violations found, 3 undecided indices only,
1 operational error, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import constants, partitions, theorems, twins
from .cmpcert import PrecisionPolicy
from .errors import (
    CheckpointError,
    DomainError,
    PrecisionCapError,
    ResourceError,
    UsageError,
)
from .primes import PrimeStream, SieveConfig
from .reports import CheckReport, load_checkpoint
from .scans import ScanSettings, run_scan

EXIT_OK = 0
EXIT_OPERATIONAL = 1
EXIT_VIOLATIONS = 2
EXIT_UNDECIDED = 3
EXIT_USAGE = 64

_SCAN_COMMANDS = {
    "eq21", "eq22", "ratio", "firoozbakht", "twins-root", "twins-ratio",
    "example11",
}


@dataclass
class JobSpec:
    """Validated CLI invocation."""

    command: str
    alpha: Fraction | int | None = None
    n_from: int = 1
    n_to: int = 1
    with_mean: bool = True
    series_id: str | None = None
    width: Fraction | None = None
    at: list[int] = field(default_factory=list)
    onset_scan: bool = False
    checkpoint_path: str | None = None
    output: str = "human"
    jobs: int = 1
    policy: PrecisionPolicy = field(default_factory=PrecisionPolicy)
    exact_work_bound: int = 10 ** 8
    prime_cache: str | None = None

    def validate(self):
        if self.n_from < 1 or self.n_to < self.n_from:
            raise UsageError(f"bad range [{self.n_from}, {self.n_to}]")
        if self.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        if self.checkpoint_path and self.command not in _SCAN_COMMANDS:
            raise UsageError(f"--checkpoint is not supported for {self.command}")

    def settings(self) -> ScanSettings:
        return ScanSettings(
            policy=self.policy,
            exact_work_bound_digits=self.exact_work_bound,
            jobs=self.jobs,
        )


def _parse_alpha(text: str) -> Fraction | int:
    a = Fraction(text)
    if a <= 0:
        raise UsageError("--alpha must be positive")
    return int(a) if a.denominator == 1 else a


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="verify",
        description="Certified verification of prime power-sum, twin-prime, "
                    "and partition monotonicity statements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, *, alpha=False, rng=False, mean=False, at=False):
        p = sub.add_parser(name, help=help_)
        if alpha:
            p.add_argument("--alpha", default="1",
                           help="exponent (integer or rational like 1/2)")
        if rng:
            p.add_argument("--from", dest="n_from", type=int, default=1)
            p.add_argument("--to", dest="n_to", type=int, required=True)
        if mean:
            g = p.add_mutually_exclusive_group()
            g.add_argument("--mean", dest="with_mean", action="store_true",
                           default=True, help="use S_n/n (default)")
            g.add_argument("--plain", dest="with_mean", action="store_false",
                           help="use S_n without the mean")
        if at:
            p.add_argument("--alpha", default="1")
            p.add_argument("--at", required=True,
                           help="comma-separated list of indices n")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--precision-start-bits", type=int, default=64)
        p.add_argument("--precision-cap-bits", type=int, default=4096)
        p.add_argument("--exact-work-bound", type=int, default=10 ** 8)
        p.add_argument("--checkpoint", dest="checkpoint_path")
        p.add_argument("--output", choices=("json", "csv", "human"),
                       default="human")
        p.add_argument("--onset-scan", action="store_true")
        p.add_argument("--prime-cache",
                       default=_default_cache_path(),
                       help="binary prime cache file (default from "
                            "PRIMESUMS_DATA_DIR)")
        return p

    add("eq21", "mean power-sum roots strictly decreasing", alpha=True, rng=True)
    add("eq22", "power-sum roots strictly decreasing", alpha=True, rng=True)
    add("ratio", "root ratios strictly increasing", alpha=True, rng=True, mean=True)
    add("firoozbakht", "prime roots strictly decreasing", rng=True)
    add("primorial", "primorial below next-prime power", rng=True)
    add("between-sums", "a prime between consecutive prime sums", rng=True)
    add("twins-root", "twin roots strictly decreasing", rng=True)
    add("twins-ratio", "twin-sum root ratios strictly increasing", rng=True)
    add("example11", "calibration on the n-th roots of n", rng=True)
    add("partitions-212", "partition mean-count statements", rng=True)
    add("partitions-213", "derived partition statements", rng=True)
    add("lemma31", "power sums dominate the integral bound", at=True)
    add("lemma32", "power sums exceed n^(alpha+1)", at=True)
    add("qbound", "next-prime power bound q_n < c_alpha/n", at=True)
    add("thresholds", "print the verified threshold tables")
    p = add("constants", "bracket the series constants s1/s2")
    p.add_argument("series_id", choices=("s1", "s2"))
    p.add_argument("--width", default="1e-6", help="target bracket width")
    p = sub.add_parser("resume", help="resume an interrupted range check")
    p.add_argument("checkpoint_path")
    p.add_argument("--output", choices=("json", "csv", "human"), default="human")
    return parser


def _default_cache_path() -> str | None:
    base = os.environ.get("PRIMESUMS_DATA_DIR")
    return os.path.join(base, "primes.bin") if base else None


def _spec_from_args(args) -> JobSpec:
    spec = JobSpec(command=args.command)
    for name in ("n_from", "n_to", "with_mean", "onset_scan",
                 "checkpoint_path", "output", "jobs", "series_id",
                 "prime_cache"):
        if hasattr(args, name):
            setattr(spec, name, getattr(args, name))
    if hasattr(args, "alpha"):
        spec.alpha = _parse_alpha(args.alpha)
    if hasattr(args, "width"):
        spec.width = Fraction(args.width)
        if spec.width <= 0:
            raise UsageError("--width must be positive")
    if hasattr(args, "at"):
        spec.at = [int(x) for x in args.at.split(",")]
        spec.n_from = spec.n_to = max(spec.at)
    if hasattr(args, "precision_start_bits"):
        spec.policy = PrecisionPolicy(args.precision_start_bits,
                                      args.precision_cap_bits)
        spec.exact_work_bound = args.exact_work_bound
    if spec.command in ("thresholds", "constants", "resume"):
        spec.n_from = spec.n_to = 1
    spec.validate()
    return spec


# ---------------------------------------------------------------------------
# execution
# ---------------------------------------------------------------------------

def _stream_for(spec: JobSpec) -> PrimeStream:
    path = spec.prime_cache
    if path and os.path.exists(path):
        return PrimeStream.load_cache(path)
    return PrimeStream()


def _maybe_save_cache(spec: JobSpec, stream: PrimeStream):
    path = spec.prime_cache
    if path and stream.count and (
        not os.path.exists(path)
        or PrimeStream.load_cache(path).frontier < stream.frontier
    ):
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        stream.save_cache(path)


def run(spec: JobSpec) -> tuple[int, list[CheckReport], list[str]]:
    """Execute a job; returns (exit code, reports, extra human lines)."""
    stream = _stream_for(spec)
    reports: list[CheckReport] = []
    lines: list[str] = []
    st = spec.settings()
    kw = dict(settings=st, stream=stream, onset_scan=spec.onset_scan,
              checkpoint_path=spec.checkpoint_path)

    if spec.command == "eq21":
        if isinstance(spec.alpha, int):
            reports.append(theorems.check_mean_root_decreasing(
                spec.alpha, spec.n_from, spec.n_to, **kw))
        else:
            reports.append(theorems.check_mean_root_decreasing_real(
                spec.alpha, spec.n_from, spec.n_to,
                policy=st.policy, stream=stream))
    elif spec.command == "eq22":
        reports.append(theorems.check_root_decreasing(
            int(spec.alpha), spec.n_from, spec.n_to, **kw))
    elif spec.command == "ratio":
        reports.append(theorems.check_ratio_increasing(
            int(spec.alpha), spec.with_mean, spec.n_from, spec.n_to, **kw))
    elif spec.command == "firoozbakht":
        reports.append(theorems.check_firoozbakht(spec.n_from, spec.n_to, **kw))
    elif spec.command == "primorial":
        reports.append(theorems.check_primorial_increasing(
            spec.n_from, spec.n_to, settings=st, stream=stream))
    elif spec.command == "between-sums":
        reports.append(theorems.check_prime_between_sums(
            spec.n_from, spec.n_to, stream=stream))
    elif spec.command == "twins-root":
        reports.append(twins.check_twin_root_decreasing(
            spec.n_from, spec.n_to, **kw))
    elif spec.command == "twins-ratio":
        reports.append(twins.check_twin_sum_ratio_increasing(
            max(spec.n_from, 9), spec.n_to, **kw))
    elif spec.command == "example11":
        reports.extend(theorems.check_example11(
            spec.n_from, spec.n_to, settings=st, onset_scan=spec.onset_scan))
    elif spec.command == "partitions-212":
        reports.extend(partitions.check_conjecture212(
            spec.n_to, settings=st, onset_scan=spec.onset_scan).values())
    elif spec.command == "partitions-213":
        reports.extend(partitions.check_remark213(
            spec.n_to, settings=st, onset_scan=spec.onset_scan).values())
    elif spec.command == "lemma31":
        for n in spec.at:
            holds = theorems.lemma31_holds(int(spec.alpha), n, stream=stream)
            bound = theorems.lemma31_bound(int(spec.alpha), n)
            lines.append(f"lemma31 alpha={spec.alpha} n={n}: bound {bound} "
                         f"{'holds' if holds else 'FAILS'}")
            reports.append(_point_report("LEMMA31", spec.alpha, n, holds))
    elif spec.command == "lemma32":
        for n in spec.at:
            holds = theorems.lemma32_holds(int(spec.alpha), n, stream=stream)
            lines.append(f"lemma32 alpha={spec.alpha} n={n}: "
                         f"{'holds' if holds else 'FAILS'}")
            reports.append(_point_report("LEMMA32", spec.alpha, n, holds))
    elif spec.command == "qbound":
        for n in spec.at:
            holds = theorems.q_bound_check(int(spec.alpha), n, stream=stream)
            lines.append(f"qbound alpha={spec.alpha} n={n}: "
                         f"{'holds' if holds else 'FAILS'}")
            reports.append(_point_report("Q_BOUND", spec.alpha, n, holds))
    elif spec.command == "thresholds":
        n_vals = [theorems.threshold_N(a) for a in (1, 2, 3, 4)]
        t_vals = [theorems.threshold_T23(a) for a in (1, 2, 3, 4)]
        lines.append("N(alpha),   alpha=1..4: " + ", ".join(map(str, n_vals)))
        lines.append("T23(alpha), alpha=1..4: " + ", ".join(map(str, t_vals)))
    elif spec.command == "constants":
        fn = constants.s1_bracket if spec.series_id == "s1" else constants.s2_bracket
        bracket = fn(spec.width, stream=stream)
        lines.append(json.dumps(bracket.to_dict(), sort_keys=True))
    else:
        raise UsageError(f"unknown command {spec.command}")

    _maybe_save_cache(spec, stream)
    code = EXIT_OK
    if any(r.violations for r in reports):
        code = EXIT_VIOLATIONS
    elif any(r.undecided for r in reports):
        code = EXIT_UNDECIDED
    return code, reports, lines


def _point_report(sid: str, alpha, n: int, holds: bool) -> CheckReport:
    rep = CheckReport(sid, int(alpha), n, n)
    if not holds:
        rep.violations.append({"n": n, "verdict": "LESS", "precision_bits": None})
    return rep


def resume(checkpoint_path: str) -> tuple[int, list[CheckReport], list[str]]:
    """Continue an interrupted scan from its checkpoint file."""
    payload = load_checkpoint(checkpoint_path)
    key = payload.get("job")
    if not key:
        raise CheckpointError("checkpoint carries no job description")
    desc = {"kind": key["kind"]}
    if key.get("kind_alpha") is not None:
        desc["alpha"] = key["kind_alpha"]
    alpha = key["alpha"]
    if alpha is not None:
        alpha = int(alpha) if Fraction(alpha).denominator == 1 else alpha
    report = run_scan(
        engine=key["engine"], desc=desc, mean=key["mean"],
        n_from=key["n_from"], n_to=key["n_to"],
        statement_id=key["statement_id"], alpha=alpha,
        settings=ScanSettings(
            scan_bits=key["scan_bits"], chunk=key["chunk"],
            policy=PrecisionPolicy(key["policy_start"], key["policy_cap"]),
        ),
        checkpoint_path=checkpoint_path,
    )
    code = EXIT_OK
    if report.violations:
        code = EXIT_VIOLATIONS
    elif report.undecided:
        code = EXIT_UNDECIDED
    return code, [report], []


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _emit(reports: list[CheckReport], lines: list[str], output: str):
    for line in lines:
        print(line)
    if output == "json":
        for r in reports:
            print(r.to_json())
    elif output == "csv":
        if reports:
            print(reports[0].to_csv(), end="")
            for r in reports[1:]:
                print("".join(r.to_csv().splitlines(True)[1:]), end="")
    else:
        all_desc = {**theorems.DESCRIPTIONS, **twins.DESCRIPTIONS,
                    **partitions.DESCRIPTIONS}
        for r in reports:
            desc = all_desc.get(r.statement_id, r.statement_id)
            status = ("PASS" if r.ok
                      else ("UNDECIDED" if not r.violations else "FAIL"))
            alpha = f" alpha={r.alpha}" if r.alpha is not None else ""
            print(f"{r.statement_id}{alpha} [{r.n_from}, {r.n_to}]: {status} "
                  f"({len(r.violations)} violations, {len(r.undecided)} "
                  f"undecided, {r.max_precision_bits} bits, "
                  f"{r.wall_time_s:.2f} s)")
            print(f"  {desc}")
            if r.measured_onset is not None:
                print(f"  measured onset: {r.measured_onset}")
            for v in r.violations[:20]:
                print(f"  violation at n={v['n']}: {v['verdict']}")
            if r.undecided:
                print(f"  undecided indices: {r.undecided[:20]}")
            if r.diagnostics and "final_ratio_hi" in r.diagnostics:
                print(f"  final ratio within [{r.diagnostics['final_ratio_lo']:.9f}, "
                      f"{r.diagnostics['final_ratio_hi']:.9f}]")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "resume":
            code, reports, lines = resume(args.checkpoint_path)
        else:
            spec = _spec_from_args(args)
            code, reports, lines = run(spec)
        _emit(reports, lines, args.output)
        return code
    except UsageError as exc:
        print(f"verify: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CheckpointError, ResourceError, PrecisionCapError, DomainError,
            OSError) as exc:
        print(f"verify: error: {exc}", file=sys.stderr)
        return EXIT_OPERATIONAL


if __name__ == "__main__":
    sys.exit(main())
