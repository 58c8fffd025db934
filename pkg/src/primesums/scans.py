"""Certified range-scan engines shared by the statement checkers.

Two engines cover every root/ratio statement in the package:

* pair scan - certifies x_n^(1/n) > x_(n+1)^(1/(n+1)) per index
  (root sequences strictly decreasing);
* three-term scan - certifies x_(n+1)/x_n < x_(n+2)/x_(n+1) per index
  (ratio sequences strictly increasing, i.e. log-convexity of x).

Here x_n = V_n/n (mean form) or V_n for an exact integer sequence V.  The
engines keep fixed-point enclosures of ln V_n that are advanced
incrementally (one short atanh series per step, since consecutive ratios
are near 1) and re-anchored from the exact values at every chunk boundary.
Re-anchoring keeps widths bounded and makes any chunk-aligned subdivision
of a range, including interrupt/resume and parallel sharding, reproduce
identical per-index decisions.

When an enclosure straddles zero the index is retried fresh through the
adaptive-precision kernel, then through the exact cross-power oracle if it
fits the work bound; only then is it reported undecided.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .cmpcert import (
    DEFAULT_EXACT_WORK_BOUND_DIGITS,
    DEFAULT_POLICY,
    LogCombination,
    PrecisionPolicy,
    Verdict,
    VerdictKind,
    compare_roots,
    exact_compare_powers,
    sign_log_combination,
)
from .errors import CheckpointError, DomainError, ExactWorkBoundError
from .powersums import _pow_small, power_sum_at
from .primes import PrimeStream, default_stream
from .reports import CheckReport, load_checkpoint, save_checkpoint
from .intervals import ln_int, ln_rat


@dataclass(frozen=True)
class ScanSettings:
    """Engine tuning: scan precision, chunk granularity, fallback policy."""

    scan_bits: int = 96
    chunk: int = 4096
    policy: PrecisionPolicy = field(default_factory=PrecisionPolicy)
    exact_work_bound_digits: int = DEFAULT_EXACT_WORK_BOUND_DIGITS
    jobs: int = 1


DEFAULT_SETTINGS = ScanSettings()


# ---------------------------------------------------------------------------
# sequence providers
# ---------------------------------------------------------------------------

def provider_values(desc: dict, n_lo: int, n_hi: int,
                    state: dict | None = None,
                    stream: PrimeStream | None = None):
    """Yield exact integers V_n for n in [n_lo, n_hi].

    ``state`` carries {"v_hex": V_(n_lo - 1)} for running-sum sequences so a
    scan can restart mid-range without re-summing from n = 1.
    """
    kind = desc["kind"]
    if kind == "nat":
        yield from range(n_lo, n_hi + 1)
    elif kind == "primes":
        stream = stream or default_stream()
        yield from stream.iter_primes(n_lo, n_hi)
    elif kind == "powersum":
        stream = stream or default_stream()
        alpha = desc["alpha"]
        if state is not None:
            s = int(state["v_hex"], 16)
        else:
            s = power_sum_at(alpha, n_lo - 1, stream)
        for p in stream.iter_primes(n_lo, n_hi):
            s += _pow_small(p, alpha)
            yield s
    elif kind == "twin_lower":
        stream = stream or default_stream()
        arr = stream.twin_lowers(n_hi)
        yield from arr[n_lo - 1 : n_hi].tolist()
    elif kind == "twin_sum":
        stream = stream or default_stream()
        arr = stream.twin_lowers(n_hi)
        if state is not None:
            t = int(state["v_hex"], 16)
        else:
            t = int(arr[: n_lo - 1].sum()) if n_lo > 1 else 0
        for lower in arr[n_lo - 1 : n_hi].tolist():
            t += lower
            yield t
    elif kind == "table":
        off = desc["offset"]
        vals = desc["values"]
        if n_lo < off or n_hi - off >= len(vals):
            raise DomainError("table provider asked outside its slice")
        yield from vals[n_lo - off : n_hi - off + 1]
    else:
        raise DomainError(f"unknown sequence kind {kind!r}")


_STATEFUL_KINDS = {"powersum", "twin_sum"}


def _slice_desc(desc: dict, n_lo: int, n_hi: int) -> dict:
    """Restrict a table descriptor to a span (cheap to pickle to workers)."""
    if desc["kind"] != "table":
        return desc
    off = desc["offset"]
    return {
        "kind": "table",
        "offset": n_lo,
        "values": desc["values"][n_lo - off : n_hi - off + 1],
    }


# ---------------------------------------------------------------------------
# per-index fallbacks (fresh adaptive kernel, then exact oracle)
# ---------------------------------------------------------------------------

def _pair_fallback(n: int, va: int, vb: int, mean: bool,
                   st: ScanSettings) -> Verdict:
    A = Fraction(va, n) if mean else Fraction(va)
    B = Fraction(vb, n + 1) if mean else Fraction(vb)
    v = compare_roots(A, n, B, n + 1, st.policy)
    if v.kind is VerdictKind.UNDECIDED:
        try:
            v = exact_compare_powers(A, n + 1, B, n, st.exact_work_bound_digits)
        except ExactWorkBoundError:
            pass
    return v


def _three_fallback(n: int, v0: int, v1: int, v2: int, mean: bool,
                    st: ScanSettings) -> Verdict:
    x0 = Fraction(v0, n) if mean else Fraction(v0)
    x1 = Fraction(v1, n + 1) if mean else Fraction(v1)
    x2 = Fraction(v2, n + 2) if mean else Fraction(v2)
    comb = LogCombination(
        [(Fraction(2, n + 1), x1), (Fraction(-1, n), x0), (Fraction(-1, n + 2), x2)]
    )
    v = sign_log_combination(comb, st.policy)
    if v.kind is not VerdictKind.UNDECIDED:
        return v
    e1, e0, e2 = 2 * n * (n + 2), (n + 1) * (n + 2), n * (n + 1)
    bits = (
        e1 * (x1.numerator.bit_length() + x1.denominator.bit_length())
        + e0 * (x0.numerator.bit_length() + x0.denominator.bit_length())
        + e2 * (x2.numerator.bit_length() + x2.denominator.bit_length())
    )
    if bits * 0.302 > st.exact_work_bound_digits:
        return v
    lhs = x1.numerator ** e1 * x0.denominator ** e0 * x2.denominator ** e2
    rhs = x0.numerator ** e0 * x2.numerator ** e2 * x1.denominator ** e1
    if lhs < rhs:
        return Verdict(VerdictKind.LESS)
    if lhs > rhs:
        return Verdict(VerdictKind.GREATER)
    return Verdict(VerdictKind.EQUAL)


# ---------------------------------------------------------------------------
# chunk runners
# ---------------------------------------------------------------------------

def _pair_chunk(values, n0: int, n1: int, mean: bool, st: ScanSettings):
    """Check indices n in [n0, n1]; `values` yields V_(n0) .. V_(n1 + 1).

    Returns (violations, undecided, max_bits, V_(n1)).
    """
    w = st.scan_bits
    violations: list[dict] = []
    undecided: list[int] = []
    max_bits = w
    it = iter(values)
    a = next(it)
    al, ah = ln_int(a, w)
    if mean:
        ml, mh = ln_int(n0, w)
    n = n0
    v_last = a
    for b in it:
        dl, dh = ln_rat(b, a, w)
        bl, bh = al + dl, ah + dh
        if mean:
            d2l, d2h = ln_rat(n + 1, n, w)
            m2l, m2h = ml + d2l, mh + d2h
            lo = (n + 1) * (al - mh) - n * (bh - m2l)
            decided = lo > 0
            if not decided:
                hi = (n + 1) * (ah - ml) - n * (bl - m2h)
        else:
            lo = (n + 1) * al - n * bh
            decided = lo > 0
            if not decided:
                hi = (n + 1) * ah - n * bl
        if not decided:
            if hi < 0:
                verdict = Verdict(VerdictKind.LESS, w)
            else:
                verdict = _pair_fallback(n, a, b, mean, st)
                if verdict.precision_bits:
                    max_bits = max(max_bits, verdict.precision_bits)
            if verdict.kind is VerdictKind.UNDECIDED:
                undecided.append(n)
            elif verdict.kind is not VerdictKind.GREATER:
                violations.append(
                    {"n": n, "verdict": verdict.kind.value,
                     "precision_bits": verdict.precision_bits}
                )
        if n == n1:
            v_last = a
        a, al, ah = b, bl, bh
        if mean:
            ml, mh = m2l, m2h
        n += 1
        if n > n1:
            break
    return violations, undecided, max_bits, v_last


def _three_chunk(values, n0: int, n1: int, mean: bool, st: ScanSettings):
    """Check indices n in [n0, n1]; `values` yields V_(n0) .. V_(n1 + 2)."""
    w = st.scan_bits
    violations: list[dict] = []
    undecided: list[int] = []
    max_bits = w
    it = iter(values)
    v0 = next(it)
    v1 = next(it)
    p0 = ln_int(v0, w)
    p1_ = ln_rat(v1, v0, w)
    p1 = (p0[0] + p1_[0], p0[1] + p1_[1])
    if mean:
        m0 = ln_int(n0, w)
        d = ln_rat(n0 + 1, n0, w)
        m1 = (m0[0] + d[0], m0[1] + d[1])
    n = n0
    v_last = v0
    for v2 in it:
        d = ln_rat(v2, v1, w)
        p2 = (p1[0] + d[0], p1[1] + d[1])
        if mean:
            d = ln_rat(n + 2, n + 1, w)
            m2 = (m1[0] + d[0], m1[1] + d[1])
            l0 = (p0[0] - m0[1], p0[1] - m0[0])
            l1 = (p1[0] - m1[1], p1[1] - m1[0])
            l2 = (p2[0] - m2[1], p2[1] - m2[0])
        else:
            l0, l1, l2 = p0, p1, p2
        c_mid, c_left, c_right = 2 * n * (n + 2), (n + 1) * (n + 2), n * (n + 1)
        hi = c_mid * l1[1] - c_left * l0[0] - c_right * l2[0]
        if hi >= 0:
            lo = c_mid * l1[0] - c_left * l0[1] - c_right * l2[1]
            if lo > 0:
                verdict = Verdict(VerdictKind.GREATER, w)
            else:
                verdict = _three_fallback(n, v0, v1, v2, mean, st)
                if verdict.precision_bits:
                    max_bits = max(max_bits, verdict.precision_bits)
            if verdict.kind is VerdictKind.UNDECIDED:
                undecided.append(n)
            elif verdict.kind is not VerdictKind.LESS:
                violations.append(
                    {"n": n, "verdict": verdict.kind.value,
                     "precision_bits": verdict.precision_bits}
                )
        if n == n1:
            v_last = v0
        v0, v1 = v1, v2
        p0, p1 = p1, p2
        if mean:
            m0, m1 = m1, m2
        n += 1
        if n > n1:
            break
    return violations, undecided, max_bits, v_last


_ENGINES = {"pair": (_pair_chunk, 1), "three": (_three_chunk, 2)}


def run_span(engine: str, desc: dict, mean: bool, n0: int, n1: int,
             state: dict | None, st: ScanSettings,
             stream: PrimeStream | None = None):
    """Run one contiguous span chunk by chunk (used directly by workers).

    Returns (violations, undecided, max_bits, end_state) where end_state
    positions a follow-up span at n1 + 1.
    """
    runner, win = _ENGINES[engine]
    violations: list[dict] = []
    undecided: list[int] = []
    max_bits = st.scan_bits
    c0 = n0
    while c0 <= n1:
        c1 = min(n1, ((c0 // st.chunk) + 1) * st.chunk - 1)
        values = provider_values(desc, c0, c1 + win, state, stream)
        vio, und, bits, v_last = runner(values, c0, c1, mean, st)
        violations.extend(vio)
        undecided.extend(und)
        max_bits = max(max_bits, bits)
        state = {"v_hex": hex(v_last)} if desc["kind"] in _STATEFUL_KINDS else None
        c0 = c1 + 1
    return violations, undecided, max_bits, state


_WORKER_STREAM: PrimeStream | None = None


def _worker_span(args: dict) -> dict:
    global _WORKER_STREAM
    if _WORKER_STREAM is None:
        _WORKER_STREAM = PrimeStream()
    st = ScanSettings(**args["settings"])
    vio, und, bits, state = run_span(
        args["engine"], args["desc"], args["mean"], args["n0"], args["n1"],
        args["state"], st, _WORKER_STREAM,
    )
    return {"violations": vio, "undecided": und, "max_bits": bits, "state": state}


def _settings_dict(st: ScanSettings) -> dict:
    return {
        "scan_bits": st.scan_bits,
        "chunk": st.chunk,
        "policy": st.policy,
        "exact_work_bound_digits": st.exact_work_bound_digits,
    }


# ---------------------------------------------------------------------------
# top-level driver
# ---------------------------------------------------------------------------

def _job_key(statement_id, alpha, engine, desc, mean, n_from, n_to,
             st: ScanSettings) -> dict:
    return {
        "statement_id": statement_id,
        "alpha": None if alpha is None else str(alpha),
        "engine": engine,
        "kind": desc["kind"],
        "kind_alpha": desc.get("alpha"),
        "mean": mean,
        "n_from": n_from,
        "n_to": n_to,
        "scan_bits": st.scan_bits,
        "chunk": st.chunk,
        "policy_start": st.policy.start_bits,
        "policy_cap": st.policy.cap_bits,
    }


def run_scan(*, engine: str, desc: dict, mean: bool,
             n_from: int, n_to: int,
             statement_id: str, alpha=None,
             settings: ScanSettings = DEFAULT_SETTINGS,
             stream: PrimeStream | None = None,
             onset_scan: bool = False, onset_min: int = 1,
             checkpoint_path: str | None = None) -> CheckReport:
    """Certify a statement over [n_from, n_to] and build its report.

    With ``onset_scan`` the engine also evaluates [onset_min, n_from - 1]
    and records the measured onset (first index from which the statement
    holds up to n_to) without counting those probes as violations.
    """
    if n_from < 1 or n_to < n_from:
        raise DomainError(f"bad range [{n_from}, {n_to}]")
    t0 = time.perf_counter()
    key = _job_key(statement_id, alpha, engine, desc, mean, n_from, n_to, settings)
    report = CheckReport(
        statement_id=statement_id,
        alpha=alpha if alpha is None or isinstance(alpha, int) else str(alpha),
        n_from=n_from,
        n_to=n_to,
        max_precision_bits=settings.scan_bits,
    )

    start_n = n_from
    state: dict | None = None
    if checkpoint_path is not None and os.path.exists(checkpoint_path):
        payload = load_checkpoint(checkpoint_path)
        if payload is not None:
            if payload.get("job") != key:
                raise CheckpointError(
                    "checkpoint was written by a different job specification"
                )
            report.violations = payload["violations"]
            report.undecided = payload["undecided"]
            report.max_precision_bits = payload["max_bits"]
            report.measured_onset = payload.get("measured_onset")
            report.diagnostics = payload.get("diagnostics")
            start_n = payload["next_n"]
            state = payload.get("state")
            if payload.get("complete") or start_n > n_to:
                report.wall_time_s = time.perf_counter() - t0
                report.checkpoint = {"next_n": start_n, "complete": True}
                return report

    if onset_scan and start_n == n_from and n_from > onset_min:
        vio, und, bits, _ = run_span(
            engine, desc, mean, onset_min, n_from - 1, None, settings, stream
        )
        fails = [v["n"] for v in vio]
        report.measured_onset = (max(fails) + 1) if fails else onset_min
        report.diagnostics = {
            "onset_scan_from": onset_min,
            "onset_failures": fails,
            "onset_undecided": und,
        }
        report.max_precision_bits = max(report.max_precision_bits, bits)

    def _commit(next_n: int, complete: bool):
        if checkpoint_path is None:
            return
        save_checkpoint(
            checkpoint_path,
            {
                "job": key,
                "next_n": next_n,
                "state": state,
                "violations": report.violations,
                "undecided": report.undecided,
                "max_bits": report.max_precision_bits,
                "measured_onset": report.measured_onset,
                "diagnostics": report.diagnostics,
                "complete": complete,
            },
        )

    jobs = max(1, settings.jobs)
    if jobs > 1 and desc["kind"] != "table":
        # chunk-aligned spans; workers re-derive primes, parent supplies state
        spans = _split_spans(start_n, n_to, jobs, settings.chunk)
        states = _span_states(desc, spans, state, stream)
        tasks = [
            {
                "engine": engine, "desc": _slice_desc(desc, s0, s1 + 2),
                "mean": mean, "n0": s0, "n1": s1, "state": states[i],
                "settings": _settings_dict(settings),
            }
            for i, (s0, s1) in enumerate(spans)
        ]
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for (s0, s1), result in zip(spans, ex.map(_worker_span, tasks)):
                report.violations.extend(result["violations"])
                report.undecided.extend(result["undecided"])
                report.max_precision_bits = max(
                    report.max_precision_bits, result["max_bits"]
                )
                state = result["state"]
                _commit(s1 + 1, complete=False)
    else:
        c0 = start_n
        while c0 <= n_to:
            c1 = min(n_to, ((c0 // settings.chunk) + 1) * settings.chunk - 1)
            vio, und, bits, state = run_span(
                engine, desc, mean, c0, c1, state, settings, stream
            )
            report.violations.extend(vio)
            report.undecided.extend(und)
            report.max_precision_bits = max(report.max_precision_bits, bits)
            c0 = c1 + 1
            _commit(c0, complete=False)

    report.wall_time_s = time.perf_counter() - t0
    if checkpoint_path is not None:
        report.checkpoint = {"next_n": n_to + 1, "complete": True}
        _commit(n_to + 1, complete=True)
    return report


def _split_spans(n_from: int, n_to: int, jobs: int, chunk: int):
    total = n_to - n_from + 1
    per = max(chunk, -(-total // jobs))
    per = -(-per // chunk) * chunk
    spans = []
    s = n_from
    while s <= n_to:
        e = min(n_to, ((s + per) // chunk) * chunk - 1)
        if e < s:
            e = n_to
        spans.append((s, e))
        s = e + 1
    return spans


def _span_states(desc, spans, first_state, stream):
    """Exact sequence state at each span start (single sequential pass)."""
    if desc["kind"] not in _STATEFUL_KINDS:
        return [None] * len(spans)
    states = [first_state]
    for (s0, s1) in spans[:-1]:
        prev = states[-1]
        last = None
        for last in provider_values(desc, s0, s1, prev, stream):
            pass
        states.append({"v_hex": hex(last)})
    return states
