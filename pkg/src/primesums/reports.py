"""Check reports, their JSON/CSV serialization, and checkpoint files.

A statement is *certified* on a range exactly when both the violation list
and the undecided list are empty.  Reports serialize deterministically
(sorted keys, fixed separators) so identical runs are byte-identical apart
from the wall_time field.
"""

from __future__ import annotations

import hashlib
import io
import json
import os
from dataclasses import dataclass, field
from typing import Any

from .errors import CheckpointError


@dataclass
class CheckReport:
    statement_id: str
    alpha: int | str | None
    n_from: int
    n_to: int
    violations: list[dict] = field(default_factory=list)
    undecided: list[int] = field(default_factory=list)
    max_precision_bits: int = 0
    wall_time_s: float = 0.0
    checkpoint: dict | None = None
    measured_onset: int | None = None
    diagnostics: dict | None = None

    @property
    def ok(self) -> bool:
        return not self.violations and not self.undecided

    def to_dict(self) -> dict[str, Any]:
        return {
            "statement_id": self.statement_id,
            "alpha": self.alpha,
            "range": [self.n_from, self.n_to],
            "violations": self.violations,
            "undecided": self.undecided,
            "max_precision_bits": self.max_precision_bits,
            "wall_time_s": self.wall_time_s,
            "checkpoint": self.checkpoint,
            "measured_onset": self.measured_onset,
            "diagnostics": self.diagnostics,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def to_csv(self) -> str:
        """One row per violation: statement_id, alpha, n, verdict, precision_bits."""
        buf = io.StringIO()
        buf.write("statement_id,alpha,n,verdict,precision_bits\n")
        for v in self.violations:
            buf.write(
                f"{self.statement_id},{self.alpha},{v['n']},{v['verdict']},"
                f"{v.get('precision_bits', '')}\n"
            )
        for n in self.undecided:
            buf.write(
                f"{self.statement_id},{self.alpha},{n},UNDECIDED,"
                f"{self.max_precision_bits}\n"
            )
        return buf.getvalue()


def merge_reports(base: CheckReport, more: CheckReport) -> CheckReport:
    """Merge a later chunk into an earlier one (chunk order is by index)."""
    base.n_to = max(base.n_to, more.n_to)
    base.violations.extend(more.violations)
    base.undecided.extend(more.undecided)
    base.max_precision_bits = max(base.max_precision_bits, more.max_precision_bits)
    base.wall_time_s += more.wall_time_s
    base.checkpoint = more.checkpoint
    return base


# ---------------------------------------------------------------------------
# checkpoint files
# ---------------------------------------------------------------------------

def _checksum(payload: dict) -> str:
    body = {k: v for k, v in payload.items() if k != "sha256"}
    return hashlib.sha256(
        json.dumps(body, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()


def save_checkpoint(path: str, payload: dict):
    """Atomic write (tmp + rename) with an embedded content hash."""
    payload = dict(payload)
    payload["sha256"] = _checksum(payload)
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(payload, fh, sort_keys=True)
    os.replace(tmp, path)


def load_checkpoint(path: str) -> dict:
    try:
        with open(path) as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    if payload.get("sha256") != _checksum(payload):
        raise CheckpointError(f"checkpoint {path} failed its checksum")
    return payload
