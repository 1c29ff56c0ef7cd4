"""Check records and the versioned JSON report container."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

SCHEMA_VERSION = "1.0"

# failure classes, also used for exit codes
PASS, FAIL, CONFIG, TRUNCATION = "pass", "fail", "config", "truncation"


def _plain(value):
    """JSON-safe copy: complex numbers become [re, im], exact values become text."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return value if math.isfinite(value) else str(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "to_text"):
        return value.to_text()
    if hasattr(value, "to_json"):
        return value.to_json()
    try:
        return float(value)
    except (TypeError, ValueError):
        return str(value)


@dataclass
class CheckRecord:
    check: str
    ref: str
    inputs: dict
    verdict: bool
    residual: float | None = None
    detail: dict = field(default_factory=dict)
    failure: str | None = None

    @property
    def status(self) -> str:
        if self.verdict:
            return PASS
        return self.failure or FAIL

    def to_json(self) -> dict:
        return {"check": self.check, "ref": self.ref, "inputs": _plain(self.inputs),
                "verdict": self.status, "residual": _plain(self.residual),
                "detail": _plain(self.detail)}


@dataclass
class RunReport:
    command: str
    config: dict
    records: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def add(self, rec: CheckRecord) -> CheckRecord:
        self.records.append(rec)
        return rec

    def extend(self, recs) -> None:
        self.records.extend(recs)

    @property
    def status(self) -> str:
        states = {r.status for r in self.records}
        if FAIL in states:
            return FAIL
        if TRUNCATION in states:
            return TRUNCATION
        return PASS

    def to_json(self) -> dict:
        counts: dict = {}
        for r in self.records:
            counts[r.status] = counts.get(r.status, 0) + 1
        return {"schema_version": SCHEMA_VERSION, "command": self.command,
                "config": _plain(self.config), "status": self.status, "counts": counts,
                "records": [r.to_json() for r in self.records], "extras": _plain(self.extras)}

    def write(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n")
        return path
