"""Check records and report rendering (JSON, CSV, plain text)."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA = 1

PASS = "pass"
FAIL = "fail"
FLAGGED = "discrepancy-flagged"

# provenance tags for expected values
THEOREM = "theorem"  # asserted by the statement under test
DERIVED = "derived"  # recomputed independently here
IDENTITY = "identity"  # holds by construction; a sanity check
CLOSED_FORM = "closed-form"  # printed closed form compared against a direct computation


def plain(value):
    """JSON-friendly rendering; exact numbers become strings."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, (str, float)):
        return value
    return str(value)


@dataclass
class Check:
    name: str
    expected: object
    computed: object
    status: str
    provenance: str = DERIVED
    criterion: int | None = None
    detail: dict = field(default_factory=dict)

    @classmethod
    def compare(cls, name, expected, computed, provenance=DERIVED, criterion=None, detail=None) -> "Check":
        status = PASS if expected == computed else FAIL
        return cls(name, expected, computed, status, provenance, criterion, detail or {})

    @classmethod
    def flag(cls, name, expected, computed, provenance=CLOSED_FORM, criterion=None, detail=None) -> "Check":
        """A reference value that disagrees is reported but never fails the run."""
        status = PASS if expected == computed else FLAGGED
        return cls(name, expected, computed, status, provenance, criterion, detail or {})

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def as_dict(self) -> dict:
        out = {
            "name": self.name,
            "expected": plain(self.expected),
            "computed": plain(self.computed),
            "status": self.status,
            "provenance": self.provenance,
        }
        if self.criterion is not None:
            out["criterion"] = self.criterion
        if self.detail:
            out["detail"] = plain(self.detail)
        return out


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    timing: dict | None = None

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks):
        self.checks.extend(checks)

    @property
    def passed(self) -> bool:
        return not any(c.failed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, FLAGGED: 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def flagged(self) -> list:
        return [c for c in self.checks if c.status == FLAGGED]

    def as_dict(self) -> dict:
        out = {
            "schema": SCHEMA,
            "command": self.command,
            "inputs": plain(self.inputs),
            "status": PASS if self.passed else FAIL,
            "counts": self.counts(),
            "checks": [c.as_dict() for c in self.checks],
        }
        if self.data:
            out["data"] = plain(self.data)
        if self.timing is not None:
            out["timing"] = self.timing
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["command", "criterion", "check", "expected", "computed", "status", "provenance"])
        for c in self.checks:
            d = c.as_dict()
            w.writerow(
                [
                    self.command,
                    "" if c.criterion is None else c.criterion,
                    c.name,
                    json.dumps(d["expected"], sort_keys=True),
                    json.dumps(d["computed"], sort_keys=True),
                    c.status,
                    c.provenance,
                ]
            )
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"{self.command}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            tag = {PASS: "ok  ", FAIL: "FAIL", FLAGGED: "FLAG"}[c.status]
            lines.append(f"  [{tag}] {c.name}: expected {plain(c.expected)} [{c.provenance}], computed {plain(c.computed)}")
        flagged = self.flagged()
        if flagged:
            lines.append(f"  {len(flagged)} discrepancy-flagged item(s); these do not fail the run")
        if self.timing is not None:
            lines.append(f"  wall time: {self.timing.get('wall_seconds')} s")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "text":
            return self.to_text()
        raise ValueError(f"unknown format {fmt!r}")


__all__ = [
    "CLOSED_FORM",
    "Check",
    "DERIVED",
    "FAIL",
    "FLAGGED",
    "IDENTITY",
    "PASS",
    "Report",
    "SCHEMA",
    "THEOREM",
    "plain",
]
