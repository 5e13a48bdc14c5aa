"""Verification reports: every identity check returns one of these."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .linalg import Matrix, format_scalar


def _fmt_value(v) -> Any:
    if isinstance(v, Matrix):
        return [[format_scalar(x) for x in r] for r in v.entries]
    if isinstance(v, (tuple, list)):
        return [_fmt_value(x) for x in v]
    return format_scalar(v)


def _fmt_index(idx) -> str:
    parts = []
    for k in idx:
        if isinstance(k, tuple):
            parts.append("+".join(str(x) for x in k))
        else:
            parts.append(str(k))
    return "(" + ", ".join(parts) + ")"


@dataclass
class Violation:
    index: tuple
    lhs: Any
    rhs: Any

    def to_dict(self) -> dict:
        return {"index": _fmt_index(self.index), "lhs": _fmt_value(self.lhs), "rhs": _fmt_value(self.rhs)}


@dataclass
class Check:
    name: str
    evaluated: int = 0
    violations: list[Violation] = field(default_factory=list)
    note: str | None = None

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, index, lhs, rhs):
        self.evaluated += 1
        if lhs != rhs:
            self.violations.append(Violation(tuple(index), lhs, rhs))

    def record_violation(self, index, lhs, rhs):
        """A failure found by a bulk evaluation that already counted it."""
        self.violations.append(Violation(tuple(index), lhs, rhs))

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "passed": self.passed,
            "evaluated": self.evaluated,
            "violations": [v.to_dict() for v in self.violations],
        }
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class VerificationReport:
    subject: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def add(self, name: str, note: str | None = None) -> Check:
        c = Check(name, note=note)
        self.checks.append(c)
        return c

    def verdicts(self) -> dict[str, bool]:
        return {c.name: c.passed for c in self.checks}

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self, max_violations: int = 10) -> str:
        lines = [f"{self.subject}: {'pass' if self.passed else 'FAIL'}"]
        for c in self.checks:
            status = "pass" if c.passed else f"FAIL ({len(c.violations)} of {c.evaluated})"
            lines.append(f"  {c.name}: {status}")
            for v in c.violations[:max_violations]:
                d = v.to_dict()
                lines.append(f"    {d['index']}: lhs={json.dumps(d['lhs'])} rhs={json.dumps(d['rhs'])}")
            if len(c.violations) > max_violations:
                lines.append(f"    ... {len(c.violations) - max_violations} more")
            if c.note:
                lines.append(f"    note: {c.note}")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)
