"""Machine-readable run reports shared by the command-line suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class Check:
    name: str
    status: str
    witness: Any = None
    detail: str | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class RunReport:
    command: str
    checks: list[Check] = field(default_factory=list)
    tables: dict[str, list] = field(default_factory=dict)
    payload: dict[str, Any] = field(default_factory=dict)
    timing_ms: float | None = None

    def check(self, name: str, ok: bool, witness: Any = None, detail: str | None = None) -> bool:
        self.checks.append(Check(name, PASS if ok else FAIL, None if ok else witness, detail))
        return ok

    def skip(self, name: str, detail: str) -> None:
        self.checks.append(Check(name, SKIPPED, detail=detail))

    @property
    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failed

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self) -> dict:
        out = {
            "command": self.command,
            "status": PASS if self.ok else FAIL,
            "checks": [c.to_json() for c in self.checks],
        }
        if self.tables:
            out["tables"] = self.tables
        out.update(self.payload)
        if self.timing_ms is not None:
            out["timing_ms"] = round(self.timing_ms, 1)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False)

    def summary_lines(self) -> list[str]:
        return [f"[{c.status.upper():7}] {c.name}" + (f"  witness={c.witness}" if c.witness is not None else "") for c in self.checks]
