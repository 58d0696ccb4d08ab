"""Check reports shared by validators, identity suites and the CLI.

Reports hold only JSON-ready values (strings, ints, bools, lists, dicts)
so that serialization is canonical and byte-stable for fixed inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    ok: bool
    details: dict = field(default_factory=dict)
    # informational entries report on something without gating the run
    gating: bool = True

    def to_json(self):
        out = {"name": self.name, "ok": self.ok}
        if not self.gating:
            out["informational"] = True
        if self.details:
            out["details"] = self.details
        return out


@dataclass
class Report:
    title: str
    meta: dict = field(default_factory=dict)
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, ok: bool, gating: bool = True, **details) -> CheckResult:
        result = CheckResult(name, bool(ok), details, gating)
        self.checks.append(result)
        return result

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks if c.gating)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.gating and not c.ok]

    def to_json(self):
        return {
            "title": self.title,
            "ok": self.ok,
            "meta": self.meta,
            "checks": [c.to_json() for c in self.checks],
        }

    def dumps(self) -> str:
        return canonical_json(self.to_json())


def canonical_json(obj) -> str:
    """Deterministic JSON text: sorted keys, fixed separators, one newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
