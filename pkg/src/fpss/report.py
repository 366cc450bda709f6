"""Shared result types for verification runs."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    id: str
    passed: bool
    details: list[str] = field(default_factory=list)
    conditional: bool = False

    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, check: Check) -> None:
        self.checks.append(check)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            tag = " [conditional]" if c.conditional else ""
            lines.append(f"{c.status()} {c.id}{tag}")
            for d in c.details:
                lines.append(f"  {d}")
        lines.append(f"{'PASS' if self.passed else 'FAIL'} overall "
                     f"({sum(c.passed for c in self.checks)}/{len(self.checks)})")
        return "\n".join(lines)

    def to_json_dict(self, config: dict) -> dict:
        return {
            "schema_version": 1,
            "config": config,
            "results": [
                {"id": c.id, "status": c.status(),
                 "conditional": c.conditional, "details": list(c.details)}
                for c in self.checks
            ],
        }
