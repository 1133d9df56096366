"""Check/Report containers shared by the verification suites and the CLI."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable

__all__ = ["Check", "Report", "run_check"]

SCHEMA_VERSION = 1


@dataclass
class Check:
    id: str
    paper_anchor: str
    status: str
    residual: float
    elapsed: float

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "paper_anchor": self.paper_anchor,
            "status": self.status,
            "residual": self.residual,
            "elapsed": self.elapsed,
        }


def run_check(
    check_id: str,
    anchor: str,
    fn: Callable[[], float | int | bool],
    tol: float = 0.0,
) -> Check:
    """Time fn and grade its residual; bools count as 0 (pass) / 1 (fail)."""
    t0 = time.perf_counter()
    out = fn()
    elapsed = time.perf_counter() - t0
    if isinstance(out, bool):
        residual = 0.0 if out else 1.0
    else:
        residual = float(out)
    status = "pass" if abs(residual) <= tol else "fail"
    return Check(check_id, anchor, status, residual, elapsed)


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)

    def extend(self, checks: list[Check]) -> None:
        self.checks.extend(checks)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "checks": [c.as_dict() for c in self.checks],
            "summary": {
                "total": len(self.checks),
                "passed": sum(c.passed for c in self.checks),
                "failed": sum(not c.passed for c in self.checks),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=False)

    def to_csv(self) -> str:
        lines = ["id,paper_anchor,status,residual,elapsed"]
        for c in self.checks:
            lines.append(
                f"{c.id},{c.paper_anchor},{c.status},{c.residual:.3e},{c.elapsed:.4f}"
            )
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        width = max((len(c.id) for c in self.checks), default=4)
        lines = [f"suite: {self.suite}"]
        for c in self.checks:
            lines.append(
                f"  {c.id:<{width}}  [{c.paper_anchor}]  {c.status.upper():<4}"
                f"  residual={c.residual:.3e}  ({c.elapsed:.3f}s)"
            )
        d = self.as_dict()["summary"]
        lines.append(f"{d['passed']}/{d['total']} checks passed")
        return "\n".join(lines) + "\n"
