"""Check results and their text / JSON-lines rendering."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

__all__ = ["CheckResult", "Report", "STATUSES", "timed"]

# "unverified" and "unsupported" are honest non-results, not failures
STATUSES = ("pass", "fail", "unverified", "unsupported")


@dataclass
class CheckResult:
    name: str
    anchor: str
    status: str
    witness: str = ""
    millis: Optional[float] = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def record(self, timing: bool = True) -> dict:
        out = {"name": self.name, "anchor": self.anchor, "status": self.status,
               "witness": self.witness}
        out["millis"] = round(self.millis, 1) if timing and self.millis is not None else None
        return out


def timed(name: str, anchor: str, fn: Callable[[], tuple]) -> CheckResult:
    """Run ``fn() -> (status, witness)``; exceptions become failures."""
    t0 = time.perf_counter()
    try:
        status, witness = fn()
    except Exception as exc:  # a crashing check is a failing check
        status, witness = "fail", f"{type(exc).__name__}: {exc}"
    if status is True or status is False:
        status = "pass" if status else "fail"
    return CheckResult(name, anchor, status, witness, (time.perf_counter() - t0) * 1000)


@dataclass
class Report:
    title: str
    results: list = field(default_factory=list)

    def extend(self, results: Iterable[CheckResult]):
        self.results.extend(results)

    def sorted(self) -> list:
        return sorted(self.results, key=lambda r: r.name)

    @property
    def failed(self) -> list:
        return [r for r in self.results if r.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failed

    def counts(self) -> dict:
        out = {s: 0 for s in STATUSES}
        for r in self.results:
            out[r.status] += 1
        return out

    def text(self, timing: bool = True) -> str:
        lines = [f"# {self.title}"]
        for r in self.sorted():
            t = f" ({r.millis:.1f} ms)" if timing and r.millis is not None else ""
            lines.append(f"{r.status.upper():<11} {r.name}{t}")
            lines.append(f"    anchor:  {r.anchor}")
            if r.witness:
                for k, w in enumerate(r.witness.splitlines()):
                    lines.append(("    witness: " if k == 0 else "             ") + w)
        c = self.counts()
        lines.append("# " + ", ".join(f"{c[s]} {s}" for s in STATUSES))
        return "\n".join(lines) + "\n"

    def jsonl(self, timing: bool = True) -> str:
        return "".join(json.dumps(r.record(timing), sort_keys=True) + "\n" for r in self.sorted())
