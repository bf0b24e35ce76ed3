"""Named, certified comparisons and the certificate that collects them."""

import json
import time
from dataclasses import dataclass, field

from .interval import Interval

SCHEMA_VERSION = "1"


def fmt(x):
    """Shortest round-trip text of a binary64 value."""
    return repr(float(x))


@dataclass
class CheckResult:
    name: str
    passed: bool
    inequality: str
    lhs: tuple
    rhs: tuple
    anchor: str
    elapsed_ms: int = 0
    note: str = ""

    def to_dict(self):
        out = {
            "name": self.name,
            "passed": self.passed,
            "inequality": self.inequality,
            "lhs": [fmt(v) for v in self.lhs],
            "rhs": [fmt(v) for v in self.rhs],
            "anchor": self.anchor,
        }
        if self.note:
            out["note"] = self.note
        return out


def _endpoints(x):
    if isinstance(x, Interval):
        return (x.lo, x.hi)
    return (float(x), float(x))


_OPS = {
    "<": lambda a, b: a.hi < b.lo,
    "<=": lambda a, b: a.hi <= b.lo,
    ">": lambda a, b: a.lo > b.hi,
    ">=": lambda a, b: a.lo >= b.hi,
}


def compare(name, lhs, op, rhs, inequality, anchor, note=""):
    """Certify ``lhs op rhs`` one-sidedly on interval endpoints."""
    t0 = time.perf_counter()
    a = lhs if isinstance(lhs, Interval) else Interval(lhs)
    b = rhs if isinstance(rhs, Interval) else Interval(rhs)
    ok = _OPS[op](a, b)
    ms = int(round((time.perf_counter() - t0) * 1000))
    return CheckResult(name, bool(ok), inequality, _endpoints(a), _endpoints(b), anchor, ms, note)


def flag(name, ok, inequality, anchor, note=""):
    """A check whose verdict was established by a procedure, not one comparison."""
    return CheckResult(name, bool(ok), inequality, (), (), anchor, 0, note)


@dataclass(frozen=True)
class Assumption:
    name: str
    statement: str
    source: str

    def to_dict(self):
        return {"name": self.name, "statement": self.statement, "source": self.source}


@dataclass
class Certificate:
    tool_version: str
    parameter_table_version: str
    assumptions: list
    checks: list = field(default_factory=list)
    canonical: bool = True
    inconclusive: bool = False
    target: str = ""

    @property
    def overall(self):
        return bool(self.checks) and all(c.passed for c in self.checks) and not self.inconclusive

    def extend(self, checks):
        self.checks.extend(checks)
        return self

    def failed(self):
        return [c for c in self.checks if not c.passed]

    def to_dict(self, include_metadata=True):
        out = {
            "schema_version": SCHEMA_VERSION,
            "tool_version": self.tool_version,
            "parameter_table_version": self.parameter_table_version,
            "target": self.target,
            "parameter_table": "canonical" if self.canonical else "non-canonical",
            "assumptions": [a.to_dict() for a in self.assumptions],
            "checks": [c.to_dict() for c in self.checks],
            "inconclusive": self.inconclusive,
            "overall": self.overall,
        }
        if include_metadata:
            out["metadata"] = {"elapsed_ms": {c.name: c.elapsed_ms for c in self.checks}}
        return out

    def to_json(self, include_metadata=True):
        return json.dumps(self.to_dict(include_metadata), indent=2, ensure_ascii=False) + "\n"

    def to_text(self):
        lines = [f"target: {self.target}  table v{self.parameter_table_version}"
                 f" ({'canonical' if self.canonical else 'non-canonical'})"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"[{mark}] {c.name}: {c.inequality}")
            if c.lhs:
                lines.append(f"        lhs [{fmt(c.lhs[0])}, {fmt(c.lhs[1])}]"
                             f"  rhs [{fmt(c.rhs[0])}, {fmt(c.rhs[1])}]")
        lines.append("assumptions:")
        for a in self.assumptions:
            lines.append(f"  - {a.name}: {a.statement}")
        lines.append(f"overall: {'PASS' if self.overall else 'FAIL'}")
        return "\n".join(lines) + "\n"


def timed(fn, *args, **kwargs):
    """Run fn and stamp the elapsed time on every CheckResult it returns."""
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    ms = int(round((time.perf_counter() - t0) * 1000))
    for c in out if isinstance(out, list) else []:
        if isinstance(c, CheckResult) and c.elapsed_ms == 0:
            c.elapsed_ms = ms
    return out
