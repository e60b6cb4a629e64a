"""Structured pass/fail records shared by every verification routine."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exactnum import Poly


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Poly):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    return value


@dataclass
class VerificationReport:
    """Outcome of one check at one parameter point.

    ``checks`` maps sub-check names to booleans; ``residuals`` maps the
    names of failing sub-checks to their residual (a Poly for exact checks,
    a float for numeric ones).  A skipped report counts as passing and
    carries the reason in ``detail``.
    """

    suite: str
    family: str | None = None
    params: dict = field(default_factory=dict)
    ell: int | None = None
    n: int | None = None
    checks: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)
    detail: str = ""
    skipped: bool = False
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.skipped or all(self.checks.values())

    def check(self, name: str, ok: bool, residual: Any = None) -> bool:
        self.checks[name] = bool(ok)
        if not ok and residual is not None:
            self.residuals[name] = residual
        return bool(ok)

    def check_zero(self, name: str, residual: Poly) -> bool:
        """Record an exact polynomial identity whose residual must vanish."""
        return self.check(name, residual.is_zero(), residual)

    def skip(self, reason: str) -> "VerificationReport":
        self.skipped = True
        self.detail = reason
        return self

    def sort_key(self):
        return (self.suite, self.family or "", self.ell if self.ell is not None else -1,
                self.n if self.n is not None else -1, json.dumps(self.params, sort_keys=True),
                self.detail if self.skipped else "")

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "family": self.family,
            "params": _jsonable(self.params),
            "ell": self.ell,
            "n": self.n,
            "pass": self.passed,
            "skipped": self.skipped,
            "checks": dict(self.checks),
            "residual": {k: _jsonable(v) for k, v in self.residuals.items()} or None,
            "detail": self.detail,
        }
        if self.extra:
            out["extra"] = _jsonable(self.extra)
        return out

    def __str__(self) -> str:
        status = "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")
        where = " ".join(f"{k}={v}" for k, v in self.params.items() if v is not None)
        return f"[{status}] {self.suite} {self.family or ''} {where} ell={self.ell} n={self.n} {self.detail}".strip()


def summarize(reports) -> dict:
    reports = list(reports)
    failed = [r for r in reports if not r.passed]
    return {
        "total": len(reports),
        "passed": len(reports) - len(failed),
        "skipped": sum(r.skipped for r in reports),
        "failed": len(failed),
    }
