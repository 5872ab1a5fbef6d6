"""Verification reports and the margin bookkeeping behind them."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

STRICT_TOL = 1e-12


@dataclass
class VerificationReport:
    claim: str
    points_checked: int
    violations: list = field(default_factory=list)
    min_margin: float | None = None
    passed: bool = True
    notes: str = ""

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "points_checked": self.points_checked,
            "violations": [{"params": p, "margin": m} for p, m in self.violations],
            "min_margin": self.min_margin,
            "pass": self.passed,
            "notes": self.notes,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    @classmethod
    def merge(cls, claim: str, reports, notes: str = "") -> "VerificationReport":
        reports = list(reports)
        viol = [v for r in reports for v in r.violations]
        margins = [r.min_margin for r in reports if r.min_margin is not None]
        parts = [r.notes for r in reports if r.notes]
        if notes:
            parts.insert(0, notes)
        return cls(claim, sum(r.points_checked for r in reports), viol,
                   min(margins) if margins else None, not viol, "; ".join(parts))


def _clean(params: dict) -> dict:
    out = {}
    for k, v in params.items():
        if isinstance(v, float) or hasattr(v, "dtype"):
            v = float(v)
        out[k] = v
    return out


class Checker:
    """Collects signed margins; a margin is scaled by `scale` before comparison."""

    def __init__(self, claim: str):
        self.claim = claim
        self.points = 0
        self.violations = []
        self.min_margin = math.inf

    def _record(self, params, margin, scale, ok):
        self.points += 1
        rel = (float(margin) / scale if scale else float(margin)) + 0.0
        if not math.isfinite(rel):
            ok = False
        self.min_margin = min(self.min_margin, rel) if math.isfinite(rel) else self.min_margin
        if not ok:
            self.violations.append((_clean(params), rel))
        return ok

    def strict(self, params: dict, margin: float, scale: float = 1.0) -> bool:
        """Require margin > STRICT_TOL * |scale|; record margin/|scale|."""
        scale = abs(float(scale)) or 1.0
        return self._record(params, margin, scale, margin > STRICT_TOL * scale)

    def nonstrict(self, params: dict, margin: float, scale: float = 1.0) -> bool:
        """Require margin >= -STRICT_TOL * |scale|."""
        scale = abs(float(scale)) or 1.0
        return self._record(params, margin, scale, margin >= -STRICT_TOL * scale)

    def at_least(self, params: dict, margin: float, slack: float) -> bool:
        """Require margin >= -slack (absolute)."""
        return self._record(params, margin, 1.0, margin >= -slack)

    def fail(self, params: dict, margin: float = -math.inf) -> None:
        self.points += 1
        self.violations.append((_clean(params), margin))

    def report(self, notes: str = "") -> VerificationReport:
        mm = self.min_margin if math.isfinite(self.min_margin) else None
        return VerificationReport(self.claim, self.points, list(self.violations), mm,
                                  not self.violations, notes)
