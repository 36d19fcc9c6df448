"""Record type for a single inequality or identity instance."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

__all__ = ["CheckResult", "check_close", "check_geq", "check_leq"]


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one check.

    ``slack`` is positive when the inequality holds with room to spare
    (``rhs - lhs`` for a ``lhs <= rhs`` check).  ``passed`` is
    ``slack >= -tol``, where ``tol`` is the allowance the check was run
    with; identity checks fold their tolerance into the slack and use 0.
    """

    name: str
    lhs: float
    rhs: float
    slack: float
    passed: bool
    tol: float = 0.0
    note: str = ""
    details: Optional[Mapping[str, Any]] = field(default=None, compare=False)


def check_leq(name, lhs, rhs, eps, note="", details=None) -> CheckResult:
    """``lhs <= rhs`` up to ``eps``.  An infinite rhs passes vacuously."""
    lhs, rhs = float(lhs), float(rhs)
    if math.isinf(rhs) and rhs > 0:
        return CheckResult(name, lhs, rhs, math.inf, True, eps, note or "vacuous: rhs infinite", details)
    if math.isinf(lhs) and lhs > 0:
        return CheckResult(name, lhs, rhs, -math.inf, False, eps, note or "lhs infinite", details)
    slack = rhs - lhs
    return CheckResult(name, lhs, rhs, slack, slack >= -eps, eps, note, details)


def check_geq(name, lhs, rhs, eps, note="", details=None) -> CheckResult:
    """``lhs >= rhs`` up to ``eps``.  An infinite lhs passes vacuously."""
    lhs, rhs = float(lhs), float(rhs)
    if math.isinf(lhs) and lhs > 0:
        return CheckResult(name, lhs, rhs, math.inf, True, eps, note or "vacuous: lhs infinite", details)
    if math.isinf(rhs) and rhs > 0:
        return CheckResult(name, lhs, rhs, -math.inf, False, eps, note or "rhs infinite", details)
    slack = lhs - rhs
    return CheckResult(name, lhs, rhs, slack, slack >= -eps, eps, note, details)


def check_close(name, lhs, rhs, tol, note="", details=None) -> CheckResult:
    """``|lhs - rhs| <= tol``; the slack is ``tol - |lhs - rhs|``."""
    lhs, rhs = float(lhs), float(rhs)
    if lhs == rhs:
        return CheckResult(name, lhs, rhs, tol, True, 0.0, note, details)
    slack = tol - abs(lhs - rhs)
    if math.isnan(slack):
        slack = -math.inf
    return CheckResult(name, lhs, rhs, slack, slack >= 0, 0.0, note, details)
