from __future__ import annotations

from ..coercivity import coercivity_diagnostic
from ..context import OrbitContext
from ..thresholds import VerifyThresholds
from .base import CheckResult


def check_coercivity(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    diag = coercivity_diagnostic(ctx.orbit)
    return CheckResult("coercivity", diag.lhs, diag.rhs, diag.holds)
