"""The segment's action must lie strictly below the homothetic comparison value."""
from __future__ import annotations

from octahedral.action.functional import discretized_action
from octahedral.action.homothetic import homothetic_bound

from ..context import OrbitContext
from ..thresholds import VerifyThresholds
from .base import CheckResult


def check_action_bound(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    action = discretized_action(ctx.segment, ctx.quadrature)
    bound = homothetic_bound(ctx.period)
    return CheckResult("action_bound", action, bound, action < bound)
