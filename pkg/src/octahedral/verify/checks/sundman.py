"""Sundman power law at the three collisions of one period."""
from __future__ import annotations

from ..context import OrbitContext
from ..thresholds import VerifyThresholds
from .base import CheckResult, at_most

SUNDMAN_EXPONENT = 2.0 / 3.0


def check_sundman_exponent(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    fits = ctx.sundman_fits(th.sundman_window)
    value = max(abs(fit.exponent - SUNDMAN_EXPONENT) for _, fit in fits)
    return at_most("sundman_exponent", value, th.sundman_exponent)


def check_sundman_collision_time(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    """Power-law t̄, searched around kT/3, against the collision time of the regularized passage."""
    fits = ctx.collision_time_fits()
    value = max(abs(fit.t_bar - passage.t_collision) for passage, fit in fits)
    return at_most("sundman_collision_time", value, th.sundman_collision_time)
