"""
x increases on [0, T/2] and decreases on [T/2, T]; ẍ = ∂U/∂x < 0 inside S.
"""
from __future__ import annotations

import numpy as np

from octahedral.dynamics.potential import potential_gradients

from ..context import OrbitContext
from ..thresholds import VerifyThresholds
from .base import CheckResult


def check_monotonicity(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    t = ctx.orbit.times
    x = ctx.orbit.positions[:, 0]
    half = ctx.period / 2.0
    rising = t <= half * (1.0 + 1e-12)
    falling = t >= half * (1.0 - 1e-12)
    x_falling = np.append(x[falling], x[0])
    violations = int(np.count_nonzero(np.diff(x[rising]) <= -th.monotonicity))
    violations += int(np.count_nonzero(np.diff(x_falling) >= th.monotonicity))
    return CheckResult("monotonicity", violations, 0, violations == 0)


def check_acceleration_sign(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    interior = ~ctx.orbit.collision_mask()
    ax = potential_gradients(ctx.orbit.positions[interior])[:, 0]
    violations = int(np.count_nonzero(ax >= 0.0))
    return CheckResult("acceleration_sign", violations, 0, violations == 0)
