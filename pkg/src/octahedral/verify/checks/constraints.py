"""Endpoint constraints read off the samples: y(0) = z(0) and y(T/3) = 0."""
from __future__ import annotations

import numpy as np

from octahedral.errors import GridError

from ..context import OrbitContext
from ..thresholds import VerifyThresholds
from .base import CheckResult, at_most


def _sample_index(ctx: OrbitContext, t: float) -> int:
    i = int(np.argmin(np.abs(ctx.orbit.times - t)))
    if abs(ctx.orbit.times[i] - t) > 1e-9 * ctx.period:
        raise GridError(f"no sample at t = {t}")
    return i


def check_start_constraint(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    y, z = ctx.orbit.positions[_sample_index(ctx, 0.0), 1:]
    return at_most("start_constraint", abs(y - z), th.constraint)


def check_third_collision(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    y = ctx.orbit.positions[_sample_index(ctx, ctx.period / 3.0), 1]
    return at_most("third_collision", abs(y), th.constraint)
