"""Collision structure of the samples: double collisions only, at 0, T/3 and 2T/3."""
from __future__ import annotations

import numpy as np

from ..context import OrbitContext
from ..thresholds import VerifyThresholds
from .base import CheckResult


def check_collision_samples(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    """
    value is the smallest second-smallest coordinate over all samples; it
    must stay above the separation threshold and the collision samples must
    sit exactly at the three expected times.
    """
    orbit = ctx.orbit
    ordered = np.sort(orbit.positions, axis=1)
    separation = float(np.min(ordered[:, 1]))
    hits = orbit.times[orbit.collision_mask()]
    expected = np.array([0.0, 1.0, 2.0]) * ctx.period / 3.0
    placed = hits.size == 3 and np.allclose(hits, expected, rtol=0.0, atol=1e-9 * ctx.period)
    return CheckResult(
        "collision_samples",
        separation,
        th.collision_separation,
        bool(placed and separation > th.collision_separation),
    )
