"""
Checks on the orbit re-integrated through its collisions.

The forward run covers [t_s, t_s + 4T/3], the backward run reaches below
−T/4, where t_s is the sample nearest T/12.
"""
from __future__ import annotations

import numpy as np

from ..context import OrbitContext
from ..thresholds import VerifyThresholds
from .base import CheckResult, at_most

SAMPLES = 601
_CYCLE = [2, 0, 1]
_SWAP = [0, 2, 1]


def check_reintegrated_symmetry(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    """X(t + T/3) = (z, x, y)(t) along one period of the re-integrated flow."""
    t_s, _ = ctx.start
    T = ctx.period
    t = np.linspace(t_s, t_s + T, SAMPLES)
    now = ctx.forward.positions_at(t)
    later = ctx.forward.positions_at(t + T / 3.0)
    value = float(np.max(np.abs(later - now[:, _CYCLE])))
    return at_most("reintegrated_symmetry", value, th.reintegrated_symmetry)


def check_reversal(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    """x(−t) = x(t), y(−t) = z(t), z(−t) = y(t) on [0, T/4] across the collision at 0."""
    t = np.linspace(0.0, ctx.period / 4.0, 201)
    ahead = ctx.positions_at(t)
    behind = ctx.positions_at(-t)
    value = float(np.max(np.abs(behind - ahead[:, _SWAP])))
    return at_most("reversal_symmetry", value, th.reversal)


def check_passage_state(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    """State at −t_s after backward continuation equals the swapped start, velocity reversed."""
    t_s, start = ctx.start
    expected = np.concatenate(
        [start.config.as_array()[_SWAP], -start.velocity_array()[_SWAP]]
    )
    value = float(np.max(np.abs(ctx.backward.state_vector(-t_s) - expected)))
    return at_most("passage_state", value, th.reversal)


def check_energy_drift(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    value = max(ctx.forward.energy_drift, ctx.backward.energy_drift)
    return at_most("energy_drift", value, th.energy_drift)


def check_natural_boundary(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    """ż(T/6) = 0, which the constrained minimization leaves free."""
    vz = ctx.state_vector(ctx.period / 6.0)[5]
    return at_most("natural_boundary", abs(vz), th.natural_boundary)


def check_collision_count(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    """Exactly three double collisions per period, on axes y, z, x in turn."""
    t_s, _ = ctx.start
    passages = [
        p for p in ctx.forward.passages if t_s <= p.t_collision < t_s + ctx.period
    ]
    axes = [p.axis for p in passages]
    return CheckResult("collision_count", len(passages), 3, axes == [1, 2, 0])


def check_collision_times(ctx: OrbitContext, th: VerifyThresholds) -> CheckResult:
    """Collisions of the re-integrated flow fall on multiples of T/3."""
    third = ctx.period / 3.0
    times = np.array(
        [p.t_collision for p in ctx.forward.passages + ctx.backward.passages]
    )
    if times.size == 0:
        return CheckResult("collision_times", float("inf"), th.collision_time, False)
    value = float(np.max(np.abs(times - third * np.round(times / third))))
    return at_most("collision_times", value, th.collision_time)
