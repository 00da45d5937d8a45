from __future__ import annotations

from types import SimpleNamespace

import numpy as np
import pytest

from octahedral.action import homothetic_bound, homothetic_segment
from octahedral.central_config import curly_g
from octahedral.errors import CollisionError, DomainError, SundmanFitError
from octahedral.symmetry import PeriodicOrbit, reconstruct_orbit
from octahedral.verify import (
    CHECKS,
    CheckResult,
    VerifyThresholds,
    alpha0,
    coercivity_constant,
    kepler_homothetic_action,
    path_length_bound,
    sundman_fit,
    verify_orbit,
)
from octahedral.verify.checks.sundman import check_sundman_collision_time
from octahedral.verify.context import COLLISION_SAMPLES, COLLISION_SEARCH, SUNDMAN_POINTS
from octahedral.verify.shooting import shoot_symmetric_orbit


# =========================
# Oracles
# =========================

def test_alpha0_values():
    assert alpha0(curly_g()) == pytest.approx(13.5555913, abs=1e-6)
    assert alpha0(1.0 / np.pi) == pytest.approx(3.0 / 2.0 ** (1.0 / 3.0), rel=1e-14)
    assert alpha0(1.0 / np.pi) == pytest.approx(2.3811, abs=1e-4)
    assert alpha0(8.0 * 1.7) == pytest.approx(4.0 * alpha0(1.7), rel=1e-14)


def test_alpha0_rejects_nonpositive_coupling():
    with pytest.raises(DomainError):
        alpha0(0.0)


@pytest.mark.parametrize("g", [0.5, 1.0, curly_g()])
@pytest.mark.parametrize("tau", [0.5, 2.0, 6.0])
def test_kepler_action_matches_closed_form(g, tau):
    assert kepler_homothetic_action(g, tau) == pytest.approx(alpha0(g) * tau ** (1.0 / 3.0), rel=1e-3)


def test_kepler_action_scales_with_period():
    g = 1.3
    assert kepler_homothetic_action(g, 8.0) == pytest.approx(2.0 * kepler_homothetic_action(g, 1.0), rel=1e-6)


def test_kepler_action_rejects_bad_input():
    with pytest.raises(DomainError):
        kepler_homothetic_action(1.0, 0.0)


def test_homothetic_bound_is_half_kepler_action_at_third_period():
    T = 6.0
    assert 2.0 * homothetic_bound(T) == pytest.approx(kepler_homothetic_action(curly_g(), T / 3.0), rel=1e-3)


def test_split_comparison_concavity():
    # α₀ t^{1/3} is concave, so splitting one arc into two never lowers the sum
    g = curly_g()
    for t1, t2 in [(0.5, 1.5), (1.0, 1.0), (0.1, 3.0)]:
        whole = alpha0(g) * (t1 + t2) ** (1.0 / 3.0)
        parts = alpha0(g) * (t1 ** (1.0 / 3.0) + t2 ** (1.0 / 3.0))
        assert parts > whole


# =========================
# Sundman power law
# =========================

def _two_sided(t_bar, x0, d_min=1e-7, d_max=1e-2, n=60, perturb=0.0):
    d = np.geomspace(d_min, d_max, n)
    times = np.concatenate([t_bar - d[::-1], t_bar + d])
    dd = np.abs(times - t_bar)
    return times, x0 * dd ** (2.0 / 3.0) * (1.0 + perturb * dd ** (2.0 / 3.0))


def test_sundman_exact_power_law():
    times, values = _two_sided(1.0, 0.7)
    fit = sundman_fit(times, values, 1.0, (5e-8, 2e-2), refine=False)
    assert fit.exponent == pytest.approx(2.0 / 3.0, abs=1e-10)
    assert fit.x0 == pytest.approx(0.7, rel=1e-9)
    assert fit.fit_residual < 1e-10
    assert fit.points == 120


def test_sundman_correction_term_absorbs_next_order():
    times, values = _two_sided(0.0, 0.7, perturb=0.3)
    plain = sundman_fit(times, values, 0.0, (1e-7, 1e-2), refine=False, correction=False)
    corrected = sundman_fit(times, values, 0.0, (1e-7, 1e-2), refine=False)
    assert abs(corrected.exponent - 2.0 / 3.0) < abs(plain.exponent - 2.0 / 3.0)
    assert corrected.exponent == pytest.approx(2.0 / 3.0, abs=1e-3)
    assert corrected.correction == pytest.approx(0.3, rel=0.05)


def test_sundman_refines_collision_time():
    times, values = _two_sided(2.0 + 3e-7, 0.7, d_min=1e-5)
    fit = sundman_fit(times, values, 2.0, (2e-5, 1e-2), refine_radius=1e-6)
    assert fit.t_bar == pytest.approx(2.0 + 3e-7, abs=1e-8)
    assert fit.exponent == pytest.approx(2.0 / 3.0, abs=1e-4)


def test_sundman_collision_time_from_symmetry_guess():
    T, offset = 6.0, 3e-7
    radius = COLLISION_SEARCH * T
    d = np.geomspace(COLLISION_SAMPLES[0] * T, COLLISION_SAMPLES[1] * T, SUNDMAN_POINTS)
    times = np.concatenate([T / 3.0 - d[::-1], T / 3.0 + d])
    dd = np.abs(times - (T / 3.0 + offset))
    values = 0.7 * dd ** (2.0 / 3.0) * (1.0 + 0.3 * dd ** (2.0 / 3.0))
    window = (COLLISION_SAMPLES[0] * T - 2.0 * radius, COLLISION_SAMPLES[1] * T + 2.0 * radius)
    fit = sundman_fit(times, values, T / 3.0, window, refine_radius=radius)
    assert fit.t_bar == pytest.approx(T / 3.0 + offset, abs=1e-9)


@pytest.mark.parametrize("offset, passed", [(1e-6, False), (1e-10, True)])
def test_sundman_collision_time_check(offset, passed):
    fits = [(SimpleNamespace(t_collision=2.0), SimpleNamespace(t_bar=2.0 + offset))]
    ctx = SimpleNamespace(collision_time_fits=lambda: fits)
    result = check_sundman_collision_time(ctx, VerifyThresholds())
    assert result.passed is passed
    assert result.value == pytest.approx(offset, rel=1e-4)


def test_sundman_needs_enough_points():
    times, values = _two_sided(0.0, 1.0, n=3)
    with pytest.raises(SundmanFitError):
        sundman_fit(times[:3], values[:3], 0.0, (1e-7, 1e-2), refine=False)


# =========================
# Coercivity
# =========================

def test_coercivity_constant():
    assert coercivity_constant() == pytest.approx(np.sqrt(3.0) / 2.0, abs=1e-12)


def test_length_bound_on_circle():
    theta = np.linspace(0.0, 2.0 * np.pi, 400)
    circle = np.column_stack([np.cos(theta), np.sin(theta), np.zeros_like(theta)])
    diag = path_length_bound(circle)
    assert diag.lhs == pytest.approx(2.0 * np.pi, rel=1e-4)
    assert diag.rhs == pytest.approx(np.sqrt(3.0) / 2.0)
    assert diag.holds


# =========================
# Thresholds and report shape
# =========================

def test_thresholds_from_mapping():
    th = VerifyThresholds.from_mapping({"symmetry": "1e-12", "stationarity_count": 10.0})
    assert th.symmetry == 1e-12
    assert th.stationarity_count == 10
    assert isinstance(th.stationarity_count, int)
    assert th.gradient == 1e-8


def test_thresholds_reject_unknown_key():
    with pytest.raises(DomainError):
        VerifyThresholds.from_mapping({"symmetry_tol": 1.0})


def test_check_result_dict():
    assert CheckResult("x", 1.0, 2.0, True).to_dict() == {"value": 1.0, "threshold": 2.0, "pass": True}


def test_check_registry_names():
    assert len(CHECKS) == 20
    assert {"symmetry_residual", "action_bound", "sundman_exponent", "collision_count"} <= set(CHECKS)


# =========================
# Verifier
# =========================

def test_homothetic_loop_rejected():
    with pytest.raises(CollisionError):
        verify_orbit(reconstruct_orbit(homothetic_segment(6.0, 32)))


@pytest.mark.slow
def test_converged_orbit_report(converged, converged_report):
    _, minimize_report, _ = converged
    report = converged_report
    assert set(report.checks) == set(CHECKS)
    for name in (
        "symmetry_residual",
        "start_constraint",
        "third_collision",
        "collision_samples",
        "monotonicity",
        "acceleration_sign",
        "gradient_norm",
        "coercivity",
        "energy_drift",
        "reintegrated_symmetry",
        "reversal_symmetry",
        "collision_count",
        "collision_times",
        "sundman_exponent",
        "sundman_collision_time",
        "natural_boundary",
        "passage_state",
    ):
        assert report.checks[name].passed, name
    assert report.action == pytest.approx(minimize_report.action, rel=1e-12)
    assert report.homothetic_bound == pytest.approx(homothetic_bound(6.0))
    assert report.energy < 0.0
    assert report.passed == (not report.failures)
    payload = report.to_dict()
    assert set(payload) == {"action", "gradient_inf_norm", "energy", "homothetic_bound", "period", "checks"}


@pytest.mark.slow
def test_symmetric_shooting_on_converged_orbit(converged):
    _, _, orbit = converged
    shot = shoot_symmetric_orbit(orbit)
    assert shot.residual <= 1e-10
    assert 0 < shot.iterations <= 60
    assert shot.w > 0.0
    assert shot.h == pytest.approx(orbit.energy, rel=1e-2)
    end = shot.state_at(orbit.period / 6.0)
    assert end.config.x == pytest.approx(end.config.y, abs=1e-9)


@pytest.mark.slow
def test_swapped_components_fail_symmetry(converged):
    _, _, orbit = converged
    positions = orbit.positions.copy()
    first = orbit.times < orbit.period / 3.0
    positions[first] = positions[first][:, [0, 2, 1]]
    swapped = PeriodicOrbit(orbit.period, orbit.times, positions, orbit.velocities, orbit.energy)
    report = verify_orbit(swapped, VerifyThresholds(stationarity_count=5))
    assert not report.checks["symmetry_residual"].passed
    assert not report.passed
