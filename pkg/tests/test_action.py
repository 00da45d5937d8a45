from __future__ import annotations

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from octahedral.action import (
    MinimizeOptions,
    QuadratureScheme,
    action_gradient,
    alpha0,
    discrete_eom_residual,
    discretized_action,
    full_gradient,
    homothetic_bound,
    homothetic_profile,
    homothetic_segment,
    minimize,
    multistart,
    refine_segment,
    seeded_segment,
    split_homothetic_action,
    stationarity_probe,
)
from octahedral.action.functional import pack, reduced_gradient, unpack
from octahedral.action.homothetic import eccentric_anomaly
from octahedral.action.lbfgs import minimize_projected
from octahedral.central_config import curly_g
from octahedral.dynamics import potential_gradients
from octahedral.errors import CollisionError, ConstraintError, DomainError
from octahedral.symmetry import FundamentalSegment

U_UNIT = 2.4963203


def _segment(n=16, period=6.0):
    q = QuadratureScheme(period, n)
    tau = q.node_times / (period / 6.0)
    nodes = np.column_stack(
        [0.9 * tau ** (2.0 / 3.0), 0.8 + 0.1 * tau, 0.8 + 0.05 * np.sin(np.pi * tau / 2.0)]
    )
    return FundamentalSegment(period, q.node_times, nodes), q


# =========================
# Mesh and quadrature
# =========================

def test_quadrature_mesh():
    q = QuadratureScheme(6.0, 8, 1.5)
    assert q.node_times[0] == 0.0
    assert q.node_times[-1] == 1.0
    assert q.node_times[1] == pytest.approx((1.0 / 8.0) ** 1.5)
    assert q.cell_rules[0] == "midpoint"
    assert set(q.cell_rules[1:]) == {"trapezoid"}
    np.testing.assert_allclose(q.graded_parameter(q.node_times), np.arange(9) / 8.0, atol=1e-15)


@pytest.mark.parametrize("kwargs", [{"period": 0.0}, {"n_cells": 0}, {"grading": 0.5}])
def test_quadrature_rejects_bad_parameters(kwargs):
    args = {"period": 6.0, "n_cells": 4, "grading": 1.5, **kwargs}
    with pytest.raises(DomainError):
        QuadratureScheme(**args)


# =========================
# Discretized action
# =========================

def test_constant_path_action():
    q = QuadratureScheme(6.0, 4)
    seg = FundamentalSegment(6.0, q.node_times, np.ones((5, 3)))
    assert discretized_action(seg, q) == pytest.approx(U_UNIT, abs=1e-7)


def test_action_rejects_interior_collision():
    seg, q = _segment()
    X = seg.nodes.copy()
    X[3, 1] = 0.0
    with pytest.raises(CollisionError):
        discretized_action(seg.with_nodes(X), q)


def test_action_rejects_mesh_mismatch():
    seg, _ = _segment(16)
    with pytest.raises(DomainError):
        discretized_action(seg, QuadratureScheme(6.0, 8))


def test_reduced_gradient_matches_finite_differences():
    seg, q = _segment()
    r = pack(seg)
    grad = reduced_gradient(seg, q)
    fd = np.empty_like(r)
    for i in range(r.size):
        h = 1e-6 * max(1.0, abs(r[i]))
        up, down = r.copy(), r.copy()
        up[i] += h
        down[i] -= h
        fd[i] = (discretized_action(unpack(up, seg), q) - discretized_action(unpack(down, seg), q)) / (2 * h)
    assert np.linalg.norm(fd - grad) <= 1e-6 * np.linalg.norm(grad)


def test_reduced_gradient_on_random_segments(rng):
    template, q = _segment(8)
    for _ in range(100):
        r = rng.uniform(0.2, 1.5, size=pack(template).size)
        seg = unpack(r, template)
        grad = reduced_gradient(seg, q)
        fd = np.empty_like(r)
        for i in range(r.size):
            h = 1e-6 * max(1.0, abs(r[i]))
            up, down = r.copy(), r.copy()
            up[i] += h
            down[i] -= h
            fd[i] = (discretized_action(unpack(up, seg), q) - discretized_action(unpack(down, seg), q)) / (2 * h)
        assert np.linalg.norm(fd - grad) <= 1e-6 * np.linalg.norm(grad)


def test_discrete_euler_lagrange_solution_has_zero_interior_gradient():
    q = QuadratureScheme(6.0, 32)
    t = q.node_times
    dt = np.diff(t)
    X = np.empty((33, 3))
    X[0] = (2.0, 2.2, 1.8)
    X[1] = X[0] + dt[0] * np.array([0.1, -0.05, 0.02])
    for j in range(1, 32):
        if j == 1:
            force = 0.5 * dt[0] * potential_gradients(0.5 * (X[0] + X[1])) + 0.5 * dt[1] * potential_gradients(X[1])
        else:
            force = 0.5 * (dt[j - 1] + dt[j]) * potential_gradients(X[j])
        X[j + 1] = X[j] + dt[j] * ((X[j] - X[j - 1]) / dt[j - 1] + force)
    seg = FundamentalSegment(6.0, t, X)
    assert np.max(np.abs(full_gradient(seg, q)[1:-1])) < 1e-8
    assert discrete_eom_residual(seg) < 1e-8


def test_action_quadrature_converges_at_second_order():
    def action(n):
        q = QuadratureScheme(6.0, n)
        tau = q.node_times
        nodes = np.column_stack(
            [1.0 + 0.3 * np.sin(np.pi * tau), 1.2 + 0.2 * tau**2, 0.9 + 0.1 * np.cos(tau)]
        )
        return discretized_action(FundamentalSegment(6.0, tau, nodes), q)

    a1, a2, a3 = action(128), action(256), action(512)
    order = np.log2(abs(a1 - a2) / abs(a2 - a3))
    assert order >= 1.9


def test_pack_unpack_inverse():
    seg, _ = _segment()
    np.testing.assert_array_equal(unpack(pack(seg), seg).nodes, seg.nodes)


def test_projected_gradient_respects_constraints():
    seg, q = _segment()
    full = full_gradient(seg, q)
    g = action_gradient(seg, q)
    assert g[0, 0] == 0.0
    assert g[0, 1] == g[0, 2]
    assert g[-1, 0] == g[-1, 1]
    np.testing.assert_array_equal(g[1:-1], full[1:-1])


# =========================
# Homothetic comparison path
# =========================

def test_homothetic_bound_value():
    assert homothetic_bound(6.0) == pytest.approx(8.5394874, abs=1e-6)
    assert homothetic_bound(48.0) == pytest.approx(2.0 * homothetic_bound(6.0), rel=1e-14)


def test_split_action_never_below_bound():
    bound = homothetic_bound(6.0)
    assert split_homothetic_action(6.0, 0.0) == pytest.approx(bound, rel=1e-14)
    for t_bar in np.linspace(0.05, 0.95, 10):
        assert split_homothetic_action(6.0, t_bar) > bound
    with pytest.raises(DomainError):
        split_homothetic_action(6.0, 1.5)


def test_eccentric_anomaly_solves_kepler_equation():
    mean = np.linspace(0.0, np.pi, 101)
    eta = eccentric_anomaly(mean)
    np.testing.assert_allclose(eta - np.sin(eta), mean, atol=1e-13)
    assert eta[-1] == pytest.approx(np.pi)


def test_homothetic_profile_solves_radial_kepler():
    t = np.linspace(0.2, 0.9, 8)
    dt = 1e-4
    v = homothetic_profile(t, 6.0)
    vdd = (homothetic_profile(t + dt, 6.0) - 2 * v + homothetic_profile(t - dt, 6.0)) / dt**2
    np.testing.assert_allclose(vdd, -curly_g() / v**2, rtol=1e-5)


def test_homothetic_profile_ejection_asymptotics():
    t = np.array([1e-7, 1e-6])
    ratio = homothetic_profile(t, 6.0) / t ** (2.0 / 3.0)
    np.testing.assert_allclose(ratio, (4.5 * curly_g()) ** (1.0 / 3.0), rtol=1e-3)


def test_homothetic_profile_apex_at_sixth_period():
    times = np.linspace(0.0, 1.0, 50)
    v = homothetic_profile(times, 6.0)
    assert v[0] == 0.0
    assert np.all(np.diff(v) > 0.0)
    assert np.argmax(v) == 49


def test_discretized_homothetic_action_near_bound():
    seg = homothetic_segment(6.0, 2048, 1.5)
    q = QuadratureScheme(6.0, 2048, 1.5)
    assert discretized_action(seg, q) == pytest.approx(homothetic_bound(6.0), rel=1e-2)


def test_alpha0_reexport_consistent():
    g = curly_g()
    assert homothetic_bound(6.0) == pytest.approx(alpha0(g) / 2.0 ** (2.0 / 3.0), rel=1e-15)


def test_homothetic_profile_matches_numerical_kepler():
    g = curly_g()
    a = (g * (6.0 / (6.0 * np.pi)) ** 2) ** (1.0 / 3.0)
    times = np.array([0.9, 0.6, 0.3, 0.1])
    sol = solve_ivp(
        lambda t, y: [y[1], -g / y[0] ** 2],
        (1.0, 0.1),
        [2.0 * a, 0.0],
        method="DOP853",
        t_eval=times,
        rtol=1e-13,
        atol=1e-14,
    )
    assert sol.success
    np.testing.assert_allclose(homothetic_profile(times, 6.0), sol.y[0], rtol=1e-8)


@pytest.mark.parametrize("n_cells", [768, 1024, 2048])
def test_homothetic_segment_on_fine_meshes(n_cells):
    seg = homothetic_segment(6.0, n_cells, 1.5)
    assert np.all(np.isfinite(seg.nodes))
    seg.validate()


def test_seeded_segment_on_fine_mesh():
    seg = seeded_segment(6.0, 1024, seed=3)
    assert np.all(np.isfinite(seg.nodes))
    seg.validate()


# =========================
# Minimizer
# =========================

def test_infinite_tolerance_returns_seed():
    seed = seeded_segment(6.0, 32, seed=4)
    seg, report = minimize(seed, MinimizeOptions(grad_tol=np.inf, mesh_schedule=()))
    assert seg is seed
    assert report.iterations == 0
    assert report.action == pytest.approx(discretized_action(seed, QuadratureScheme(6.0, 32)))


def test_seed_must_match_grading():
    seed = seeded_segment(6.0, 32, grading=2.0)
    with pytest.raises(ConstraintError):
        minimize(seed, MinimizeOptions(mesh_schedule=()), grading=1.5)


def test_options_validation():
    with pytest.raises(DomainError):
        MinimizeOptions(grad_tol=0.0)
    with pytest.raises(DomainError):
        MinimizeOptions(max_iters=-1)


def test_projected_lbfgs_on_bounded_quadratic():
    center = np.array([1.0, -2.0, 0.5])

    def fun(x):
        d = x - center
        return float(d @ d), 2.0 * d

    result = minimize_projected(fun, np.array([3.0, 3.0, 3.0]), np.zeros(3), 1e-10, 200)
    assert result.reason == "converged"
    np.testing.assert_allclose(result.x, [1.0, 0.0, 0.5], atol=1e-8)
    assert result.f == pytest.approx(4.0, abs=1e-12)
    assert np.all(np.diff(result.history) <= 0.0)


def test_multistart_rejects_empty_seeds():
    with pytest.raises(DomainError):
        multistart([], 6.0, 16)


def test_minimize_decreases_action_and_keeps_constraints():
    seed = seeded_segment(6.0, 32, seed=1)
    q = QuadratureScheme(6.0, 32)
    seg, report = minimize(seed, MinimizeOptions(grad_tol=1e-7, mesh_schedule=(), max_iters=5000))
    assert report.action < discretized_action(seed, q)
    assert report.iterations > 0
    assert all(v == 0.0 for v in report.constraint_residuals.values())
    assert np.all(np.diff(report.action_history) <= 0.0)
    assert report.mesh_levels == [32]
    seg.validate()


def test_refine_segment_keeps_class():
    seg, _ = _segment(16)
    fine = refine_segment(seg, 40)
    assert fine.n_cells == 40
    fine.validate()
    np.testing.assert_allclose(fine.nodes[-1, :2], seg.nodes[-1, :2], rtol=1e-12)


@pytest.mark.slow
def test_converged_minimizer_beats_homothetic_path(converged):
    seg, report, _ = converged
    q = QuadratureScheme(seg.period, seg.n_cells)
    assert report.terminated_reason == "converged"
    assert report.gradient_inf_norm < 1e-8
    assert report.mesh_levels == [24, 48, 96]
    assert report.action < discretized_action(homothetic_segment(seg.period, seg.n_cells), q)
    assert discrete_eom_residual(seg, t_min=0.01 * seg.period) <= 1e-3
    assert stationarity_probe(seg, q, np.random.default_rng(2), count=50) <= 1e-9


@pytest.mark.slow
def test_minimizer_below_bound_on_fine_mesh():
    seed = seeded_segment(6.0, 256, seed=0)
    _, report = minimize(seed, MinimizeOptions(grad_tol=1e-8, mesh_schedule=(64, 128)))
    assert report.action < homothetic_bound(6.0)


@pytest.mark.slow
def test_multistart_agrees_across_seeds():
    options = MinimizeOptions(grad_tol=1e-8, mesh_schedule=(16,))
    result = multistart([0, 1], 6.0, 48, options=options)
    assert result.seeds == [0, 1]
    assert len(result.runs) == 2
    assert result.relative_spread < 1e-6
    assert result.best[1].action == min(r.action for _, r in result.runs)
