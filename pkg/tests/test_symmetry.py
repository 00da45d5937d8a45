from __future__ import annotations

import numpy as np
import pytest

from octahedral.action import QuadratureScheme, homothetic_segment
from octahedral.errors import CollisionError, ConstraintError, GridError
from octahedral.symmetry import (
    ELEMENTS,
    FundamentalSegment,
    PeriodicOrbit,
    apply_group_element,
    compose,
    multiplication_table,
    periodic_derivative,
    project_constraints,
    reconstruct_orbit,
    restrict_to_segment,
    symmetrize,
    symmetry_residual,
    time_index_map,
)


def _segment(n=16, period=6.0):
    """A feasible non-homothetic segment on the graded mesh."""
    q = QuadratureScheme(period, n)
    tau = q.node_times / (period / 6.0)
    x = tau ** (2.0 / 3.0)
    y = 0.8 + 0.2 * tau
    z = 0.8 + 0.1 * np.sin(np.pi * tau / 2.0) ** 2
    nodes = np.column_stack([x, y, z])
    return FundamentalSegment(period, q.node_times, nodes)


def test_group_table():
    g, h, e = ELEMENTS["g"], ELEMENTS["h"], ELEMENTS["e"]
    assert compose(g, compose(g, g)) == e
    assert compose(h, h) == e
    hg = compose(h, g)
    assert compose(hg, hg) == e
    # h g h = g²
    assert compose(h, compose(g, h)) == ELEMENTS["g2"]
    table = multiplication_table()
    assert len(table) == 36
    for a in ELEMENTS:
        row = {table[(a, b)] for b in ELEMENTS}
        assert row == set(ELEMENTS)


def test_reconstruct_sample_count_and_residual():
    seg = _segment()
    loop = reconstruct_orbit(seg)
    assert len(loop) == 6 * seg.n_cells
    assert symmetry_residual(loop) < 1e-14


def test_reconstruct_values_at_third_period():
    seg = _segment()
    loop = reconstruct_orbit(seg)
    x0, y0, z0 = seg.nodes[0]
    i = int(np.argmin(np.abs(loop.times - 2.0)))
    assert loop.times[i] == pytest.approx(2.0)
    # X(T/3) = (y0, x0, z0) from the mirror step
    np.testing.assert_array_equal(loop.positions[i], [y0, x0, z0])
    assert loop.positions[i, 1] == 0.0


def test_reconstruct_collision_rows_have_nan_velocity():
    loop = reconstruct_orbit(_segment())
    mask = loop.collision_mask()
    assert mask.sum() == 3
    assert np.isnan(loop.velocities[mask]).any(axis=1).all()
    assert np.isfinite(loop.energy)


def test_reconstruct_rejects_bad_endpoint():
    seg = _segment()
    X = seg.nodes.copy()
    X[0, 1] += 1e-3
    with pytest.raises(ConstraintError):
        reconstruct_orbit(seg.with_nodes(X))


def test_reconstruct_rejects_interior_collision():
    seg = _segment()
    X = seg.nodes.copy()
    X[5, 2] = 0.0
    with pytest.raises(CollisionError):
        reconstruct_orbit(seg.with_nodes(X))


def test_restrict_inverts_reconstruct():
    seg = _segment()
    back = restrict_to_segment(reconstruct_orbit(seg))
    np.testing.assert_array_equal(back.nodes, seg.nodes)
    np.testing.assert_allclose(back.node_times, seg.node_times, rtol=0, atol=1e-15)


def test_apply_generator_matches_relabeled_loop():
    loop = reconstruct_orbit(_segment())
    image = apply_group_element(ELEMENTS["hg"], loop)
    np.testing.assert_allclose(image.positions, loop.positions, atol=1e-15)


def test_time_index_map_rejects_open_grid():
    times = np.linspace(0.0, 6.0, 10, endpoint=False) + 0.1
    with pytest.raises(GridError):
        time_index_map(times, 6.0, ELEMENTS["h"])


def test_loop_without_third_period_relabeling_is_not_symmetric():
    period = 6.0
    times = np.linspace(0.0, period, 60, endpoint=False)
    v = 0.1 + np.sin(np.pi * times / period) ** 2
    positions = np.outer(v, np.ones(3)) / np.sqrt(3.0)
    velocities = periodic_derivative(times, positions, period)
    loop = PeriodicOrbit(period, times, positions, velocities)
    assert symmetry_residual(loop) > 1e-3


def test_symmetrize_restores_symmetry():
    loop = reconstruct_orbit(_segment())
    noisy = loop.positions * (1.0 + 1e-6 * np.cos(np.arange(len(loop)))[:, None])
    perturbed = PeriodicOrbit(loop.period, loop.times, noisy, loop.velocities)
    assert symmetry_residual(perturbed) > 1e-8
    assert symmetry_residual(symmetrize(perturbed)) < 1e-14


def test_periodic_derivative_of_sine():
    period = 2.0 * np.pi
    u = np.linspace(0.0, 1.0, 400, endpoint=False)
    times = period * (u + 0.2 * u * (1 - u))
    d = periodic_derivative(times, np.sin(times), period)
    np.testing.assert_allclose(d, np.cos(times), atol=1e-3)


def test_project_constraints_examples():
    q = QuadratureScheme(6.0, 2)
    seg = FundamentalSegment(6.0, q.node_times, [[0.3, 0.5, 0.7], [1.0, 1.0, 1.0], [2.0, 1.0, 3.0]])
    out = project_constraints(seg).nodes
    np.testing.assert_array_equal(out[0], [0.0, 0.6, 0.6])
    np.testing.assert_array_equal(out[-1], [1.5, 1.5, 3.0])

    seg = FundamentalSegment(6.0, q.node_times, [[0.0, 1.0, 1.0], [1.0, -0.1, 1.0], [1.0, 1.0, 1.0]])
    assert project_constraints(seg).nodes[1, 1] == pytest.approx(1e-12)


def test_project_constraints_is_idempotent():
    once = project_constraints(_segment())
    twice = project_constraints(once)
    np.testing.assert_array_equal(once.nodes, twice.nodes)


def test_homothetic_loop_is_symmetric_but_has_total_collision():
    loop = reconstruct_orbit(homothetic_segment(6.0, 32))
    assert symmetry_residual(loop) == 0.0
    assert np.all(loop.positions[0] == 0.0)
