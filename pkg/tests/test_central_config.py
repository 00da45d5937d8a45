from __future__ import annotations

import numpy as np
import pytest

from octahedral.central_config import (
    cc_residual,
    cc_solve,
    curly_g,
    scale_invariant_potential,
)
from octahedral.dynamics import Configuration
from octahedral.errors import CentralConfigError, SingularityError

LAMBDA_UNIT = -(1.0 + 2.0**2.5) / 8.0
OCTAHEDRON = np.full(3, 1.0 / np.sqrt(3.0))


def test_residual_vanishes_at_unit_point():
    np.testing.assert_allclose(cc_residual(Configuration(1.0, 1.0, 1.0), LAMBDA_UNIT), 0.0, atol=1e-15)


def test_residual_scale_covariance():
    for c in (0.5, 2.0, 7.0):
        lam = LAMBDA_UNIT / c**3
        np.testing.assert_allclose(cc_residual(Configuration(c, c, c), lam), 0.0, atol=1e-14)


def test_residual_singular_at_collision():
    with pytest.raises(SingularityError):
        cc_residual(Configuration(0.0, 1.0, 1.0), -1.0)


def test_solve_from_asymmetric_start():
    sol = cc_solve(Configuration(0.4, 0.7, 0.6))
    np.testing.assert_allclose(sol.config.as_array(), OCTAHEDRON, atol=1e-12)
    assert sol.residual_norm <= 1e-12
    assert sol.lam == pytest.approx(LAMBDA_UNIT * 3.0**1.5, rel=1e-10)


def test_solve_from_random_starts(rng):
    for start in rng.uniform(0.2, 1.0, size=(100, 3)):
        sol = cc_solve(Configuration(*start))
        np.testing.assert_allclose(sol.config.as_array(), OCTAHEDRON, atol=1e-10)


def test_solve_rejects_collision_start():
    with pytest.raises(CentralConfigError):
        cc_solve(Configuration(0.0, 0.5, 0.5))


def test_curly_g():
    assert curly_g() == pytest.approx(4.323753667, abs=1e-8)
    assert curly_g() == pytest.approx(3.0 * np.sqrt(3.0) * (1.0 / np.sqrt(2.0) + 0.125), rel=1e-15)


def test_scale_invariant_potential_minimized_at_octahedron(rng):
    g = curly_g()
    for p in rng.uniform(0.05, 3.0, size=(200, 3)):
        assert scale_invariant_potential(Configuration(*p)) >= g - 1e-12


def test_larger_coordinate_has_smaller_residual():
    grid = np.linspace(0.05, 2.0, 50)
    x, y, z = np.meshgrid(grid, grid, grid, indexing="ij")
    r_xz = (x * x + z * z) ** -1.5
    r_yz = (y * y + z * z) ** -1.5
    diff = 1.0 / (8.0 * x**3) - 1.0 / (8.0 * y**3) + r_xz - r_yz
    above = x > y
    assert np.all(diff[above] < 0.0)
    # spot-check the vectorized form against the solver's residual
    for i, j, k in [(40, 10, 3), (20, 5, 49), (49, 48, 0)]:
        c = Configuration(grid[i], grid[j], grid[k])
        f = cc_residual(c, 0.0)
        assert f[0] - f[1] == pytest.approx(diff[i, j, k], rel=1e-9)
