from __future__ import annotations

import numpy as np
import pytest

from octahedral.action import MinimizeOptions, minimize, seeded_segment
from octahedral.symmetry import reconstruct_orbit

PERIOD = 6.0
COARSE_NODES = 96
GRADING = 1.5


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def converged():
    """A minimizer on a coarse mesh: (segment, report, orbit)."""
    start = seeded_segment(PERIOD, COARSE_NODES, GRADING, seed=0)
    options = MinimizeOptions(grad_tol=1e-8, mesh_schedule=(24, 48))
    segment, report = minimize(start, options, GRADING)
    return segment, report, reconstruct_orbit(segment)


@pytest.fixture(scope="session")
def converged_report(converged):
    from octahedral.verify import verify_orbit

    _, _, orbit = converged
    return verify_orbit(orbit)
