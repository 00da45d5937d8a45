"""
Fundamental segment and full-period orbit containers.

A fundamental segment is the path on [0, T/6] with

    x(0) = 0,   y(0) = z(0),   x(T/6) = y(T/6)

from which the dihedral symmetry rebuilds the whole loop.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from octahedral.errors import CollisionError, ConstraintError

# Lower bound applied to every coordinate while optimizing.
POSITIVITY_FLOOR = 1e-12

# Slack for endpoint equalities read back from files.
ENDPOINT_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class FundamentalSegment:
    """Nodes X_0..X_N on the graded mesh t_0 = 0 < … < t_N = T/6."""

    period: float
    node_times: np.ndarray
    nodes: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.node_times, dtype=float)
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes.ndim != 2 or nodes.shape[1] != 3 or nodes.shape[0] != times.shape[0]:
            raise ConstraintError(
                f"nodes shape {nodes.shape} does not match {times.shape[0]} node times"
            )
        object.__setattr__(self, "node_times", times)
        object.__setattr__(self, "nodes", nodes)

    @property
    def n_cells(self) -> int:
        return self.nodes.shape[0] - 1

    def with_nodes(self, nodes: np.ndarray) -> "FundamentalSegment":
        return FundamentalSegment(self.period, self.node_times, np.array(nodes, dtype=float))

    def validate(self) -> None:
        """Raise unless the segment belongs to the constrained loop class."""
        t, X = self.node_times, self.nodes
        scale = max(1.0, float(np.max(np.abs(X))))
        if t[0] != 0.0 or abs(t[-1] - self.period / 6.0) > 1e-12 * self.period:
            raise ConstraintError("node times must run from 0 to T/6")
        if np.any(np.diff(t) <= 0.0):
            raise ConstraintError("node times must be strictly increasing")
        if np.any(X < 0.0):
            raise ConstraintError("segment leaves the cone S")
        if abs(X[0, 0]) > ENDPOINT_TOLERANCE * scale:
            raise ConstraintError(f"x(0) = {X[0, 0]!r}, expected 0")
        if abs(X[0, 1] - X[0, 2]) > ENDPOINT_TOLERANCE * scale:
            raise ConstraintError(f"y(0) = {X[0, 1]!r} differs from z(0) = {X[0, 2]!r}")
        if abs(X[-1, 0] - X[-1, 1]) > ENDPOINT_TOLERANCE * scale:
            raise ConstraintError(f"x(T/6) = {X[-1, 0]!r} differs from y(T/6) = {X[-1, 1]!r}")
        if np.any(np.min(X[1:], axis=1) <= 0.0):
            raise CollisionError("extra collision inside the fundamental segment")


@dataclass(frozen=True, eq=False)
class PeriodicOrbit:
    """Samples of a full period on [0, T); ``energy`` is the orbit's total energy h."""

    period: float
    times: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    energy: float = field(default=float("nan"))

    def __post_init__(self):
        for name in ("times", "positions", "velocities"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))

    def __len__(self) -> int:
        return self.times.shape[0]

    def collision_mask(self) -> np.ndarray:
        return np.min(self.positions, axis=1) <= 0.0


def project_constraints(seg: FundamentalSegment, floor: float = POSITIVITY_FLOOR) -> FundamentalSegment:
    """
    Map a segment onto the constrained class: clamp to the floor, average
    y,z at node 0 and x,y at node N, then pin x(0) = 0.
    """
    X = np.maximum(np.array(seg.nodes, dtype=float), floor)
    yz = 0.5 * (X[0, 1] + X[0, 2])
    X[0, 1] = X[0, 2] = yz
    xy = 0.5 * (X[-1, 0] + X[-1, 1])
    X[-1, 0] = X[-1, 1] = xy
    X[0, 0] = 0.0
    return seg.with_nodes(X)
