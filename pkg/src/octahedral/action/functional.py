"""
Discretized action on the fundamental segment and its exact gradient.

Nodes are joined piecewise linearly, so the kinetic part is exact:

    Σ |X_{i+1} − X_i|² / (2 Δt_i)

The potential part uses the midpoint rule on the first cell and the
trapezoid rule on the others.
"""
from __future__ import annotations

import numpy as np

from octahedral.dynamics.potential import potential_gradients, potential_values
from octahedral.errors import CollisionError, DomainError
from octahedral.symmetry.segment import FundamentalSegment

from .quadrature import QuadratureScheme


def _checked(seg: FundamentalSegment, q: QuadratureScheme):
    if seg.n_cells != q.n_cells:
        raise DomainError(f"segment has {seg.n_cells} cells, scheme has {q.n_cells}")
    X = seg.nodes
    if np.any(X < 0.0):
        raise DomainError("segment leaves the cone S")
    if np.any(np.min(X[1:], axis=1) <= 0.0):
        raise CollisionError("collision at an interior node")
    return X, np.diff(seg.node_times)


def _trapezoid_weights(dt: np.ndarray) -> np.ndarray:
    """Weight of each node 1..N in the trapezoid sum."""
    w = np.zeros(dt.size + 1)
    w[1:-1] += 0.5 * dt[1:]
    w[2:] += 0.5 * dt[1:]
    return w


def discretized_action(seg: FundamentalSegment, q: QuadratureScheme) -> float:
    X, dt = _checked(seg, q)
    D = np.diff(X, axis=0)
    kinetic = np.sum(np.sum(D * D, axis=1) / (2.0 * dt))
    mid = 0.5 * (X[0] + X[1])
    u = potential_values(X[1:])
    potential = dt[0] * float(potential_values(mid))
    potential += np.sum(0.5 * dt[1:] * (u[:-1] + u[1:]))
    return float(kinetic + potential)


def full_gradient(seg: FundamentalSegment, q: QuadratureScheme) -> np.ndarray:
    """∂A/∂X_j for every node coordinate, ignoring the constraints."""
    X, dt = _checked(seg, q)
    D = np.diff(X, axis=0) / dt[:, None]
    g = np.zeros_like(X)
    g[:-1] -= D
    g[1:] += D
    mid_grad = potential_gradients(0.5 * (X[0] + X[1]))
    g[0] += 0.5 * dt[0] * mid_grad
    g[1] += 0.5 * dt[0] * mid_grad
    w = _trapezoid_weights(dt)
    g[1:] += w[1:, None] * potential_gradients(X[1:])
    return g


def action_gradient(seg: FundamentalSegment, q: QuadratureScheme) -> np.ndarray:
    """
    Gradient of discretized_action, projected onto the tangent space of the
    endpoint constraints x(0) = 0, y(0) = z(0) and x(T/6) = y(T/6).

    Returns:
        (N+1, 3) array of per-node gradient vectors.
    """
    g = full_gradient(seg, q)
    yz = 0.5 * (g[0, 1] + g[0, 2])
    g[0] = (0.0, yz, yz)
    xy = 0.5 * (g[-1, 0] + g[-1, 1])
    g[-1, 0] = g[-1, 1] = xy
    return g


# Reduced coordinates: [w, X_1 … X_{N−1}, m, z_N] with X_0 = (0, w, w), X_N = (m, m, z_N).

def pack(seg: FundamentalSegment) -> np.ndarray:
    X = seg.nodes
    return np.concatenate([[X[0, 1]], X[1:-1].ravel(), [X[-1, 0], X[-1, 2]]])


def unpack(r: np.ndarray, template: FundamentalSegment) -> FundamentalSegment:
    n = template.n_cells
    X = np.empty((n + 1, 3))
    X[0] = (0.0, r[0], r[0])
    X[1:-1] = r[1:-2].reshape(n - 1, 3)
    X[-1] = (r[-2], r[-2], r[-1])
    return template.with_nodes(X)


def reduced_gradient(seg: FundamentalSegment, q: QuadratureScheme) -> np.ndarray:
    g = full_gradient(seg, q)
    return np.concatenate(
        [[g[0, 1] + g[0, 2]], g[1:-1].ravel(), [g[-1, 0] + g[-1, 1], g[-1, 2]]]
    )


def kinetic_scaling(seg: FundamentalSegment) -> np.ndarray:
    """Diagonal of the kinetic Hessian in reduced coordinates."""
    dt = np.diff(seg.node_times)
    inner = 1.0 / dt[:-1] + 1.0 / dt[1:]
    return np.concatenate(
        [[2.0 / dt[0]], np.repeat(inner, 3), [2.0 / dt[-1], 1.0 / dt[-1]]]
    )


def discrete_eom_residual(seg: FundamentalSegment, t_min: float = 0.0) -> float:
    """
    max_j |∇U(X_j) − second difference at j| over nodes j ≥ 2 with t_j ≥ t_min,
    the residual of the discrete Euler–Lagrange equations in acceleration units.
    """
    q = QuadratureScheme(seg.period, seg.n_cells)
    t = seg.node_times
    dt = np.diff(t)
    g = full_gradient(seg, q)
    w = _trapezoid_weights(dt)
    idx = np.arange(2, seg.n_cells)
    idx = idx[t[idx] >= t_min]
    if idx.size == 0:
        return 0.0
    return float(np.max(np.linalg.norm(g[idx] / w[idx, None], axis=1)))
