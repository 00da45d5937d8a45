"""
Minimization of the discretized action over the constrained loop class.

The optimizer works in reduced coordinates scaled by the square root of the
kinetic Hessian diagonal, so gradient norms are reported in those scaled
units. Optional mesh continuation solves on coarse meshes first and
transfers each solution to the next mesh by cubic interpolation.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import CubicSpline

from octahedral.errors import CollisionError, ConstraintError, DomainError
from octahedral.symmetry.segment import (
    POSITIVITY_FLOOR,
    FundamentalSegment,
    project_constraints,
)

from .functional import (
    discretized_action,
    kinetic_scaling,
    pack,
    reduced_gradient,
    unpack,
)
from .homothetic import homothetic_segment
from .lbfgs import minimize_projected
from .quadrature import QuadratureScheme

logger = logging.getLogger("octahedral.action")

MULTISTART_SPREAD_WARNING = 1e-6


@dataclass(frozen=True)
class MinimizeOptions:
    max_iters: int = 20000
    grad_tol: float = 1e-8
    mesh_schedule: Tuple[int, ...] = (256, 512, 1024, 2048)
    memory: int = 10
    floor: float = POSITIVITY_FLOOR

    def __post_init__(self):
        if not self.grad_tol > 0.0:
            raise DomainError(f"grad_tol must be positive, got {self.grad_tol}")
        if self.max_iters < 0:
            raise DomainError(f"max_iters must be non-negative, got {self.max_iters}")


@dataclass
class MinimizeReport:
    action: float
    gradient_inf_norm: float
    iterations: int
    constraint_residuals: Dict[str, float]
    n_cells: int
    grading: float
    terminated_reason: str
    mesh_levels: List[int] = field(default_factory=list)
    action_history: List[float] = field(default_factory=list)


def constraint_residuals(seg: FundamentalSegment) -> Dict[str, float]:
    X = seg.nodes
    return {
        "x_start": abs(float(X[0, 0])),
        "y_start_minus_z_start": abs(float(X[0, 1] - X[0, 2])),
        "x_end_minus_y_end": abs(float(X[-1, 0] - X[-1, 1])),
    }


def scaled_gradient_norm(seg: FundamentalSegment, q: QuadratureScheme) -> float:
    """Max-norm of the reduced gradient in kinetic-scaled units."""
    g = reduced_gradient(seg, q) / np.sqrt(kinetic_scaling(seg))
    return float(np.max(np.abs(g)))


def refine_segment(seg: FundamentalSegment, n_cells: int, grading: float = 1.5) -> FundamentalSegment:
    """Transfer to the graded mesh with n_cells by a cubic spline in ξ = (t/(T/6))^{1/p}."""
    q = QuadratureScheme(seg.period, n_cells, grading)
    if seg.n_cells == n_cells and np.array_equal(seg.node_times, q.node_times):
        return seg
    spline = CubicSpline(q.graded_parameter(seg.node_times), seg.nodes, axis=0)
    nodes = spline(q.graded_parameter(q.node_times))
    return project_constraints(FundamentalSegment(seg.period, q.node_times, nodes))


def perturb_segment(
    seg: FundamentalSegment,
    rng: np.random.Generator,
    amplitude: float = 0.01,
    modes: int = 4,
) -> FundamentalSegment:
    """Multiply each coordinate by 1 + smooth noise built from the first few sine modes."""
    tau = seg.node_times / (seg.period / 6.0)
    k = np.arange(1, modes + 1)
    basis = np.sin(np.pi * np.outer(tau, k))
    coeffs = rng.standard_normal((modes, 3)) / np.sqrt(modes)
    factor = 1.0 + amplitude * basis @ coeffs
    return project_constraints(seg.with_nodes(seg.nodes * factor))


def seeded_segment(
    period: float,
    n_cells: int,
    grading: float = 1.5,
    seed: int = 0,
    amplitude: float = 0.01,
) -> FundamentalSegment:
    """Homothetic segment with deterministic low-mode noise."""
    base = homothetic_segment(period, n_cells, grading)
    return perturb_segment(base, np.random.default_rng(seed), amplitude)


def _minimize_level(seg: FundamentalSegment, q: QuadratureScheme, options: MinimizeOptions):
    scale = np.sqrt(kinetic_scaling(seg))

    def fun(u):
        trial = unpack(u / scale, seg)
        try:
            value = discretized_action(trial, q)
        except CollisionError:
            return np.inf, np.zeros_like(u)
        return value, reduced_gradient(trial, q) / scale

    result = minimize_projected(
        fun,
        pack(seg) * scale,
        options.floor * scale,
        options.grad_tol,
        options.max_iters,
        options.memory,
    )
    return unpack(result.x / scale, seg), result


def minimize(
    seed: FundamentalSegment,
    options: Optional[MinimizeOptions] = None,
    grading: float = 1.5,
) -> Tuple[FundamentalSegment, MinimizeReport]:
    """
    L-BFGS-B descent of the discretized action in kinetic-scaled coordinates.

    Args:
        seed: feasible starting segment on the graded mesh.
        options: iteration budget, tolerance and mesh schedule.
        grading: mesh exponent p of the seed's mesh.

    Returns:
        The final segment and its MinimizeReport.

    Raises:
        ConstraintError: infeasible seed.
        LineSearchError: the first step on some mesh fails to decrease the action.
    """
    options = options or MinimizeOptions()
    seed.validate()
    n_final = seed.n_cells
    q = QuadratureScheme(seed.period, n_final, grading)
    if not np.allclose(seed.node_times, q.node_times, rtol=1e-12, atol=0.0):
        raise ConstraintError(f"seed mesh is not graded with exponent {grading}")

    if not np.isfinite(options.grad_tol):
        action = discretized_action(seed, q)
        return seed, MinimizeReport(
            action=action,
            gradient_inf_norm=scaled_gradient_norm(seed, q),
            iterations=0,
            constraint_residuals=constraint_residuals(seed),
            n_cells=n_final,
            grading=grading,
            terminated_reason="converged",
            mesh_levels=[n_final],
            action_history=[action],
        )

    levels = sorted(n for n in set(options.mesh_schedule) if n < n_final) + [n_final]
    seg = seed
    total = 0
    result = None
    for n in levels:
        seg = refine_segment(seg, n, grading)
        level_q = q.with_cells(n)
        seg, result = _minimize_level(seg, level_q, options)
        total += result.iterations
        logger.info(
            f"Mesh N={n}: action {result.f:.12g}, |g|inf {result.gradient_inf_norm:.3e}, "
            f"{result.iterations} iterations ({result.reason})"
        )

    return seg, MinimizeReport(
        action=result.f,
        gradient_inf_norm=result.gradient_inf_norm,
        iterations=total,
        constraint_residuals=constraint_residuals(seg),
        n_cells=n_final,
        grading=grading,
        terminated_reason=result.reason,
        mesh_levels=levels,
        action_history=result.history,
    )


@dataclass
class MultistartResult:
    runs: List[Tuple[FundamentalSegment, MinimizeReport]]
    seeds: List[int]
    relative_spread: float

    @property
    def best(self) -> Tuple[FundamentalSegment, MinimizeReport]:
        return min(self.runs, key=lambda run: run[1].action)


def multistart(
    seeds: Sequence[int],
    period: float,
    n_cells: int,
    grading: float = 1.5,
    options: Optional[MinimizeOptions] = None,
    amplitude: float = 0.01,
    max_workers: Optional[int] = None,
) -> MultistartResult:
    """Independent minimizations from perturbed homothetic seeds, results in seed order."""
    seeds = list(seeds)
    if not seeds:
        raise DomainError("multistart needs at least one seed")

    def run(seed: int):
        start = seeded_segment(period, n_cells, grading, seed, amplitude)
        return minimize(start, options, grading)

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        runs = list(pool.map(run, seeds))

    actions = np.array([report.action for _, report in runs])
    spread = float((actions.max() - actions.min()) / abs(actions.min()))
    if spread > MULTISTART_SPREAD_WARNING:
        logger.warning(f"Multistart actions disagree: relative spread {spread:.3e} over seeds {seeds}")
    return MultistartResult(runs, seeds, spread)


def stationarity_probe(
    seg: FundamentalSegment,
    q: QuadratureScheme,
    rng: np.random.Generator,
    count: int = 200,
    size: float = 1e-4,
    floor: float = POSITIVITY_FLOOR,
) -> float:
    """
    Largest decrease A(X) − A(X + δ) over random feasible perturbations with
    |δ| = size. Non-positive at a local minimizer, up to second-order terms.
    """
    base = discretized_action(seg, q)
    r = pack(seg)
    worst = -np.inf
    for _ in range(count):
        delta = rng.standard_normal(r.shape)
        delta *= size / np.linalg.norm(delta)
        trial = unpack(np.maximum(r + delta, floor), seg)
        worst = max(worst, base - discretized_action(trial, q))
    return float(worst)
