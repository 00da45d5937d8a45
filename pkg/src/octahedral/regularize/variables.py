"""
Square-root coordinates and their conjugates.

    x = γ²,  y = υ²,  z = ζ²,   Γ = 2ẋγ,  Υ = 2ẏυ,  Z = 2żζ

Flipping the sign of any of γ, υ, ζ (with its conjugate) gives the same
physical state, an 8-fold covering away from collisions. In these variables

    H = Σ Θ²/(8θ²) − Σ_pairs 1/sqrt(θ_a⁴ + θ_b⁴) − Σ 1/(8θ²)

with θ ranging over (γ, υ, ζ) and Θ over (Γ, Υ, Z).
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple

import numpy as np

from octahedral.dynamics.energy import hamiltonian
from octahedral.dynamics.state import ZERO_THRESHOLD, Configuration, State
from octahedral.errors import DomainError, SingularityError

AXES = ("x", "y", "z")


@dataclass(frozen=True)
class RegularizedState:
    gamma: float
    Gamma: float
    upsilon: float
    Upsilon: float
    zeta: float
    Z: float
    s: float = 0.0
    t: float = 0.0
    h: float = float("nan")

    @property
    def roots(self) -> np.ndarray:
        return np.array([self.gamma, self.upsilon, self.zeta])

    @property
    def conjugates(self) -> np.ndarray:
        return np.array([self.Gamma, self.Upsilon, self.Z])

    def as_vector(self) -> np.ndarray:
        """[γ, Γ, υ, Υ, ζ, Z, t], the layout integrated in s."""
        return np.array(
            [self.gamma, self.Gamma, self.upsilon, self.Upsilon, self.zeta, self.Z, self.t]
        )

    @classmethod
    def from_vector(cls, v: Sequence[float], s: float, h: float) -> "RegularizedState":
        g, G, u, U, z, Z, t = (float(c) for c in v)
        return cls(g, G, u, U, z, Z, s, t, h)

    def flipped(self, axis: int) -> "RegularizedState":
        """Same physical state, other sheet of the covering along one axis."""
        root, conj = (("gamma", "Gamma"), ("upsilon", "Upsilon"), ("zeta", "Z"))[axis]
        return replace(self, **{root: -getattr(self, root), conj: -getattr(self, conj)})


def to_regularized(
    state: State,
    h: Optional[float] = None,
    signs: Tuple[int, int, int] = (1, 1, 1),
    t: float = 0.0,
    conjugates: Optional[Sequence[Optional[float]]] = None,
) -> RegularizedState:
    """
    Lift a physical state to the covering.

    At a vanishing coordinate the conjugate is the one-sided limit, Θ² → 1,
    taken as sign·1 unless the caller supplies it in ``conjugates``.
    """
    if h is None:
        if state.config.is_collision:
            raise DomainError("energy must be given for a state at a collision")
        h = hamiltonian(state)
    q = state.config.as_array()
    v = state.velocity_array()
    roots = np.asarray(signs, dtype=float) * np.sqrt(q)
    conj = np.empty(3)
    for k in range(3):
        given = None if conjugates is None else conjugates[k]
        if given is not None:
            conj[k] = given
        elif q[k] <= ZERO_THRESHOLD:
            conj[k] = float(signs[k])
        else:
            conj[k] = 2.0 * v[k] * roots[k]
    return RegularizedState(
        roots[0], conj[0], roots[1], conj[1], roots[2], conj[2], 0.0, t, float(h)
    )


def from_regularized(r: RegularizedState) -> State:
    """Physical preimage; the velocity of a vanishing coordinate is nan."""
    roots, conj = r.roots, r.conjugates
    with np.errstate(divide="ignore", invalid="ignore"):
        v = np.where(np.abs(roots) > ZERO_THRESHOLD, conj / (2.0 * roots), np.nan)
    return State(Configuration.from_array(roots**2), tuple(float(c) for c in v))


def reg_hamiltonian(r: RegularizedState) -> float:
    theta, Theta = r.roots, r.conjugates
    if np.any(np.abs(theta) <= ZERO_THRESHOLD):
        raise SingularityError("regularized Hamiltonian is singular at a vanishing root")
    q = theta**2
    kinetic = np.sum(Theta**2 / (8.0 * q))
    pairs = (
        1.0 / np.sqrt(q[0] ** 2 + q[1] ** 2)
        + 1.0 / np.sqrt(q[0] ** 2 + q[2] ** 2)
        + 1.0 / np.sqrt(q[1] ** 2 + q[2] ** 2)
    )
    return float(kinetic - pairs - np.sum(1.0 / (8.0 * q)))


def complement_energy(r: RegularizedState, axis: int) -> float:
    """
    f_k: the Hamiltonian without the kinetic and self terms of ``axis``,

        H = Θ_k²/(8θ_k²) − 1/(8θ_k²) + f_k

    Defined whenever the other two roots are nonzero.
    """
    theta, Theta = r.roots, r.conjugates
    others = [j for j in range(3) if j != axis]
    if np.any(np.abs(theta[others]) <= ZERO_THRESHOLD):
        raise SingularityError(f"complement energy along {AXES[axis]} needs the other roots nonzero")
    q = theta**2
    kinetic = sum(Theta[j] ** 2 / (8.0 * q[j]) for j in others)
    self_terms = sum(1.0 / (8.0 * q[j]) for j in others)
    pairs = (
        1.0 / np.hypot(q[0], q[1]) + 1.0 / np.hypot(q[0], q[2]) + 1.0 / np.hypot(q[1], q[2])
    )
    return float(kinetic - pairs - self_terms)
