"""
Dihedral group D3 acting on T-periodic loops.

Generators:

    g(x, y, z)(t) = (z, x, y)(t − T/3)
    h(x, y, z)(t) = (x, z, y)(−t)

Every element is stored as a descriptor (perm, shift, reversed) meaning

    (a X)(t) = P X(σ (t − shift·T/3)),   (P X)_i = X_perm[i],   σ = −1 if reversed
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from octahedral.errors import GridError

from .segment import PeriodicOrbit

# Relative slack when matching shifted/reflected sample times on the grid.
GRID_TIME_TOLERANCE = 1e-9


@dataclass(frozen=True)
class GroupElement:
    tag: str
    perm: Tuple[int, int, int]
    shift: int
    reversed: bool

    @property
    def sign(self) -> int:
        return -1 if self.reversed else 1

    def descriptor(self) -> Tuple[Tuple[int, int, int], int, bool]:
        return (self.perm, self.shift, self.reversed)


def _compose_descriptors(a: GroupElement, b: GroupElement):
    perm = tuple(b.perm[a.perm[i]] for i in range(3))
    shift = (a.shift + a.sign * b.shift) % 3
    return perm, shift, a.reversed != b.reversed


IDENTITY = GroupElement("e", (0, 1, 2), 0, False)
G = GroupElement("g", (2, 0, 1), 1, False)
H = GroupElement("h", (0, 2, 1), 0, True)


def _build_elements() -> Dict[str, GroupElement]:
    g2 = GroupElement("g2", *_compose_descriptors(G, G))
    hg = GroupElement("hg", *_compose_descriptors(H, G))
    hg2 = GroupElement("hg2", *_compose_descriptors(H, g2))
    return {el.tag: el for el in (IDENTITY, G, g2, H, hg, hg2)}


ELEMENTS: Dict[str, GroupElement] = _build_elements()
_BY_DESCRIPTOR = {el.descriptor(): el for el in ELEMENTS.values()}


def compose(a: GroupElement, b: GroupElement) -> GroupElement:
    """The element a∘b (apply b first)."""
    return _BY_DESCRIPTOR[_compose_descriptors(a, b)]


def multiplication_table() -> Dict[Tuple[str, str], str]:
    return {(a, b): compose(ELEMENTS[a], ELEMENTS[b]).tag for a in ELEMENTS for b in ELEMENTS}


def time_index_map(times: np.ndarray, period: float, element: GroupElement) -> np.ndarray:
    """idx with times[idx[j]] = σ(t_j − shift·T/3) mod T, or GridError."""
    times = np.asarray(times, dtype=float)
    target = np.mod(element.sign * (times - element.shift * period / 3.0), period)
    tol = GRID_TIME_TOLERANCE * period
    target = np.where(period - target <= tol, 0.0, target)
    idx = np.clip(np.searchsorted(times, target), 0, len(times) - 1)
    left = np.clip(idx - 1, 0, len(times) - 1)
    idx = np.where(np.abs(times[left] - target) < np.abs(times[idx] - target), left, idx)
    if np.any(np.abs(times[idx] - target) > tol):
        raise GridError(f"sample grid is not closed under {element.tag}")
    return idx


def apply_group_element(element: GroupElement, loop: PeriodicOrbit) -> PeriodicOrbit:
    """Permute components and reindex times; velocities pick up σ under reversal."""
    idx = time_index_map(loop.times, loop.period, element)
    perm = list(element.perm)
    positions = loop.positions[idx][:, perm]
    velocities = element.sign * loop.velocities[idx][:, perm]
    return PeriodicOrbit(loop.period, loop.times.copy(), positions, velocities, loop.energy)
