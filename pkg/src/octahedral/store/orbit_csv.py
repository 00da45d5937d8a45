"""
Orbit CSV format.

Header ``t,x,y,z,vx,vy,vz,H``, one row per sample with t ascending in
[0, T). Numbers are written as the shortest repr that round-trips; a
velocity undefined at a collision is written ``nan``. H is K − U on
ordinary rows and the orbit energy on collision rows.
"""
from __future__ import annotations

from pathlib import Path
from typing import List, Optional

import numpy as np

from octahedral.dynamics.potential import hamiltonian_values
from octahedral.errors import OrbitParseError
from octahedral.symmetry.segment import PeriodicOrbit

HEADER = "t,x,y,z,vx,vy,vz,H"
COLUMNS = HEADER.split(",")
MIN_ROWS = 6


def _num(v: float) -> str:
    return repr(float(v))


def energy_column(orbit: PeriodicOrbit) -> np.ndarray:
    H = np.full(len(orbit), orbit.energy, dtype=float)
    ok = ~orbit.collision_mask() & np.all(np.isfinite(orbit.velocities), axis=1)
    H[ok] = hamiltonian_values(orbit.positions[ok], orbit.velocities[ok])
    return H


def format_orbit_csv(orbit: PeriodicOrbit) -> str:
    H = energy_column(orbit)
    lines = [HEADER]
    for i in range(len(orbit)):
        row = [orbit.times[i], *orbit.positions[i], *orbit.velocities[i], H[i]]
        lines.append(",".join(_num(v) for v in row))
    return "\n".join(lines) + "\n"


def write_orbit_csv(orbit: PeriodicOrbit, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_orbit_csv(orbit), encoding="utf-8")
    return path


def _parse_row(text: str, line: int) -> List[float]:
    fields = text.split(",")
    if len(fields) != len(COLUMNS):
        raise OrbitParseError(f"expected {len(COLUMNS)} fields, found {len(fields)}", line)
    try:
        values = [float(f) for f in fields]
    except ValueError as e:
        raise OrbitParseError(f"not a number: {e}", line) from e
    if not all(np.isfinite(values[:4])):
        raise OrbitParseError("time and position must be finite", line)
    return values


def parse_orbit_csv(text: str, period: Optional[float] = None) -> PeriodicOrbit:
    """
    Parse the CSV text. Without ``period`` it is inferred as 3·t of the
    sample where y vanishes (the collision at T/3).

    Raises:
        OrbitParseError: malformed content, naming the first bad line.
    """
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise OrbitParseError(f"expected header {HEADER!r}", 1)

    rows = []
    for number, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            raise OrbitParseError("empty line", number)
        row = _parse_row(raw.strip(), number)
        if rows and row[0] <= rows[-1][0]:
            raise OrbitParseError("times must be strictly increasing", number)
        if min(row[1:4]) < 0.0:
            raise OrbitParseError("negative coordinate", number)
        rows.append(row)
    if text and not text.endswith("\n") and rows:
        raise OrbitParseError("file ends in the middle of a row", len(lines))
    if len(rows) < MIN_ROWS:
        raise OrbitParseError(f"need at least {MIN_ROWS} samples, found {len(rows)}", len(lines) + 1)

    data = np.array(rows)
    times, positions, velocities, H = data[:, 0], data[:, 1:4], data[:, 4:7], data[:, 7]
    if times[0] != 0.0:
        raise OrbitParseError("first sample must be at t = 0", 2)

    if period is None:
        hits = np.flatnonzero((positions[:, 1] == 0.0) & (times > 0.0))
        if hits.size == 0:
            raise OrbitParseError("cannot infer the period: no sample with y = 0")
        period = 3.0 * float(times[hits[0]])
    if times[-1] >= period:
        raise OrbitParseError(f"sample time {times[-1]!r} not below the period {period!r}", len(rows) + 1)

    collision = np.min(positions, axis=1) <= 0.0
    energy = float(H[collision][0]) if collision.any() else float(np.median(H))
    return PeriodicOrbit(float(period), times, positions, velocities, energy)


def read_orbit_csv(path: Path, period: Optional[float] = None) -> PeriodicOrbit:
    return parse_orbit_csv(Path(path).read_text(encoding="utf-8"), period)
