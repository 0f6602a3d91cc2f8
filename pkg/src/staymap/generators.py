"""Synthetic trajectories: the strip construction whose stay map has m^2
faces, and seeded random walks for property tests."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geom import Trajectory, as_rational, mpq

WALK_RESOLUTION = 1000


@dataclass(frozen=True)
class GridConstructionParams:
    """``m`` strips per direction; quick moves take ``(g/m)/speed_factor``.
    ``dwell`` defaults to ``g``."""

    m: int
    s: object = 1
    g: object = 1
    speed_factor: object = 100
    dwell: object = None

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")
        for name in ("s", "g", "speed_factor"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.speed_factor < 1:
            raise ValueError("speed_factor must be at least 1")
        dwell = self.g if self.dwell is None else as_rational(self.dwell)
        if dwell < self.g:
            raise ValueError("dwell must be at least g")
        object.__setattr__(self, "dwell", dwell)

    @property
    def move_time(self):
        return self.g / self.m / self.speed_factor


def _strip_phase(p: GridConstructionParams) -> list[tuple]:
    """One strip-cutting phase as (time, u, w) rows relative to its start.

    The entity sweeps ``u`` from 0 to s in time g, so the square whose
    right side is at ``u`` is last seen at time proportional to ``u``.
    It then leaves the band of interesting squares (w = -2s), comes back
    at ``u = -s + s/m`` and steps right by s/m every g/m, ending at the
    origin. A square whose left side lies just right of a step position
    waits g/m longer for its next visit than one just left of it, which
    cuts the squares into m strips of width s/(2m).
    """
    m, s, g, d = p.m, p.s, p.g, p.move_time
    first = g + g / (2 * m)
    rows = [
        (mpq(0), mpq(0), mpq(0)),
        (g, s, mpq(0)),
        (g + d, s, -2 * s),
        (first - d, -s + s / m, -2 * s),
        (first, -s + s / m, mpq(0)),
    ]
    for k in range(2, m + 1):
        arrive = first + (k - 1) * g / m
        rows.append((arrive - d, -s + (k - 1) * s / m, mpq(0)))
        rows.append((arrive, -s + k * s / m, mpq(0)))
    rows.append((rows[-1][0] + p.dwell, mpq(0), mpq(0)))
    return rows


def grid_construction(params: GridConstructionParams) -> Trajectory:
    """Trajectory with O(m) vertices whose stay map consists of m x m
    small squares: vertical strips first, then the same schedule with the
    coordinates swapped to cut horizontal strips.

    All exact stay points contain the origin, so the map lies in
    ``[-s, 0]^2``.
    """
    phase = _strip_phase(params)
    offset = phase[-1][0]
    rows = [(t, (u, w)) for t, u, w in phase]
    rows += [(offset + t, (w, u)) for t, u, w in phase[1:]]
    return Trajectory.from_vertices(rows)


def grid_cell_centers(params: GridConstructionParams) -> list[tuple]:
    """Centres of the m^2 exact stay-map cells (for tests and plots)."""
    m, s = params.m, params.s
    centers = [-s + (k - mpq(1, 4)) * s / m for k in range(1, m + 1)]
    return [(cx, cy) for cy in centers for cx in centers]


def random_walk(
    n: int,
    dim: int = 1,
    seed: int = 0,
    step_scale=1,
    dt_scale=1,
    exact: bool = True,
    restart_every: int | None = None,
) -> Trajectory:
    """Seeded random walk on a 1/1000 grid.

    Time increments lie in ``(0, dt_scale]`` and per-axis steps in
    ``[-step_scale, step_scale]``. With ``restart_every=k`` the walk is a
    concatenation of independent walks of k vertices that each start at
    the origin. The same seed gives the same values in exact and float
    mode.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if dim not in (1, 2):
        raise ValueError("dim must be 1 or 2")
    rng = np.random.default_rng(seed)
    res = WALK_RESOLUTION
    dt_units = rng.integers(1, res + 1, size=n - 1)
    step_units = rng.integers(-res, res + 1, size=(n - 1, dim))
    t_units = np.concatenate([[0], np.cumsum(dt_units)])
    steps = np.vstack([np.zeros((1, dim), dtype=np.int64), step_units])
    if restart_every:
        block = np.arange(n) // restart_every
        pos_units = np.cumsum(steps, axis=0)
        block_start = np.array([pos_units[i * restart_every] for i in range(block[-1] + 1)])
        pos_units = pos_units - block_start[block]
    else:
        pos_units = np.cumsum(steps, axis=0)
    if exact:
        dt_scale, step_scale = as_rational(dt_scale), as_rational(step_scale)
        times = np.array([mpq(int(u), res) * dt_scale for u in t_units], dtype=object)
        coords = np.array(
            [[mpq(int(u), res) * step_scale for u in row] for row in pos_units], dtype=object
        )
        return Trajectory(times, coords)
    times = t_units / res * float(dt_scale)
    coords = pos_units / res * float(step_scale)
    return Trajectory(times, coords)
