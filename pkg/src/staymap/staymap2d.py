"""(1+eps)-approximate stay map of a 2D trajectory.

Every exact stay point must be touched by the entity in every time window
of length g, so its corner lies in each snapshot region P(t, t+g). Taking
snapshots every eps*g time units and intersecting them keeps all exact
corners, and any corner in the intersection is left for at most
g + eps*g at a stretch.

Window boundaries and visit polygons are exact when the trajectory is;
the unions and intersections are done by shapely in double precision.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import shapely
from shapely.geometry import Polygon

from .geom import ConvexPolygon, StayParams, Trajectory, TrajectoryVertex, as_rational, convex_hull, subtrajectory
from .regions import SLIVER_AREA, RegionSet


class DegenerateInputError(ValueError):
    """The trajectory is not longer than g, so every square qualifies."""


@dataclass(frozen=True)
class Snapshot:
    t_start: object
    region: RegionSet


def edge_visit_region(u: TrajectoryVertex, v: TrajectoryVertex, s) -> ConvexPolygon:
    """Corners p whose closed square ``[p, p+s]^2`` meets segment uv: the
    segment swept by the square ``[-s, 0]^2``."""
    pts = []
    for x, y in (u.pos, v.pos):
        for dx in (0, s):
            for dy in (0, s):
                pts.append((x - dx, y - dy))
    return ConvexPolygon(tuple(convex_hull(pts)))


def _shape(poly: ConvexPolygon) -> Polygon:
    return Polygon([(float(x), float(y)) for x, y in poly.vertices])


def _min_area(s) -> float:
    return SLIVER_AREA * float(s) ** 2


def snapshot(traj: Trajectory, t, params: StayParams) -> Snapshot:
    """Union of the visit regions of the movement during ``[t, t+g]``
    (cut off at the end of the trajectory)."""
    if traj.dim != 2:
        raise ValueError("snapshots need a 2D trajectory")
    if traj.is_exact:
        t = as_rational(t)
        end = min(t + params.g, traj.end)
        s = params.s
    else:
        t = float(t)
        end = min(t + float(params.g), float(traj.end))
        s = float(params.s)
    sub = subtrajectory(traj, t, end)
    if sub.n == 1:
        pos = sub.vertex(0)
        shapes = [_shape(edge_visit_region(pos, pos, s))]
    else:
        shapes = [_shape(edge_visit_region(u, v, s)) for u, v in sub.edges()]
    region = RegionSet.from_geometry(shapely.union_all(shapes), _min_area(s))
    return Snapshot(t, region)


def snapshot_times(duration, params: StayParams) -> list:
    """Window start offsets ``i*lam`` (``lam = eps*g``) up to ``D - g``,
    plus ``D - g`` itself."""
    D = as_rational(duration)
    g = params.g
    if params.epsilon is None:
        raise ValueError("epsilon is required")
    if D <= g:
        raise DegenerateInputError(f"duration {D} does not exceed g = {g}")
    if params.epsilon > D / g:
        raise ValueError(f"epsilon {params.epsilon} exceeds D/g = {D / g}")
    lam = params.epsilon * g
    last = int(math.floor((D - g) / lam))
    times = [i * lam for i in range(last + 1)]
    if times[-1] != D - g:
        times.append(D - g)
    return times


def clamp_epsilon(traj: Trajectory, params: StayParams) -> StayParams:
    """Apply the precondition ``eps <= D/g``, warning when it bites."""
    if traj.duration <= 0:
        return params
    ratio = as_rational(traj.duration) / params.g
    if params.epsilon is not None and params.epsilon > ratio:
        warnings.warn(
            f"epsilon {float(params.epsilon):g} exceeds D/g = {float(ratio):g}; clamped",
            stacklevel=3,
        )
        return params.with_epsilon(ratio)
    return params


def snapshots(traj: Trajectory, params: StayParams) -> list[Snapshot]:
    """All snapshots used by ``approx_staymap`` (after clamping epsilon)."""
    params = clamp_epsilon(traj, params)
    start = traj.start if traj.is_exact else as_rational(traj.start)
    return [snapshot(traj, start + dt, params) for dt in snapshot_times(traj.duration, params)]


def intersect_regions(regions: list[RegionSet]) -> RegionSet:
    """Intersection of closed regions, paired up in a balanced tree.

    Lower-dimensional leftovers of tangent faces are not faces; they are
    kept as residue so that the result is still the closed intersection."""
    if not regions:
        raise ValueError("need at least one region")
    layer = [r for r in regions if not r.whole_plane]
    if not layer:
        return RegionSet.plane()
    geoms = [r.closure() for r in layer]
    while len(geoms) > 1:
        nxt = [geoms[i].intersection(geoms[i + 1]) for i in range(0, len(geoms) - 1, 2)]
        if len(geoms) % 2:
            nxt.append(geoms[-1])
        geoms = nxt
    return RegionSet.from_geometry(geoms[0])


def approx_staymap(traj: Trajectory, params: StayParams) -> RegionSet:
    """Region containing every exact stay-point corner and only corners of
    (1+eps)-approximate stay points."""
    if traj.dim != 2:
        raise ValueError("approx_staymap needs a 2D trajectory")
    if params.epsilon is None:
        raise ValueError("epsilon is required")
    if traj.duration <= params.g:
        return RegionSet.plane()
    snaps = snapshots(traj, params)
    result = intersect_regions([snap.region for snap in snaps])
    return RegionSet.from_geometry(result.closure(), _min_area(params.s))


def snapshot_vertex_total(traj: Trajectory, params: StayParams) -> int:
    """Total vertex count of all snapshot subtrajectories."""
    params = clamp_epsilon(traj, params)
    total = 0
    for dt in snapshot_times(traj.duration, params):
        t = (traj.start if traj.is_exact else as_rational(traj.start)) + dt
        if not traj.is_exact:
            t = float(t)
        end = min(t + (params.g if traj.is_exact else float(params.g)), traj.end)
        total += subtrajectory(traj, t, end).n
    return total
