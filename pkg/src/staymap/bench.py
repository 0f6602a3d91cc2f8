"""Timing and output-size tables for the scaling claims."""

from __future__ import annotations

import gc
import time
from dataclasses import asdict, dataclass

from .generators import GridConstructionParams, grid_construction, random_walk
from .geom import StayParams, mpq
from .oracle import exact_clusters, grid_scan
from .staymap1d import staymap_1d
from .staymap2d import approx_staymap, snapshot_times


def best_time(fn, repeats: int = 5) -> float:
    """Minimum wall time over ``repeats`` calls, with the collector paused."""
    enabled = gc.isenabled()
    gc.disable()
    try:
        best = float("inf")
        for _ in range(repeats):
            start = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - start)
    finally:
        if enabled:
            gc.enable()
    return best


@dataclass
class ScalingRow:
    n: int
    seconds: float
    ratio: float | None
    kind: str


def bench_1d(min_exp: int = 14, max_exp: int = 20, seed: int = 0, repeats: int = 5) -> list[ScalingRow]:
    """Float-path ``staymap_1d`` on concatenated random walks of 2^k vertices.

    Sizes are timed round-robin and each keeps its best time, so a noisy
    stretch of the machine does not land on a single size."""
    params = StayParams(4, 8)
    staymap_1d(random_walk(256, 1, seed, exact=False, restart_every=64), params)  # compile
    sizes = range(min_exp, max_exp + 1)
    trajs = {k: random_walk(2**k, 1, seed + k, exact=False, restart_every=64) for k in sizes}
    kinds = {k: staymap_1d(trajs[k], params).kind.value for k in sizes}
    best = {k: float("inf") for k in sizes}
    for _ in range(repeats):
        for k in sizes:
            best[k] = min(best[k], best_time(lambda: staymap_1d(trajs[k], params), 1))
    rows: list[ScalingRow] = []
    for k in sizes:
        ratio = best[k] / rows[-1].seconds if rows else None
        rows.append(ScalingRow(2**k, best[k], ratio, kinds[k]))
    return rows


@dataclass
class EpsilonRow:
    epsilon: float
    snapshots: int
    seconds: float
    polygons: int


def bench_2d(n: int = 60, seed: int = 0, epsilons=(1, mpq(1, 2), mpq(1, 4), mpq(1, 8))) -> list[EpsilonRow]:
    traj = random_walk(n, 2, seed, step_scale=mpq(1, 4))
    rows = []
    for eps in epsilons:
        params = StayParams(2, 4, eps)
        count = len(snapshot_times(traj.duration, params))
        start = time.perf_counter()
        region = approx_staymap(traj, params)
        rows.append(EpsilonRow(float(eps), count, time.perf_counter() - start, len(region)))
    return rows


@dataclass
class FacesRow:
    m: int
    n: int
    clusters: int
    polygons: int
    seconds: float


def bench_faces(ms=(2, 4, 8)) -> list[FacesRow]:
    """Oracle cluster count and polygon count of the grid construction.

    Epsilon is ``1/(4m)`` so that neighbouring strips stay separated."""
    rows = []
    for m in ms:
        gp = GridConstructionParams(m)
        traj = grid_construction(gp)
        params = StayParams(gp.s, gp.g, mpq(1, 4 * m))
        scan = grid_scan(traj, (-2, -2, 1, 1), mpq(1, 4 * m), params)
        start = time.perf_counter()
        region = approx_staymap(traj, params)
        rows.append(FacesRow(m, traj.n, exact_clusters(scan), len(region), time.perf_counter() - start))
    return rows


def format_table(rows) -> str:
    if not rows:
        return ""
    dicts = [asdict(r) for r in rows]
    cols = list(dicts[0])

    def cell(v):
        if v is None:
            return "-"
        if isinstance(v, float):
            return f"{v:.4g}"
        return str(v)

    body = [[cell(d[c]) for c in cols] for d in dicts]
    widths = [max(len(c), *(len(r[i]) for r in body)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in body]
    return "\n".join(lines) + "\n"
