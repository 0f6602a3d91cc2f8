"""Brute-force ground truth: the longest continuous absence of the entity
from a square (or 1D interval), and dense scans built on it.

Nothing here is clever on purpose. ``max_gap`` clips every edge against
the region and complements the presence intervals; ``max_gaps`` does the
same edge loop for many regions at once with numpy, in float64 or over
object arrays of rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import ndimage

from .geom import Square, StayParams, Trajectory, as_rational, square_entry_exit
from .staymap1d import Interval1D


class Classification(str, Enum):
    EXACT = "exact"
    APPROX_ONLY = "approx_only"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class GapReport:
    max_gap: object
    witness: tuple
    presence: tuple = ()
    absences: tuple = ()


def _corner(corner) -> tuple:
    if isinstance(corner, (tuple, list, np.ndarray)):
        return tuple(corner)
    return (corner,)


def presence_intervals(traj: Trajectory, square: Square) -> list[tuple]:
    """Maximal closed time intervals with the entity inside ``square``."""
    if traj.n == 1:
        return [(traj.start, traj.start)] if square.contains(traj.coords[0]) else []
    merged: list[list] = []
    for u, v in traj.edges():
        for a, b in square_entry_exit(u, v, square):
            if merged and merged[-1][1] >= a:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
    return [tuple(iv) for iv in merged]


def max_gap(traj: Trajectory, corner, s) -> GapReport:
    """Longest time the entity spends continuously outside the closed
    square with lower-left ``corner`` and side ``s``, including the lead-in
    before the first visit and the tail after the last one."""
    corner = _corner(corner)
    if len(corner) != traj.dim:
        raise ValueError("corner dimension does not match the trajectory")
    if traj.is_exact:
        corner = tuple(as_rational(c) for c in corner)
        s = as_rational(s)
    presence = presence_intervals(traj, Square(corner, s))
    absences = []
    cursor = traj.start
    for a, b in presence:
        if a > cursor:
            absences.append((cursor, a))
        cursor = b
    if cursor < traj.end or not presence:
        absences.append((cursor, traj.end))
    best, witness = traj.start - traj.start, (traj.start, traj.start)
    for a, b in absences:
        if b - a > best:
            best, witness = b - a, (a, b)
    return GapReport(best, witness, tuple(presence), tuple(absences))


def classify_gap(gap, params: StayParams) -> Classification:
    if gap <= params.g:
        return Classification.EXACT
    if params.epsilon is not None and gap <= params.g * (1 + params.epsilon):
        return Classification.APPROX_ONLY
    return Classification.OUTSIDE


def oracle_classify(traj: Trajectory, corner, params: StayParams) -> Classification:
    return classify_gap(max_gap(traj, corner, params.s).max_gap, params)


def max_gaps(traj: Trajectory, corners, s, exact: bool = False) -> np.ndarray:
    """Vectorised ``max_gap`` over an array of corners of shape ``(P, dim)``
    (or ``(P,)`` in 1D)."""
    if exact:
        traj = traj.as_exact()
        corners = np.asarray(corners, dtype=object)
        s = as_rational(s)
        corners = np.vectorize(as_rational, otypes=[object])(corners)
    else:
        traj = traj.as_float()
        corners = np.asarray(corners, dtype=np.float64)
        s = float(s)
    if corners.ndim == 1:
        corners = corners.reshape(-1, 1)
    if corners.shape[1] != traj.dim:
        raise ValueError("corner dimension does not match the trajectory")
    t, pts = traj.times, traj.coords
    lo = corners
    hi = corners + s
    count = len(corners)

    inside0 = np.all((lo <= pts[0]) & (pts[0] <= hi), axis=1)
    absent = ~inside0
    start = np.full(count, t[0], dtype=corners.dtype)
    best = np.full(count, t[0] - t[0], dtype=corners.dtype)
    for i in range(traj.n - 1):
        ta, tb = t[i], t[i + 1]
        lam_in = np.zeros(count, dtype=corners.dtype)
        lam_out = np.ones(count, dtype=corners.dtype)
        present = np.ones(count, dtype=bool)
        for k in range(traj.dim):
            pa, d = pts[i, k], pts[i + 1, k] - pts[i, k]
            if d == 0:
                present &= (lo[:, k] <= pa) & (pa <= hi[:, k])
                continue
            l1 = (lo[:, k] - pa) / d
            l2 = (hi[:, k] - pa) / d
            lam_in = np.maximum(lam_in, np.minimum(l1, l2))
            lam_out = np.minimum(lam_out, np.maximum(l1, l2))
        present &= lam_in <= lam_out
        t_in = ta + lam_in * (tb - ta)
        t_out = ta + lam_out * (tb - ta)
        ending = absent & present
        if ending.any():
            best = np.maximum(best, np.where(ending, t_in - start, best))
        leaving = present & (t_out < tb)
        # a missed edge opens an absence at its start even when rounding
        # hid the exit on the previous edge (never fires in exact mode)
        missed = ~present & ~absent
        start = np.where(leaving, t_out, np.where(missed, ta, start))
        absent = np.where(present, leaving, True)
    tail = np.where(absent, t[-1] - start, best)
    return np.maximum(best, tail)


@dataclass(frozen=True)
class GridScan:
    """Oracle classification on the lattice ``xs`` (x) ``ys``; ``gaps`` and
    ``labels`` are indexed ``[iy, ix]`` (1D scans have ``ys`` empty and 1D
    arrays)."""

    xs: np.ndarray
    ys: np.ndarray
    gaps: np.ndarray
    labels: np.ndarray  # object array of Classification

    def mask(self, label: Classification) -> np.ndarray:
        return np.array([lab is label for lab in self.labels.ravel()], dtype=bool).reshape(
            self.labels.shape
        )

    def points(self, label: Classification) -> np.ndarray:
        mask = self.mask(label)
        if self.gaps.ndim == 1:
            return self.xs[mask]
        iy, ix = np.nonzero(mask)
        return np.column_stack([self.xs[ix], self.ys[iy]])

    def count(self, label: Classification) -> int:
        return int(self.mask(label).sum())


def _lattice(lo, hi, step) -> np.ndarray:
    lo, hi, step = as_rational(lo), as_rational(hi), as_rational(step)
    if step <= 0:
        raise ValueError("step must be positive")
    if hi < lo:
        raise ValueError("empty bounding box")
    count = int((hi - lo) // step) + 1
    return np.array([lo + i * step for i in range(count)], dtype=object)


def grid_scan(traj: Trajectory, bbox, step, params: StayParams, exact: bool = False) -> GridScan:
    """Classify every lattice point of ``bbox`` (``(xmin, ymin, xmax, ymax)``
    in 2D, ``(xmin, xmax)`` in 1D) with spacing ``step``."""
    if traj.dim == 1:
        xs = _lattice(bbox[0], bbox[1], step)
        ys = np.array([], dtype=object)
        corners = xs.reshape(-1, 1)
        shape = (len(xs),)
    else:
        xs = _lattice(bbox[0], bbox[2], step)
        ys = _lattice(bbox[1], bbox[3], step)
        gx, gy = np.meshgrid(xs, ys)
        corners = np.column_stack([gx.ravel(), gy.ravel()])
        shape = (len(ys), len(xs))
    g = params.g if exact else float(params.g)
    approx = None
    if params.epsilon is not None:
        approx = params.g * (1 + params.epsilon)
        approx = approx if exact else float(approx)
    if exact:
        gaps = max_gaps(traj, corners, params.s, exact=True)
    else:
        gaps = _bracketed_gaps(traj, corners, params.s, (g, approx))
    # np.full would coerce the str-enum into a truncated numpy string
    labels = np.empty(len(gaps), dtype=object)
    labels[:] = _labels(gaps, g, approx)
    return GridScan(xs, ys, gaps.reshape(shape), labels.reshape(shape))


def _labels(gaps, g, approx) -> list:
    out = []
    for gap in gaps:
        if gap <= g:
            out.append(Classification.EXACT)
        elif approx is not None and gap <= approx:
            out.append(Classification.APPROX_ONLY)
        else:
            out.append(Classification.OUTSIDE)
    return out


def _bracketed_gaps(traj: Trajectory, corners, s, thresholds) -> np.ndarray:
    """Float gaps, with points whose label rounding could flip redone exactly.

    Growing the square can only shorten absences and shrinking it can only
    lengthen them, so where both perturbed squares give the same label the
    float label is right. Touches on the square boundary are the usual
    culprits."""
    fc = corners.astype(np.float64)
    scale = max(1.0, float(np.max(np.abs(fc))) if fc.size else 1.0, float(s))
    delta = 1e-9 * scale
    nominal = max_gaps(traj, fc, s)
    grown = max_gaps(traj, fc - delta, float(s) + 2 * delta)
    shrunk = max_gaps(traj, fc + delta, float(s) - 2 * delta)
    unsure = np.zeros(len(fc), dtype=bool)
    for th in thresholds:
        if th is not None:
            unsure |= (grown <= th) != (shrunk <= th)
    if unsure.any():
        redo = corners[unsure]
        if redo.dtype != object:
            redo = np.array([[as_rational(float(c)) for c in row] for row in redo], dtype=object)
        nominal[unsure] = max_gaps(traj, redo, s, exact=True).astype(np.float64)
    return nominal


def exact_clusters(scan: GridScan) -> int:
    """Number of 4-connected clusters of Exact lattice points."""
    _, count = ndimage.label(scan.mask(Classification.EXACT))
    return int(count)


def scan_interval_1d(traj: Trajectory, params: StayParams, probes) -> Interval1D:
    """Stay map of a 1D trajectory as seen by the oracle at ``probes``.

    Exact rational evaluation at every probe; the Inside probes must be
    contiguous in sorted order, as the map is a single interval.
    """
    if traj.n == 1 or traj.duration <= params.g:
        return Interval1D.whole_line()
    probes = sorted({as_rational(p) for p in probes})
    gaps = max_gaps(traj, np.array(probes, dtype=object), params.s, exact=True)
    inside = [i for i, gap in enumerate(gaps) if gap <= params.g]
    if not inside:
        return Interval1D.empty()
    if inside[-1] - inside[0] + 1 != len(inside):
        raise AssertionError("oracle found a disconnected 1D stay map")
    return Interval1D.bounded(probes[inside[0]], probes[inside[-1]])
