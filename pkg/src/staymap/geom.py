"""Trajectories, stay parameters and the small exact primitives shared by
the 1D and 2D algorithms.

Coordinates and timestamps are kept either as exact rationals
(``gmpy2.mpq`` in numpy object arrays) or as float64 arrays. Decimal text
and Python ints/Fractions become exact rationals; floats are read through
their shortest ``repr`` so that ``0.1`` means one tenth.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, NamedTuple, Sequence

import gmpy2
import numpy as np

mpq = gmpy2.mpq
MPQ_TYPE = type(mpq(0))


def as_rational(value) -> "gmpy2.mpq":
    """Convert a number or decimal string to an exact rational."""
    if isinstance(value, MPQ_TYPE):
        return value
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, (int, np.integer)):
        return mpq(int(value))
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return mpq(Fraction(repr(float(value))))
    if isinstance(value, Rational):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        # Fraction's parser is stricter and accepts a leading '+'
        return mpq(Fraction(value.strip()))
    if type(value).__name__ == "mpz":
        return mpq(value)
    if type(value).__name__ == "mpfr":
        return as_rational(float(value))
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def to_fraction(value) -> Fraction:
    value = as_rational(value)
    return Fraction(int(value.numerator), int(value.denominator))


class TrajectoryVertex(NamedTuple):
    t: object
    pos: tuple


@dataclass(frozen=True, eq=False)
class Trajectory:
    """A time-ordered polyline; the entity moves at constant speed along
    each edge.

    ``times`` has shape ``(n,)`` and ``coords`` shape ``(n, dim)``. Both are
    object arrays of rationals (exact) or float64 arrays.
    """

    times: np.ndarray
    coords: np.ndarray

    def __post_init__(self):
        times = np.asarray(self.times)
        coords = np.asarray(self.coords)
        if coords.ndim == 1:
            coords = coords.reshape(-1, 1)
        if times.ndim != 1 or coords.ndim != 2 or len(times) != len(coords):
            raise ValueError("times must be (n,) and coords (n, dim)")
        if len(times) == 0:
            raise ValueError("a trajectory needs at least one vertex")
        if coords.shape[1] not in (1, 2):
            raise ValueError(f"unsupported dimension {coords.shape[1]}")
        exact = times.dtype == object or coords.dtype == object
        if exact:
            times = np.array([as_rational(v) for v in times], dtype=object)
            coords = np.array(
                [[as_rational(v) for v in row] for row in coords], dtype=object
            ).reshape(coords.shape)
        else:
            times = times.astype(np.float64)
            coords = coords.astype(np.float64)
            if not (np.isfinite(times).all() and np.isfinite(coords).all()):
                raise ValueError("trajectory values must be finite")
        if len(times) > 1 and not all(np.diff(times) > 0):
            raise ValueError("timestamps must be strictly increasing")
        times.setflags(write=False)
        coords.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_vertices(cls, vertices: Iterable, exact: bool = True) -> "Trajectory":
        """Build from rows ``(t, x)``, ``(t, x, y)`` or ``(t, (x, y))``."""
        times, coords = [], []
        for row in vertices:
            t, *rest = row
            if len(rest) == 1 and isinstance(rest[0], (tuple, list, np.ndarray)):
                rest = list(rest[0])
            times.append(t)
            coords.append(rest)
        if exact:
            return cls(
                np.array([as_rational(t) for t in times], dtype=object),
                np.array([[as_rational(v) for v in row] for row in coords], dtype=object),
            )
        return cls(np.array(times, dtype=np.float64), np.array(coords, dtype=np.float64))

    def __eq__(self, other):
        if not isinstance(other, Trajectory):
            return NotImplemented
        return (
            self.times.shape == other.times.shape
            and self.coords.shape == other.coords.shape
            and bool(np.all(self.times == other.times))
            and bool(np.all(self.coords == other.coords))
        )

    __hash__ = None

    @property
    def n(self) -> int:
        return len(self.times)

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    @property
    def is_exact(self) -> bool:
        return self.times.dtype == object

    @property
    def start(self):
        return self.times[0]

    @property
    def end(self):
        return self.times[-1]

    @property
    def duration(self):
        return self.times[-1] - self.times[0]

    def vertex(self, i: int) -> TrajectoryVertex:
        return TrajectoryVertex(self.times[i], tuple(self.coords[i]))

    def vertices(self) -> list[TrajectoryVertex]:
        return [self.vertex(i) for i in range(self.n)]

    def edges(self):
        for i in range(self.n - 1):
            yield self.vertex(i), self.vertex(i + 1)

    def as_exact(self) -> "Trajectory":
        if self.is_exact:
            return self
        return Trajectory(self.times.astype(object), self.coords.astype(object))

    def as_float(self) -> "Trajectory":
        if not self.is_exact:
            return self
        return Trajectory(
            np.array([float(v) for v in self.times]),
            np.array([[float(v) for v in row] for row in self.coords]),
        )

    def bounds(self) -> tuple[tuple, tuple]:
        """Per-axis (min, max) of the vertex positions."""
        lo = tuple(min(self.coords[:, k]) for k in range(self.dim))
        hi = tuple(max(self.coords[:, k]) for k in range(self.dim))
        return lo, hi


@dataclass(frozen=True)
class StayParams:
    """Square side ``s``, gap bound ``g`` and (2D only) approximation
    factor ``epsilon``. Values are stored as exact rationals."""

    s: object
    g: object
    epsilon: object = None

    def __post_init__(self):
        for name in ("s", "g", "epsilon"):
            value = getattr(self, name)
            if value is None and name == "epsilon":
                continue
            value = as_rational(value)
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")
            object.__setattr__(self, name, value)

    def with_epsilon(self, epsilon) -> "StayParams":
        return StayParams(self.s, self.g, epsilon)


@dataclass(frozen=True)
class Square:
    """Closed axis-aligned square ``[x, x+side] x [y, y+side]``. A 1-tuple
    corner describes the 1D interval ``[x, x+side]``."""

    lower_left: tuple
    side: object

    def contains(self, pos: Sequence) -> bool:
        return all(lo <= p <= lo + self.side for lo, p in zip(self.lower_left, pos))


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[tuple]) -> list[tuple]:
    """Counterclockwise hull without collinear points (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class ConvexPolygon:
    vertices: tuple

    @property
    def area(self):
        v = self.vertices
        total = 0
        for i in range(len(v)):
            x0, y0 = v[i]
            x1, y1 = v[(i + 1) % len(v)]
            total += x0 * y1 - x1 * y0
        return total / 2

    def contains(self, point) -> bool:
        """Closed containment test, exact for rational input."""
        v = self.vertices
        return all(_cross(v[i], v[(i + 1) % len(v)], point) >= 0 for i in range(len(v)))


def position_at(traj: Trajectory, t) -> tuple:
    """Interpolated position at time ``t``."""
    if not (traj.start <= t <= traj.end):
        raise ValueError(f"time {t} outside [{traj.start}, {traj.end}]")
    i = bisect.bisect_right(traj.times, t) - 1
    if i >= traj.n - 1 or traj.times[i] == t:
        return tuple(traj.coords[min(i, traj.n - 1)])
    t0, t1 = traj.times[i], traj.times[i + 1]
    frac = (t - t0) / (t1 - t0)
    return tuple(p + (q - p) * frac for p, q in zip(traj.coords[i], traj.coords[i + 1]))


def subtrajectory(traj: Trajectory, a, b) -> Trajectory:
    """The movement between times ``a`` and ``b`` as its own trajectory;
    the endpoints are interpolated when they fall inside an edge."""
    if a > b:
        raise ValueError(f"inverted interval ({a}, {b})")
    if a < traj.start or b > traj.end:
        raise ValueError(f"interval ({a}, {b}) outside [{traj.start}, {traj.end}]")
    if traj.is_exact:
        a, b = as_rational(a), as_rational(b)
    lo = bisect.bisect_right(traj.times, a)
    hi = bisect.bisect_left(traj.times, b)
    times = [a] + list(traj.times[lo:hi])
    coords = [position_at(traj, a)] + [tuple(c) for c in traj.coords[lo:hi]]
    if b > a:
        times.append(b)
        coords.append(position_at(traj, b))
    dtype = object if traj.is_exact else np.float64
    return Trajectory(np.array(times, dtype=dtype), np.array(coords, dtype=dtype))


def square_entry_exit(u: TrajectoryVertex, v: TrajectoryVertex, square: Square) -> list[tuple]:
    """Time interval during which the edge ``u -> v`` lies in the closed
    square (or 1D interval). At most one interval since both are convex."""
    lam_lo, lam_hi = 0, 1
    for lo, pu, pv in zip(square.lower_left, u.pos, v.pos):
        hi = lo + square.side
        d = pv - pu
        if d == 0:
            if not (lo <= pu <= hi):
                return []
            continue
        l1, l2 = (lo - pu) / d, (hi - pu) / d
        if l1 > l2:
            l1, l2 = l2, l1
        lam_lo = max(lam_lo, l1)
        lam_hi = min(lam_hi, l2)
        if lam_lo > lam_hi:
            return []
    dt = v.t - u.t
    return [(u.t + lam_lo * dt, u.t + lam_hi * dt)]
