"""Exact stay map of a one-dimensional trajectory in O(n log n).

The two hot loops (the membership test and the event sweep) are written
in the subset of Python that numba compiles. The compiled versions run on
float64 arrays; the same source runs uncompiled (``.py_func``) on object
arrays of rationals, which gives the exact route without a second
implementation.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numba import njit

from .geom import StayParams, Trajectory, as_rational

# Exact arithmetic is the default up to this many vertices.
EXACT_LIMIT = 20_000

INSIDE, MAP_LEFT, MAP_RIGHT, MAP_EMPTY = 0, 1, 2, 3
VERTEX_EVENT, GAP_EVENT = 0, 1


class MembershipVerdict(Enum):
    INSIDE = INSIDE
    MAP_IS_LEFT = MAP_LEFT
    MAP_IS_RIGHT = MAP_RIGHT
    MAP_IS_EMPTY = MAP_EMPTY


class EventKind(Enum):
    VERTEX = VERTEX_EVENT
    GAP_EQUALS_G = GAP_EVENT


@dataclass(frozen=True)
class EventPoint:
    position: object
    kind: EventKind = EventKind.VERTEX

    def __lt__(self, other):
        return (self.position, self.kind.value) < (other.position, other.kind.value)


class IntervalKind(str, Enum):
    EMPTY = "empty"
    BOUNDED = "bounded"
    WHOLE_LINE = "whole_line"


@dataclass(frozen=True)
class Interval1D:
    kind: IntervalKind
    left: object = None
    right: object = None

    def __post_init__(self):
        if self.kind is IntervalKind.BOUNDED and not self.left <= self.right:
            raise ValueError(f"left {self.left} > right {self.right}")

    @classmethod
    def empty(cls) -> "Interval1D":
        return cls(IntervalKind.EMPTY)

    @classmethod
    def whole_line(cls) -> "Interval1D":
        return cls(IntervalKind.WHOLE_LINE)

    @classmethod
    def bounded(cls, left, right) -> "Interval1D":
        return cls(IntervalKind.BOUNDED, left, right)

    def __contains__(self, p) -> bool:
        if self.kind is IntervalKind.WHOLE_LINE:
            return True
        if self.kind is IntervalKind.EMPTY:
            return False
        return self.left <= p <= self.right

    def issuperset(self, other: "Interval1D") -> bool:
        if self.kind is IntervalKind.WHOLE_LINE or other.kind is IntervalKind.EMPTY:
            return True
        if other.kind is IntervalKind.WHOLE_LINE or self.kind is IntervalKind.EMPTY:
            return False
        return self.left <= other.left and other.right <= self.right


@njit(cache=True)
def _membership_kernel(t, x, p, q, g, slack):
    # One pass over the edges, tracking the current absence from [p, q]
    # and the side of the interval the entity is on while absent.
    n = t.shape[0]
    left_bad = False
    right_bad = False
    absent = not (p <= x[0] and x[0] <= q)
    start = t[0]
    below = x[0] < p
    for i in range(n - 1):
        ta = t[i]
        tb = t[i + 1]
        xa = x[i]
        xb = x[i + 1]
        if xa == xb:
            if not (p <= xa and xa <= q):
                continue
            lo = ta
            hi = tb
        else:
            rate = (tb - ta) / (xb - xa)
            tp = ta + (p - xa) * rate
            tq = ta + (q - xa) * rate
            if tp <= tq:
                lo = tp
                hi = tq
            else:
                lo = tq
                hi = tp
            if lo < ta:
                lo = ta
            if hi > tb:
                hi = tb
            if lo > hi:
                continue
        if absent:
            if lo - start > g + slack:
                if below:
                    left_bad = True
                else:
                    right_bad = True
            absent = False
        if hi < tb:
            absent = True
            start = hi
            below = xb < p
    if absent and t[n - 1] - start > g + slack:
        if below:
            left_bad = True
        else:
            right_bad = True
    if left_bad and right_bad:
        return 3
    if left_bad:
        return 1
    if right_bad:
        return 2
    return 0


@njit(cache=True)
def _high_bit(word):
    r = 0
    for sh in (32, 16, 8, 4, 2, 1):
        if word >> np.uint64(sh):
            word = word >> np.uint64(sh)
            r += sh
    return r


@njit(cache=True)
def _bits_set(bits, offs, nlev, i):
    one = np.uint64(1)
    for lev in range(nlev):
        w = i >> 6
        idx = offs[lev] + w
        old = bits[idx]
        bits[idx] = old | (one << np.uint64(i & 63))
        if old != 0:
            break
        i = w


@njit(cache=True)
def _bits_clear(bits, offs, nlev, i):
    one = np.uint64(1)
    for lev in range(nlev):
        w = i >> 6
        idx = offs[lev] + w
        bits[idx] = bits[idx] & ~(one << np.uint64(i & 63))
        if bits[idx] != 0:
            break
        i = w


@njit(cache=True)
def _bits_pred(bits, offs, nlev, i):
    # largest member below i, or -1
    one = np.uint64(1)
    lev = 0
    while lev < nlev:
        w = i >> 6
        word = bits[offs[lev] + w] & ((one << np.uint64(i & 63)) - one)
        if word != 0:
            j = w * 64 + _high_bit(word)
            while lev > 0:
                lev -= 1
                j = j * 64 + _high_bit(bits[offs[lev] + j])
            return j
        i = w
        lev += 1
    return -1


@njit(cache=True)
def _sweep_kernel(t, x, order, g, edge, out_y, out_kind):
    # Sweep a horizontal line upward through the time-location plane.
    # Active (non-horizontal) edges cross the line in index order, so a
    # doubly linked list over edge indices is the sweep status; a bitset
    # tree with 64-way fan-out over the same indices finds the predecessor
    # of an inserted edge in a few word reads.
    # Two sentinels stand for the trajectory start (left) and end (right),
    # so the lead-in and trailing gaps are ordinary adjacencies. Each
    # adjacency's width is linear in y; the height where it equals g is
    # scheduled on the heap and discarded if the adjacency dies first.
    # Per-edge rows edge[k] = (low, high, rate, intercept) and
    # link[k] = (next, prev, stamp) keep random accesses to one cache line.
    n = t.shape[0]
    m = n - 1
    left = m
    right = m + 1
    zero = t[0] - t[0]
    for k in range(m):
        if x[k] != x[k + 1]:
            edge[k, 2] = (t[k + 1] - t[k]) / (x[k + 1] - x[k])
            edge[k, 3] = t[k] - x[k] * edge[k, 2]
        else:
            edge[k, 2] = zero
            edge[k, 3] = t[k]
        edge[k, 0] = min(x[k], x[k + 1])
        edge[k, 1] = max(x[k], x[k + 1])
    for k in (left, right):
        edge[k, 0] = zero
        edge[k, 1] = zero
        edge[k, 2] = zero
    edge[left, 3] = t[0]
    edge[right, 3] = t[n - 1]

    link = np.full((m + 2, 3), -1, np.int64)
    link[:, 2] = 0
    link[left, 0] = right
    link[right, 1] = left
    offs = np.zeros(12, np.int64)
    nlev = 0
    size = m
    total = 0
    while True:
        words = (size + 63) // 64
        offs[nlev] = total
        total += words
        nlev += 1
        if words <= 1:
            break
        size = words
    bits = np.zeros(total, np.uint64)
    counter = 0
    born = np.empty(8, np.int64)

    # vertices arrive presorted in ``order``; only gap events need a heap,
    # and a vertex goes before a gap event at the same height
    heap = [(zero, 0, 0, 0)]
    heap.pop()
    cnt = 0
    nv = 0
    while nv < n or len(heap) > 0:
        if nv == n or (len(heap) > 0 and heap[0][0] < x[order[nv]]):
            y, a, b, st = heapq.heappop(heap)
            if link[a, 0] == b and link[a, 2] == st:
                out_y[cnt] = y
                out_kind[cnt] = 1
                cnt += 1
            continue
        v = order[nv]
        nv += 1
        y = x[v]
        out_y[cnt] = y
        out_kind[cnt] = 0
        cnt += 1
        nborn = 0
        # removals first so predecessor queries see the final status
        for e in (v - 1, v):
            if e < 0 or e >= m or edge[e, 0] == edge[e, 1]:
                continue
            if edge[e, 1] == y:
                pe = link[e, 1]
                ne = link[e, 0]
                link[pe, 0] = ne
                link[ne, 1] = pe
                link[e, 0] = -1
                link[e, 1] = -1
                _bits_clear(bits, offs, nlev, e)
                counter += 1
                link[pe, 2] = counter
                born[nborn] = pe
                nborn += 1
        for e in (v - 1, v):
            if e < 0 or e >= m or edge[e, 0] == edge[e, 1]:
                continue
            if edge[e, 0] == y:
                pe = _bits_pred(bits, offs, nlev, e)
                if pe < 0:
                    pe = left
                ne = link[pe, 0]
                link[pe, 0] = e
                link[e, 1] = pe
                link[e, 0] = ne
                link[ne, 1] = e
                _bits_set(bits, offs, nlev, e)
                counter += 1
                link[pe, 2] = counter
                born[nborn] = pe
                nborn += 1
                counter += 1
                link[e, 2] = counter
                born[nborn] = e
                nborn += 1
        for j in range(nborn):
            a = born[j]
            duplicate = False
            for jj in range(j):
                if born[jj] == a:
                    duplicate = True
            if duplicate or link[a, 0] < 0:
                continue
            b = link[a, 0]
            slope = edge[b, 2] - edge[a, 2]
            if slope == zero:
                continue
            ys = (g - (edge[b, 3] - edge[a, 3])) / slope
            if not ys > y:
                continue
            if a < m and ys >= edge[a, 1]:
                continue
            if b < m and ys >= edge[b, 1]:
                continue
            heapq.heappush(heap, (ys, a, b, link[a, 2]))
    return cnt


def _use_exact(traj: Trajectory, exact: bool | None) -> bool:
    if exact is None:
        return traj.is_exact and traj.n <= EXACT_LIMIT
    return exact


def _arrays(traj: Trajectory, exact: bool):
    if traj.dim != 1:
        raise ValueError("expected a one-dimensional trajectory")
    if exact:
        t = traj.as_exact()
        return t.times, t.coords[:, 0]
    t = traj.as_float()
    return np.ascontiguousarray(t.times), np.ascontiguousarray(t.coords[:, 0])


def _number(value, exact: bool):
    return as_rational(value) if exact else float(value)


def _slack(t, exact: bool) -> float:
    if exact:
        return 0
    return 1e-9 * max(1.0, abs(float(t[-1] - t[0])))


def _reach(x, exact: bool) -> float:
    # Float probes widen the interval slightly: map endpoints sit where the
    # interval just touches a vertex, and rounding must not lose the touch.
    if exact:
        return 0
    return 1e-9 * max(1.0, float(np.max(np.abs(x))))


def membership_1d(
    traj: Trajectory, p, params: StayParams, exact: bool | None = None
) -> MembershipVerdict:
    """Decide whether ``p`` is the left end of a stay point, and if not on
    which side of ``p`` the stay map lies."""
    exact = _use_exact(traj, exact)
    t, x = _arrays(traj, exact)
    kernel = _membership_kernel.py_func if exact else _membership_kernel
    p = _number(p, exact)
    reach = _reach(x, exact)
    s = _number(params.s, exact)
    code = kernel(t, x, p - reach, p + s + reach, _number(params.g, exact), _slack(t, exact))
    return MembershipVerdict(code)


def _event_array(t, x, g, exact: bool):
    n = len(t)
    dtype = object if exact else np.float64
    edge = np.empty((n + 1, 4), dtype=dtype)
    out_y = np.empty(5 * n + 2, dtype=dtype)
    out_kind = np.empty(5 * n + 2, dtype=np.int64)
    kernel = _sweep_kernel.py_func if exact else _sweep_kernel
    order = np.argsort(x, kind="stable")
    cnt = kernel(t, x, order, _number(g, exact), edge, out_y, out_kind)
    return out_y[:cnt], out_kind[:cnt]


def event_points(traj: Trajectory, g, exact: bool | None = None) -> list[EventPoint]:
    """Vertex positions plus every position where two time-contiguous
    visits (or the start and the first visit, or the last visit and the
    end) are exactly ``g`` apart. Sorted, without repeats."""
    if traj.n < 2:
        raise ValueError("event points need at least two vertices")
    exact = _use_exact(traj, exact)
    t, x = _arrays(traj, exact)
    ys, kinds = _event_array(t, x, g, exact)
    seen = {(y, int(k)) for y, k in zip(ys, kinds)}
    if not exact:
        seen = {(float(y), k) for y, k in seen}
    return sorted(EventPoint(y, EventKind(k)) for y, k in seen)


def candidate_positions(events, s) -> list:
    """Sorted, deduplicated closure of the event positions under +-s."""
    positions = [e.position if isinstance(e, EventPoint) else e for e in events]
    if not positions:
        raise ValueError("no events")
    if isinstance(positions[0], float):
        return list(_candidates(np.array(positions), float(s)))
    s = as_rational(s)
    return list(_candidates(np.array([as_rational(p) for p in positions], dtype=object), s))


def _candidates(positions: np.ndarray, s):
    return np.unique(np.concatenate([positions - s, positions, positions + s]))


def staymap_1d(traj: Trajectory, params: StayParams, exact: bool | None = None) -> Interval1D:
    """Stay map of a 1D trajectory: the set of left ends ``p`` such that the
    entity never spends more than ``g`` outside ``[p, p + s]``."""
    if traj.dim != 1:
        raise ValueError("expected a one-dimensional trajectory")
    if traj.n == 1 or traj.duration <= params.g:
        return Interval1D.whole_line()
    exact = _use_exact(traj, exact)
    t, x = _arrays(traj, exact)
    s, g = _number(params.s, exact), _number(params.g, exact)
    slack = _slack(t, exact)
    reach = _reach(x, exact)
    kernel = _membership_kernel.py_func if exact else _membership_kernel

    ys, _ = _event_array(t, x, g, exact)
    cands = _candidates(ys, s)

    def probe(i):
        p = cands[i]
        return kernel(t, x, p - reach, p + s + reach, g, slack)

    lo, hi = 0, len(cands) - 1
    found = -1
    while lo <= hi:
        mid = (lo + hi) // 2
        verdict = probe(mid)
        if verdict == INSIDE:
            found = mid
            break
        if verdict == MAP_EMPTY:
            return Interval1D.empty()
        if verdict == MAP_LEFT:
            hi = mid - 1
        else:
            lo = mid + 1
    if found < 0:
        return Interval1D.empty()

    a, b = lo, found
    while a < b:
        mid = (a + b) // 2
        if probe(mid) == INSIDE:
            b = mid
        else:
            a = mid + 1
    left = cands[b]
    a, b = found, hi
    while a < b:
        mid = (a + b + 1) // 2
        if probe(mid) == INSIDE:
            a = mid
        else:
            b = mid - 1
    right = cands[a]
    if not exact:
        left, right = float(left), float(right)
    return Interval1D.bounded(left, right)
