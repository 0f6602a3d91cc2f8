import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from staymap.generators import random_walk
from staymap.geom import StayParams, Trajectory, mpq
from staymap.oracle import max_gap, scan_interval_1d
from staymap.staymap1d import (
    EventKind,
    EventPoint,
    Interval1D,
    IntervalKind,
    MembershipVerdict,
    candidate_positions,
    event_points,
    membership_1d,
    staymap_1d,
)

from conftest import halves, trajectories

TENT = [(0, 0), (4, 4), (8, 0)]
STATIONARY = [(0, 0), (10, 0)]
ZIGZAG = [(0, 0), (1, 1), (2, 0), (3, 1), (4, 0)]


def traj(rows, exact=True):
    return Trajectory.from_vertices(rows, exact=exact)


def oracle_interval(t, params):
    """Oracle scan over candidates and midpoints between them."""
    if t.n == 1 or t.duration <= params.g:
        return scan_interval_1d(t, params, [0])
    cands = candidate_positions(event_points(t, params.g), params.s)
    probes = list(cands) + [(a + b) / 2 for a, b in zip(cands, cands[1:])]
    return scan_interval_1d(t, params, probes)


@pytest.mark.parametrize("exact", [True, False])
@pytest.mark.parametrize(
    "rows, s, g, expected",
    [
        (STATIONARY, 1, 5, Interval1D.bounded(-1, 0)),
        (TENT, 1, mpq(7, 2), Interval1D.bounded(mpq(5, 4), mpq(7, 2))),
        (TENT, 1, 3, Interval1D.bounded(mpq(3, 2), 3)),
        ([(0, 0), (10, 10)], 1, 1, Interval1D.empty()),
        (TENT, 1, 8, Interval1D.whole_line()),
        ([(0, 3)], 1, 1, Interval1D.whole_line()),
    ],
)
def test_staymap_examples(rows, s, g, expected, exact):
    got = staymap_1d(traj(rows, exact), StayParams(s, g))
    assert got.kind is expected.kind
    if expected.kind is IntervalKind.BOUNDED:
        assert got.left == pytest.approx(float(expected.left), abs=1e-9)
        assert got.right == pytest.approx(float(expected.right), abs=1e-9)
        if exact:
            assert (got.left, got.right) == (expected.left, expected.right)


@pytest.mark.parametrize("exact", [True, False])
@pytest.mark.parametrize(
    "rows, s, g, p, expected",
    [
        (STATIONARY, 1, 5, mpq(-1, 2), MembershipVerdict.INSIDE),
        (STATIONARY, 1, 5, 3, MembershipVerdict.MAP_IS_LEFT),
        (STATIONARY, 1, 5, -3, MembershipVerdict.MAP_IS_RIGHT),
        (TENT, 1, mpq(7, 2), mpq(1, 2), MembershipVerdict.MAP_IS_RIGHT),
        (TENT, 1, mpq(7, 2), 2, MembershipVerdict.INSIDE),
        (TENT, 1, mpq(7, 2), 5, MembershipVerdict.MAP_IS_LEFT),
        # long stays both far left and far right of a narrow window
        ([(0, 0), (5, 0), (6, 10), (11, 10)], 1, 2, 5, MembershipVerdict.MAP_IS_EMPTY),
    ],
)
def test_membership_examples(rows, s, g, p, expected, exact):
    assert membership_1d(traj(rows, exact), p, StayParams(s, g), exact=exact) is expected


@pytest.mark.parametrize(
    "rows, g, expected",
    [
        (
            TENT,
            mpq(7, 2),
            [(0, EventKind.VERTEX), (mpq(9, 4), EventKind.GAP_EQUALS_G), (mpq(7, 2), EventKind.GAP_EQUALS_G), (4, EventKind.VERTEX)],
        ),
        (STATIONARY, 5, [(0, EventKind.VERTEX)]),
        (ZIGZAG, 1, [(0, EventKind.VERTEX), (mpq(1, 2), EventKind.GAP_EQUALS_G), (1, EventKind.VERTEX)]),
    ],
)
def test_event_point_examples(rows, g, expected):
    assert event_points(traj(rows), g) == [EventPoint(p, k) for p, k in expected]


@pytest.mark.parametrize(
    "events, s, expected",
    [
        ([0, 4], 1, [-1, 0, 1, 3, 4, 5]),
        ([mpq(9, 4), mpq(7, 2), 0, 4], 1, [-1, 0, 1, mpq(5, 4), mpq(9, 4), mpq(5, 2), 3, mpq(13, 4), mpq(7, 2), 4, mpq(9, 2), 5]),
        ([0], 2, [-2, 0, 2]),
    ],
)
def test_candidate_positions(events, s, expected):
    assert candidate_positions(events, s) == expected


def test_interval_invariants():
    with pytest.raises(ValueError):
        Interval1D.bounded(2, 1)
    point = Interval1D.bounded(1, 1)
    assert 1 in point and 2 not in point
    assert 5 in Interval1D.whole_line() and 0 not in Interval1D.empty()


def test_float_and_exact_routes_agree_on_walks():
    for seed in range(20):
        t = random_walk(40, 1, seed, step_scale=mpq(1, 2))
        params = StayParams(mpq(3, 2), 3)
        a = staymap_1d(t, params)
        b = staymap_1d(t.as_float(), params)
        assert a.kind is b.kind
        if a.kind is IntervalKind.BOUNDED:
            assert abs(float(a.left) - b.left) <= 1e-9 and abs(float(a.right) - b.right) <= 1e-9


@given(trajectories(max_n=10), halves(1, 4), halves(1, 6))
def test_matches_oracle_scan(t, s, g):
    params = StayParams(s, g)
    assert staymap_1d(t, params) == oracle_interval(t, params)


@given(trajectories(max_n=10), halves(1, 4), halves(1, 6), st.lists(st.integers(-60, 60), min_size=3, max_size=3))
def test_continuity(t, s, g, ks):
    assume(t.duration > g)
    params = StayParams(s, g)
    p, v, q = sorted(mpq(k, 8) for k in ks)
    inside = MembershipVerdict.INSIDE
    if membership_1d(t, p, params) is inside and membership_1d(t, q, params) is inside:
        assert membership_1d(t, v, params) is inside


@given(trajectories(max_n=10), halves(1, 4), halves(1, 6))
def test_endpoints_are_candidates(t, s, g):
    assume(t.duration > g)
    result = staymap_1d(t, StayParams(s, g))
    if result.kind is IntervalKind.BOUNDED:
        cands = set(candidate_positions(event_points(t, g), s))
        assert result.left in cands and result.right in cands


@given(trajectories(max_n=10), halves(1, 4), halves(1, 6), halves(0, 3))
def test_monotone_in_g(t, s, g, extra):
    small = staymap_1d(t, StayParams(s, g))
    large = staymap_1d(t, StayParams(s, g + extra))
    assert large.issuperset(small)


@given(trajectories(max_n=14), halves(1, 6))
def test_event_count_linear(t, g):
    assert len(event_points(t, g)) <= 5 * t.n


@given(trajectories(max_n=10), halves(1, 4), halves(1, 6), st.integers(-80, 80))
def test_membership_agrees_with_oracle(t, s, g, k):
    assume(t.duration > g)
    p = mpq(k, 8)
    params = StayParams(s, g)
    verdict = membership_1d(t, p, params)
    gap = max_gap(t, p, s).max_gap
    assert (verdict is MembershipVerdict.INSIDE) == (gap <= g)
    # the verdict must point toward the map when it exists
    result = staymap_1d(t, params)
    if verdict is MembershipVerdict.MAP_IS_LEFT and result.kind is IntervalKind.BOUNDED:
        assert result.right < p
    if verdict is MembershipVerdict.MAP_IS_RIGHT and result.kind is IntervalKind.BOUNDED:
        assert result.left > p
    if verdict is MembershipVerdict.MAP_IS_EMPTY:
        assert result.kind is IntervalKind.EMPTY


def test_large_float_input_uses_compiled_path():
    t = random_walk(50_000, 1, 3, exact=False, restart_every=64)
    result = staymap_1d(t, StayParams(4, 8))
    assert result.kind in set(IntervalKind)
