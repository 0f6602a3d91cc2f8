import numpy as np
import pytest
from hypothesis import given, strategies as st

from staymap.generators import random_walk
from staymap.geom import StayParams, Trajectory, mpq
from staymap.oracle import (
    Classification,
    classify_gap,
    exact_clusters,
    grid_scan,
    max_gap,
    max_gaps,
    oracle_classify,
)
from staymap.staymap1d import MembershipVerdict, membership_1d

from conftest import halves, trajectories

STATIONARY_2D = Trajectory.from_vertices([(0, (0, 0)), (10, (0, 0))])
TENT = Trajectory.from_vertices([(0, 0), (4, 4), (8, 0)])


@pytest.mark.parametrize(
    "traj, corner, s, gap, witness",
    [
        (STATIONARY_2D, (mpq(-1, 2), mpq(-1, 2)), 1, 0, (0, 0)),
        (STATIONARY_2D, (5, 5), 1, 10, (0, 10)),
        (TENT, (mpq(3, 2),), 1, 3, (mpq(5, 2), mpq(11, 2))),
    ],
)
def test_max_gap_examples(traj, corner, s, gap, witness):
    rep = max_gap(traj, corner, s)
    assert rep.max_gap == gap
    assert rep.witness == witness


@pytest.mark.parametrize(
    "gap, expected",
    [
        (2, Classification.EXACT),
        (mpq(5, 2), Classification.APPROX_ONLY),
        (mpq(21, 10), Classification.APPROX_ONLY),
        (3, Classification.OUTSIDE),
    ],
)
def test_classify_closed_bounds(gap, expected):
    assert classify_gap(gap, StayParams(1, 2, mpq(1, 4))) is expected


def test_classify_without_epsilon():
    params = StayParams(1, 2)
    assert classify_gap(mpq(21, 10), params) is Classification.OUTSIDE
    assert oracle_classify(STATIONARY_2D, (5, 5), params) is Classification.OUTSIDE


@given(trajectories(dim=2), st.integers(-16, 16), st.integers(-16, 16), halves(1, 3))
def test_presence_and_absence_partition_time(traj, cx, cy, s):
    rep = max_gap(traj, (mpq(cx, 4), mpq(cy, 4)), s)
    present = sum(b - a for a, b in rep.presence)
    absent = sum(b - a for a, b in rep.absences)
    assert present + absent == traj.duration
    assert 0 <= rep.max_gap <= traj.duration
    a, b = rep.witness
    assert traj.start <= a <= b <= traj.end and b - a == rep.max_gap


@given(trajectories(dim=2), st.integers(-16, 16), st.integers(-16, 16), halves(1, 3), halves(0, 2))
def test_gap_monotone_in_side(traj, cx, cy, s, extra):
    corner = (mpq(cx, 4), mpq(cy, 4))
    assert max_gap(traj, corner, s + extra).max_gap <= max_gap(traj, corner, s).max_gap


@pytest.mark.parametrize("dim", [1, 2])
def test_vectorised_matches_scalar(dim):
    rng = np.random.default_rng(dim)
    for seed in range(8):
        traj = random_walk(25, dim, seed)
        corners = rng.integers(-40, 20, size=(60, dim))
        exact = [[mpq(int(c), 8) for c in row] for row in corners]
        scalar = [max_gap(traj, tuple(row), 2).max_gap for row in exact]
        vec_exact = max_gaps(traj, np.array(exact, dtype=object), 2, exact=True)
        vec_float = max_gaps(traj, corners / 8.0, 2)
        assert list(vec_exact) == scalar
        assert np.allclose(vec_float, [float(v) for v in scalar], atol=1e-9)


@given(trajectories(max_n=10), halves(1, 4), halves(1, 6), st.integers(-60, 60))
def test_one_dimensional_consistency(traj, s, g, k):
    params = StayParams(s, g)
    p = mpq(k, 8)
    if traj.duration <= g:
        assert oracle_classify(traj, p, params) is Classification.EXACT
        return
    inside = membership_1d(traj, p, params) is MembershipVerdict.INSIDE
    assert inside == (oracle_classify(traj, p, params) is Classification.EXACT)


def test_grid_scan_stationary():
    scan = grid_scan(STATIONARY_2D, (-2, -2, 1, 1), mpq(1, 2), StayParams(1, 5))
    pts = {tuple(p) for p in scan.points(Classification.EXACT)}
    expected = {(x, y) for x in (-1, mpq(-1, 2), 0) for y in (-1, mpq(-1, 2), 0)}
    assert pts == expected
    assert exact_clusters(scan) == 1


def test_grid_scan_short_trajectory_all_exact():
    traj = Trajectory.from_vertices([(0, (0, 0)), (1, (5, 5))])
    scan = grid_scan(traj, (-3, -3, 3, 3), 1, StayParams(1, 2))
    assert scan.count(Classification.EXACT) == scan.labels.size


def test_grid_scan_one_dimensional():
    scan = grid_scan(TENT, (0, 4), mpq(1, 4), StayParams(1, 3))
    pts = list(scan.points(Classification.EXACT))
    assert pts[0] == mpq(3, 2) and pts[-1] == 3


def test_float_scan_matches_exact_on_boundary_touches():
    # this lattice passes through corners whose square boundary touches
    # the trajectory exactly; rounding used to drop the touch
    traj = random_walk(12, 2, 544, step_scale=mpq(1, 2))
    params = StayParams(2, 3, mpq(1, 10))
    c = (mpq(-2241, 1000), mpq(-4461, 2000))
    bbox = (c[0] - mpq(1, 4), c[1] - mpq(1, 4), c[0] + mpq(1, 4), c[1] + mpq(1, 4))
    fast = grid_scan(traj, bbox, mpq(1, 40), params)
    slow = grid_scan(traj, bbox, mpq(1, 40), params, exact=True)
    assert [lab.value for lab in fast.labels.ravel()] == [lab.value for lab in slow.labels.ravel()]
