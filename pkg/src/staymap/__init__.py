"""Stay maps of moving entities.

A stay point is an axis-aligned square of side ``s`` that the entity never
leaves for more than ``g`` time units at a stretch; the stay map is the
set of lower-left corners of all stay points.
"""

from .generators import GridConstructionParams, grid_construction, random_walk
from .geom import StayParams, Trajectory
from .oracle import Classification, GapReport, grid_scan, max_gap, oracle_classify
from .regions import RegionSet, validate_regionset
from .staymap1d import Interval1D, IntervalKind, MembershipVerdict, membership_1d, staymap_1d
from .staymap2d import approx_staymap, snapshot, snapshot_times

__all__ = [
    "Classification",
    "GapReport",
    "GridConstructionParams",
    "Interval1D",
    "IntervalKind",
    "MembershipVerdict",
    "RegionSet",
    "StayParams",
    "Trajectory",
    "approx_staymap",
    "grid_construction",
    "grid_scan",
    "max_gap",
    "membership_1d",
    "oracle_classify",
    "random_walk",
    "snapshot",
    "snapshot_times",
    "staymap_1d",
    "validate_regionset",
]
