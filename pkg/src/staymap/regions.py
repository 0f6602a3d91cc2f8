"""Closed planar regions made of polygons with holes, backed by shapely."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import shapely
from shapely.geometry import GeometryCollection, MultiPolygon, Polygon
from shapely.geometry.base import BaseGeometry

# Faces smaller than this (relative to the square area) are rounding slivers
# left by tangent polygons and are dropped.
SLIVER_AREA = 1e-12


def _flatten(geom: BaseGeometry) -> list[BaseGeometry]:
    if geom.is_empty:
        return []
    if hasattr(geom, "geoms"):
        parts: list[BaseGeometry] = []
        for sub in geom.geoms:
            parts.extend(_flatten(sub))
        return parts
    return [geom]


def _split(geom: BaseGeometry, min_area: float) -> tuple[MultiPolygon, GeometryCollection]:
    """Faces (2D parts) and the lower-dimensional or sliver residue."""
    if not geom.is_valid:
        geom = shapely.make_valid(geom)
    faces, residue = [], []
    for part in _flatten(geom):
        if isinstance(part, Polygon) and part.area > min_area:
            faces.append(part)
        elif not part.is_empty:
            residue.append(part)
    # drop collinear ring vertices left over from unions
    faces = [shapely.geometry.polygon.orient(p.simplify(0), sign=1.0) for p in faces]
    faces.sort(key=lambda p: p.bounds)
    return MultiPolygon(faces), GeometryCollection(residue)


@dataclass(frozen=True)
class RegionSet:
    """Set of interior-disjoint polygons (outer rings counterclockwise,
    holes clockwise), or the whole plane when ``whole_plane`` is set.

    ``residue`` holds segments, points and slivers that belong to the
    closed point set but are not faces; it takes part in membership tests
    and intersections but is not reported as polygons.
    """

    geometry: MultiPolygon = field(default_factory=MultiPolygon)
    whole_plane: bool = False
    residue: GeometryCollection = field(default_factory=GeometryCollection)

    @classmethod
    def from_geometry(cls, geom: BaseGeometry, min_area: float = 0.0) -> "RegionSet":
        faces, residue = _split(geom, min_area)
        return cls(faces, residue=residue)

    @classmethod
    def from_rings(cls, polygons) -> "RegionSet":
        """``polygons`` is a list of ``[outer, hole, ...]`` ring lists."""
        parts = [Polygon(rings[0], rings[1:]) for rings in polygons]
        return cls.from_geometry(MultiPolygon(parts) if parts else MultiPolygon())

    @classmethod
    def plane(cls) -> "RegionSet":
        return cls(MultiPolygon(), whole_plane=True)

    def closure(self) -> BaseGeometry:
        """Faces together with the residue."""
        if self.residue.is_empty:
            return self.geometry
        return GeometryCollection(list(self.geometry.geoms) + list(self.residue.geoms))

    @property
    def polygons(self) -> list[Polygon]:
        return list(self.geometry.geoms)

    def rings(self) -> list[list[list[tuple]]]:
        """Rings per polygon without the closing vertex."""
        out = []
        for poly in self.polygons:
            rings = [poly.exterior] + list(poly.interiors)
            out.append([list(r.coords)[:-1] for r in rings])
        return out

    def __len__(self) -> int:
        return len(self.geometry.geoms)

    @property
    def is_empty(self) -> bool:
        """True when there are no faces (the residue may still hold points)."""
        return not self.whole_plane and self.geometry.is_empty

    @property
    def area(self) -> float:
        return float("inf") if self.whole_plane else self.geometry.area

    def contains(self, points, tol: float = 0.0) -> np.ndarray:
        """Closed membership of points ``(P, 2)``; ``tol`` widens the region."""
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        if self.whole_plane:
            return np.ones(len(pts), dtype=bool)
        closed = self.closure()
        if closed.is_empty:
            return np.zeros(len(pts), dtype=bool)
        geoms = shapely.points(pts)
        if tol > 0:
            return shapely.dwithin(closed, geoms, tol)
        # for closed sets, meeting a point is the same as covering it
        return shapely.intersects(closed, geoms)

    def sample(self, count: int, seed: int = 0) -> np.ndarray:
        """Uniform random points of the region (rejection sampling)."""
        if self.whole_plane or self.is_empty:
            raise ValueError("can only sample a nonempty bounded region")
        rng = np.random.default_rng(seed)
        x0, y0, x1, y1 = self.geometry.bounds
        out = []
        total = 0
        while total < count:
            batch = rng.uniform((x0, y0), (x1, y1), size=(max(2 * count, 64), 2))
            batch = batch[self.contains(batch)]
            out.append(batch)
            total += len(batch)
        return np.vstack(out)[:count]


def validate_regionset(region: RegionSet, tol: float = 1e-9) -> list[str]:
    """Problems with ring simplicity, orientation or overlap; empty if valid."""
    if region.whole_plane:
        return [] if region.geometry.is_empty else ["whole-plane marker carries polygons"]
    problems = []
    polys = region.polygons
    for i, poly in enumerate(polys):
        if not poly.is_valid:
            problems.append(f"polygon {i}: {shapely.is_valid_reason(poly)}")
        if not poly.exterior.is_simple:
            problems.append(f"polygon {i}: outer ring not simple")
        if not poly.exterior.is_ccw:
            problems.append(f"polygon {i}: outer ring not counterclockwise")
        for j, hole in enumerate(poly.interiors):
            if not hole.is_simple:
                problems.append(f"polygon {i} hole {j}: not simple")
            if hole.is_ccw:
                problems.append(f"polygon {i} hole {j}: not clockwise")
    if len(polys) < 2:
        return problems
    tree = shapely.STRtree(polys)
    for i, j in zip(*tree.query(polys, predicate="intersects")):
        if i < j and polys[i].intersection(polys[j]).area > tol:
            problems.append(f"polygons {i} and {j} overlap")
    return problems
