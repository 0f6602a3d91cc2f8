"""Trajectory CSV files, region documents and SVG rendering."""

from __future__ import annotations

import csv
import io
import json
import xml.etree.ElementTree as ET
from fractions import Fraction
from pathlib import Path

import numpy as np

from .geom import Trajectory, as_rational, to_fraction
from .regions import RegionSet
from .staymap1d import Interval1D, IntervalKind

ROUND_TRIP_TOL = Fraction(1, 10**9)
HEADERS = {("t", "x"): 1, ("t", "x", "y"): 2}


class InputError(ValueError):
    """Malformed input, reported with its position."""

    def __init__(self, message: str, source: str = "<input>", line: int | None = None, col: int | None = None):
        self.source, self.line, self.col = source, line, col
        where = source
        if line is not None:
            where += f":{line}"
            if col is not None:
                where += f":{col}"
        super().__init__(f"{where}: {message}")


def format_number(value) -> str:
    """Exact decimal when the value has one, else the shortest decimal
    within 1e-9 of it."""
    q = to_fraction(value)
    den = q.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    if den == 1:
        digits = 0
        while (q * 10**digits).denominator != 1:
            digits += 1
        return _decimal(q, digits)
    for digits in range(1, 40):
        approx = Fraction(round(q * 10**digits), 10**digits)
        if abs(approx - q) <= ROUND_TRIP_TOL:
            return _decimal(approx, digits)
    raise AssertionError("unreachable")


def _decimal(q: Fraction, digits: int) -> str:
    scaled = q * 10**digits
    assert scaled.denominator == 1
    n = scaled.numerator
    sign = "-" if n < 0 else ""
    n = abs(n)
    if digits == 0:
        return f"{sign}{n}"
    whole, frac = divmod(n, 10**digits)
    frac_s = str(frac).rjust(digits, "0").rstrip("0")
    if not frac_s:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac_s}"


def json_number(value):
    """Number for a JSON document: int when integral, else a float whose
    repr is the shortest decimal from ``format_number``."""
    text = format_number(value)
    return int(text) if "." not in text else float(text)


def parse_trajectory(text: str, source: str = "<input>") -> Trajectory:
    """Parse ``t,x`` or ``t,x,y`` CSV text into an exact trajectory."""
    rows = list(csv.reader(io.StringIO(text)))
    # skip fully blank lines but keep line numbers
    numbered = [(i + 1, r) for i, r in enumerate(rows) if any(c.strip() for c in r)]
    if not numbered:
        raise InputError("empty file", source)
    line, header = numbered[0]
    key = tuple(c.strip().lower() for c in header)
    if key not in HEADERS:
        raise InputError(f"expected header 't,x' or 't,x,y', got {','.join(header)!r}", source, line, 1)
    width = len(key)
    times, coords = [], []
    for line, row in numbered[1:]:
        if len(row) != width:
            raise InputError(f"expected {width} fields, got {len(row)}", source, line, min(len(row), width) + 1)
        values = []
        for col, cell in enumerate(row, start=1):
            try:
                values.append(as_rational(cell.strip()))
            except (ValueError, ZeroDivisionError, TypeError):
                raise InputError(f"not a number: {cell.strip()!r}", source, line, col) from None
        if times and values[0] <= times[-1]:
            raise InputError("timestamps must be strictly increasing", source, line, 1)
        times.append(values[0])
        coords.append(values[1:])
    if not times:
        raise InputError("no vertices", source)
    return Trajectory(np.array(times, dtype=object), np.array(coords, dtype=object))


def read_trajectory(path: str | Path) -> Trajectory:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read file: {exc.strerror}", str(path)) from None
    return parse_trajectory(text, str(path))


def serialize_trajectory(traj: Trajectory) -> str:
    header = "t,x" if traj.dim == 1 else "t,x,y"
    lines = [header]
    for t, pos in traj.vertices():
        lines.append(",".join(format_number(v) for v in (t, *pos)))
    return "\n".join(lines) + "\n"


def interval_document(interval: Interval1D) -> dict:
    doc = {"kind": interval.kind.value}
    if interval.kind is IntervalKind.BOUNDED:
        doc["left"] = json_number(interval.left)
        doc["right"] = json_number(interval.right)
    return doc


def region_document(region: RegionSet) -> dict:
    if region.whole_plane:
        return {"kind": "whole_plane"}
    polygons = [
        [[[json_number(x), json_number(y)] for x, y in ring] for ring in rings]
        for rings in region.rings()
    ]
    return {"kind": "polygons", "polygons": polygons}


def document_region(doc: dict) -> RegionSet | Interval1D:
    """Inverse of ``region_document`` / ``interval_document``."""
    kind = doc.get("kind")
    if kind == "whole_plane":
        return RegionSet.plane()
    if kind == "polygons":
        return RegionSet.from_rings(doc["polygons"])
    if kind in {k.value for k in IntervalKind}:
        if kind == IntervalKind.BOUNDED.value:
            return Interval1D.bounded(as_rational(doc["left"]), as_rational(doc["right"]))
        return Interval1D(IntervalKind(kind))
    raise InputError(f"unknown region kind {kind!r}")


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True) + "\n"


def render_svg(traj: Trajectory, region: RegionSet, width: int = 600, margin: float = 0.05) -> str:
    """SVG with the stay map (one path per polygon) under the trajectory."""
    pts = [(float(x), float(y)) for x, y in traj.coords]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    if not region.whole_plane:
        for rings in region.rings():
            for x, y in rings[0]:
                xs.append(x)
                ys.append(y)
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-9)
    pad = span * margin
    x0, y0, span = x0 - pad, y0 - pad, span + 2 * pad
    scale = width / span

    def sx(x):
        return format_number((x - x0) * scale)

    def sy(y):
        return format_number(width - (y - y0) * scale)

    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(width),
        height=str(width),
        viewBox=f"0 0 {width} {width}",
    )
    if region.whole_plane:
        ET.SubElement(svg, "rect", {"class": "staymap", "x": "0", "y": "0", "width": str(width), "height": str(width), "fill": "#9ecae1"})
    for rings in region.rings():
        d = " ".join("M " + " L ".join(f"{sx(x)} {sy(y)}" for x, y in ring) + " Z" for ring in rings)
        ET.SubElement(svg, "path", {"class": "staymap", "d": d, "fill": "#9ecae1", "fill-rule": "evenodd", "stroke": "#3182bd"})
    ET.SubElement(
        svg,
        "polyline",
        {"class": "trajectory", "points": " ".join(f"{sx(x)},{sy(y)}" for x, y in pts), "fill": "none", "stroke": "#de2d26"},
    )
    return ET.tostring(svg, encoding="unicode") + "\n"
