"""Write an SVG of the grid construction and its approximate stay map."""

import argparse
from pathlib import Path

from staymap.generators import GridConstructionParams, grid_construction
from staymap.geom import StayParams, mpq
from staymap.io import render_svg
from staymap.staymap2d import approx_staymap


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, default=3)
    parser.add_argument("--epsilon", default="1/20")
    parser.add_argument("--out", default="grid.svg")
    args = parser.parse_args()
    gp = GridConstructionParams(args.m)
    traj = grid_construction(gp)
    region = approx_staymap(traj, StayParams(gp.s, gp.g, mpq(args.epsilon)))
    Path(args.out).write_text(render_svg(traj, region))
    print(f"{len(region)} polygons written to {args.out}")


if __name__ == "__main__":
    main()
