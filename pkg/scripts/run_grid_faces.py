"""Oracle cluster count and output polygon count of the grid construction."""

import argparse

from staymap.bench import bench_faces, format_table


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, nargs="+", default=[2, 4, 8])
    args = parser.parse_args()
    rows = bench_faces(tuple(args.m))
    print(format_table(rows), end="")
    for a, b in zip(rows, rows[1:]):
        print(f"m {a.m} -> {b.m}: polygon ratio {b.polygons / a.polygons:.2f}")


if __name__ == "__main__":
    main()
