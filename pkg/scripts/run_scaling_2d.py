"""Snapshot count, running time and polygon count of approx_staymap as
epsilon halves."""

import argparse

from staymap.bench import bench_2d, format_table


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=60)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    print(format_table(bench_2d(args.n, args.seed)), end="")


if __name__ == "__main__":
    main()
