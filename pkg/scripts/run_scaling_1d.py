"""Time staymap_1d on concatenated random walks of 2^k vertices."""

import argparse
import json

from staymap.bench import bench_1d, format_table


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--min-exp", type=int, default=14)
    parser.add_argument("--max-exp", type=int, default=20)
    parser.add_argument("--repeats", type=int, default=9)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--json", metavar="PATH")
    args = parser.parse_args()
    rows = bench_1d(args.min_exp, args.max_exp, seed=args.seed, repeats=args.repeats)
    print(format_table(rows), end="")
    worst = max(r.ratio for r in rows[1:]) if len(rows) > 1 else None
    if worst is not None:
        print(f"worst doubling ratio: {worst:.2f}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.__dict__ for r in rows], fh, indent=2)


if __name__ == "__main__":
    main()
