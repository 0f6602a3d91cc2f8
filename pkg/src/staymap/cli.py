"""Command-line entry point: ``staymap <command> ...``.

Exit codes: 0 success, 1 internal error, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import asdict
from pathlib import Path

from . import bench
from .generators import GridConstructionParams, grid_construction, random_walk
from .geom import StayParams, as_rational
from .io import (
    InputError,
    dumps,
    interval_document,
    json_number,
    parse_trajectory,
    read_trajectory,
    region_document,
    render_svg,
    serialize_trajectory,
)
from .oracle import Classification, classify_gap, exact_clusters, grid_scan, max_gap
from .staymap1d import staymap_1d
from .staymap2d import approx_staymap


def _number(text: str):
    try:
        return as_rational(text)
    except (ValueError, TypeError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _numbers(text: str) -> list:
    return [_number(part) for part in text.split(",")]


def _load(path: str):
    if path == "-":
        return parse_trajectory(sys.stdin.read(), "<stdin>")
    return read_trajectory(path)


def _params(args, need_epsilon: bool = False) -> StayParams:
    eps = getattr(args, "epsilon", None)
    if need_epsilon and eps is None:
        raise InputError("--epsilon is required")
    try:
        return StayParams(args.side, args.gap, eps)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_staymap1d(args, out) -> int:
    traj = _load(args.input)
    if traj.dim != 1:
        raise InputError("expected a 't,x' trajectory", args.input)
    out.write(dumps(interval_document(staymap_1d(traj, _params(args)))))
    return 0


def cmd_staymap2d(args, out) -> int:
    traj = _load(args.input)
    if traj.dim != 2:
        raise InputError("expected a 't,x,y' trajectory", args.input)
    params = _params(args, need_epsilon=True)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        region = approx_staymap(traj, params)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    out.write(dumps(region_document(region)))
    if args.svg:
        Path(args.svg).write_text(render_svg(traj, region))
    return 0


def cmd_oracle(args, out) -> int:
    traj = _load(args.input)
    params = _params(args)
    if args.grid:
        values = args.grid
        if len(values) != 2 * traj.dim + 1:
            raise InputError(f"--grid needs {2 * traj.dim + 1} comma-separated values")
        scan = grid_scan(traj, values[:-1], values[-1], params)
        doc = {
            "grid": {"bbox": [json_number(v) for v in values[:-1]], "step": json_number(values[-1])},
            "counts": {c.value: scan.count(c) for c in Classification},
        }
        if traj.dim == 2:
            doc["clusters"] = exact_clusters(scan)
        out.write(dumps(doc))
        return 0
    if not args.probe:
        raise InputError("give --probe or --grid")
    reports = []
    for corner in args.probe:
        if len(corner) != traj.dim:
            raise InputError(f"probe needs {traj.dim} coordinate(s)")
        rep = max_gap(traj, corner, params.s)
        reports.append(
            {
                "corner": [json_number(c) for c in corner],
                "max_gap": json_number(rep.max_gap),
                "witness": [json_number(w) for w in rep.witness],
                "class": classify_gap(rep.max_gap, params).value,
            }
        )
    out.write(dumps({"probes": reports}))
    return 0


def cmd_generate(args, out) -> int:
    try:
        if args.kind == "grid":
            traj = grid_construction(
                GridConstructionParams(args.m, args.side, args.gap, args.speed_factor)
            )
        else:
            traj = random_walk(
                args.n,
                args.dim,
                args.seed,
                args.step_scale,
                args.dt_scale,
                restart_every=args.restart_every,
            )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out.write(serialize_trajectory(traj))
    return 0


def cmd_bench(args, out) -> int:
    if args.suite == "1d-scaling":
        rows = bench.bench_1d(args.min_exp, args.max_exp, seed=args.seed)
    elif args.suite == "2d-scaling":
        rows = bench.bench_2d(seed=args.seed)
    else:
        rows = bench.bench_faces()
    if args.json:
        out.write(json.dumps([asdict(r) for r in rows]) + "\n")
    else:
        out.write(bench.format_table(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="staymap", description="Stay maps of moving entities.")
    sub = parser.add_subparsers(dest="command", required=True)

    def stay_flags(p, epsilon: bool):
        p.add_argument("input", help="trajectory CSV, '-' for stdin")
        p.add_argument("-s", "--side", type=_number, required=True)
        p.add_argument("-g", "--gap", type=_number, required=True)
        if epsilon:
            p.add_argument("-e", "--epsilon", type=_number)

    p1 = sub.add_parser("staymap1d", help="exact stay map of a 1D trajectory")
    stay_flags(p1, epsilon=False)
    p1.set_defaults(func=cmd_staymap1d)

    p2 = sub.add_parser("staymap2d", help="approximate stay map of a 2D trajectory")
    stay_flags(p2, epsilon=True)
    p2.add_argument("--svg", metavar="PATH")
    p2.set_defaults(func=cmd_staymap2d)

    po = sub.add_parser("oracle", help="brute-force gap report")
    stay_flags(po, epsilon=True)
    po.add_argument("--probe", type=_numbers, action="append", metavar="X[,Y]")
    po.add_argument("--grid", type=_numbers, metavar="XMIN,[YMIN,]XMAX,[YMAX,]STEP")
    po.set_defaults(func=cmd_oracle)

    pg = sub.add_parser("generate", help="synthetic trajectory CSV")
    pg.add_argument("kind", choices=["grid", "walk"])
    pg.add_argument("--m", type=int, default=2)
    pg.add_argument("-s", "--side", type=_number, default=1)
    pg.add_argument("-g", "--gap", type=_number, default=1)
    pg.add_argument("--speed-factor", type=_number, default=100)
    pg.add_argument("--n", type=int, default=50)
    pg.add_argument("--dim", type=int, default=2)
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("--step-scale", type=_number, default=1)
    pg.add_argument("--dt-scale", type=_number, default=1)
    pg.add_argument("--restart-every", type=int)
    pg.set_defaults(func=cmd_generate)

    pb = sub.add_parser("bench", help="scaling tables")
    pb.add_argument("suite", choices=["1d-scaling", "2d-scaling", "grid-faces"])
    pb.add_argument("--min-exp", type=int, default=14)
    pb.add_argument("--max-exp", type=int, default=20)
    pb.add_argument("--seed", type=int, default=0)
    pb.add_argument("--json", action="store_true")
    pb.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
