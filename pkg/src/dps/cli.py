"""Command-line front end.

Exit codes: 0 success, 1 I/O or parse error, 2 smoothing refused as
infeasible, 3 no collision-free route, 4 optimality cross-check mismatch.
"""

from __future__ import annotations

import argparse
import sys

from .bench import CSV_HEADER, run_bench
from .dubins import classify_j_type, dubins_shortest
from .fileio import load_path, load_polyline, load_scenario, save_path
from .planner import NoPathError, plan
from .render import render_svg
from .smoother import (
    FeasibilityError,
    extract_pieces,
    path_length,
    smooth_polyline,
    smooth_polyline_batch,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_INFEASIBLE = 2
EXIT_NO_PATH = 3
EXIT_MISMATCH = 4

ORACLE_REL_TOL = 1e-9


def _cmd_smooth(args) -> int:
    try:
        polyline = load_polyline(args.input)
    except (OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    mode = "best-effort" if args.best_effort else "strict"
    try:
        if args.parallel:
            path = smooth_polyline_batch(polyline, args.radius, mode=mode)
        else:
            path = smooth_polyline(polyline, args.radius, mode=mode)
    except FeasibilityError as err:
        print(f"infeasible: {err}", file=sys.stderr)
        report = err.report
        if report is not None:
            print(
                f"vertex violations: {report.local_violations}; "
                f"edge violations: {report.global_violations}",
                file=sys.stderr,
            )
        return EXIT_INFEASIBLE
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    if args.best_effort:
        print("note: best-effort mode may violate the curvature bound", file=sys.stderr)
    try:
        save_path(path, args.output, total_length=path_length(path))
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _cmd_plan(args) -> int:
    try:
        scenario = load_scenario(args.scenario)
    except (OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    try:
        result = plan(scenario)
    except NoPathError as err:
        print(f"no path: {err}", file=sys.stderr)
        return EXIT_NO_PATH
    except FeasibilityError as err:
        print(f"infeasible route: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    try:
        save_path(
            result.path,
            args.output,
            total_length=result.length,
            min_clearance=result.clearance,
        )
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _cmd_oracle_check(args) -> int:
    try:
        polyline = load_polyline(args.input)
    except (OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    try:
        pieces = extract_pieces(polyline, args.radius)
    except (FeasibilityError, ValueError) as err:
        print(f"infeasible: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    mismatches = 0
    for i, piece in enumerate(pieces):
        word = dubins_shortest(piece.start, piece.end, args.radius)
        j_type, _ = classify_j_type(piece.start, piece.end, args.radius)
        gap = abs(word.total - piece.length)
        match = gap <= ORACLE_REL_TOL * max(abs(word.total), abs(piece.length), 1e-300)
        status = "ok" if match else "MISMATCH"
        note = "" if piece.guaranteed else " (no guarantee: far condition violated)"
        print(
            f"piece {i}: dps={piece.length:.12f} oracle={word.total:.12f} "
            f"word={word.word} j_type={j_type} {status}{note}"
        )
        if not match and piece.guaranteed:
            mismatches += 1
    if not pieces:
        print("no pieces: polyline smooths to a straight segment")
    return EXIT_MISMATCH if mismatches else EXIT_OK


def _cmd_bench(args) -> int:
    row = run_bench(args.n, args.repeats, args.seed, args.samples)
    print(CSV_HEADER)
    print(row.csv())
    return EXIT_OK


def _cmd_render(args) -> int:
    try:
        path, _meta = load_path(args.path)
        scenario = load_scenario(args.scenario) if args.scenario else None
        svg = render_svg(path, scenario=scenario)
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    except (OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dps",
        description="Shortest curvature-bounded smoothing of polylines, with "
        "an obstacle-aware planning pipeline.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("smooth", help="smooth a polyline CSV into a path JSON")
    p.add_argument("input", help="polyline CSV file (x,y per line)")
    p.add_argument("-r", "--radius", type=float, required=True, help="turning radius")
    p.add_argument("-o", "--output", required=True, help="output path JSON")
    p.add_argument("--best-effort", action="store_true", help="clamp instead of refusing")
    p.add_argument("--parallel", action="store_true", help="solve vertices in parallel")
    p.set_defaults(func=_cmd_smooth)

    p = sub.add_parser("plan", help="plan through a scenario JSON")
    p.add_argument("scenario", help="scenario JSON file")
    p.add_argument("-o", "--output", required=True, help="output path JSON")
    p.set_defaults(func=_cmd_plan)

    p = sub.add_parser("oracle-check", help="cross-check each piece against the Dubins solver")
    p.add_argument("input", help="polyline CSV file")
    p.add_argument("-r", "--radius", type=float, required=True, help="turning radius")
    p.set_defaults(func=_cmd_oracle_check)

    p = sub.add_parser("bench", help="time smoothing and compare lengths")
    p.add_argument("-n", type=int, required=True, help="number of polyline points")
    p.add_argument("--repeats", type=int, default=10, help="timing repeats")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument("--samples", type=int, default=360, help="headings per waypoint")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("render", help="render a path (and scenario) to SVG")
    p.add_argument("path", help="path JSON file")
    p.add_argument("--scenario", help="scenario JSON file", default=None)
    p.add_argument("-o", "--output", required=True, help="output SVG file")
    p.set_defaults(func=_cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
