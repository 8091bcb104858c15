#! /usr/bin/env python3
"""
The command-line front end of apollonite. Every subcommand writes its
machine-readable output to stdout, one JSON object per line unless a
rendering is requested, and its log to stderr and the log file.

"""
import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

import tqdm

from .base_config import ApolloniteConfig, MissingConfigOptionException
from .exceptions import ApolloniteError, LatticeMismatchError
from .families import (diamond_laplacian_checks, diamond_odometer,
                       ford_laplacian_checks, ford_odometer)
from .latvec import VectorCache, check_identities, lattice_LC
from .odometer import (Rect, find_translate, fundamental_pattern,
                       globalize, maximality_probe, pattern_row_json,
                       pattern_table, peak_consistency, tile_odometer_checks,
                       tile_odometer_for, verify_odometer)
from .packing import Circle, Window, diamond_circle, enumerate_band, \
    find_quadruple, ford_circle
from .plots import plot_packing
from .render import (RenderFormat, RenderSpec, palette_from_config, render,
                     tile_ascii)
from .reports import CheckReport, ReportContainer
from .sandpile import (Schedule, compare_patterns, pattern_library,
                       stabilize)
from .tiles import (boundary_concatenation_check, tile_for, verify_tile,
                    verify_tiling)


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# Circles up to this curvature get the maximality probe in a sweep.
PROBE_MAX_CURVATURE = 60


def _circle_arg(text: str) -> Circle:
    try:
        c, x, y = (int(part) for part in text.split(","))
        return Circle.of(c, x, y)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"Expected a circle c,x,y of integers, got '{text}'")


def _interval_arg(text: str) -> Window:
    try:
        lo, hi = (Fraction(part) for part in text.split(","))
        return Window.square(lo, hi)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"Expected an interval x0,x1, got '{text}'")


def _size_arg(text: str) -> Rect:
    try:
        width, height = (int(part) for part in text.lower().split("x"))
        return Rect.centered(width, height)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"Expected a window size WxH, got '{text}'")


def _add_render_args(parser: argparse.ArgumentParser):
    parser.add_argument("--out", help="The file to which to write the "
                                      "image. Defaults to stdout.")
    parser.add_argument("--ascii", action="store_true",
                        help="Render as text instead of an image.")
    parser.add_argument("--format", choices=["pgm", "png"], default="pgm",
                        help="The image format.")


def build_parser() -> argparse.ArgumentParser:
    """
    Builds the argument parser with one subparser per subcommand.

    """
    parser = argparse.ArgumentParser(
        prog="apollonite",
        description="Tiles, odometers and Laplacian patterns of the "
                    "Apollonian band packing.")
    parser.add_argument("--config", help="The path to a JSON configuration "
                                          "file.")
    subparsers = parser.add_subparsers(dest="command")

    sub = subparsers.add_parser("circles", help="List the circles of the "
                                                "band packing.")
    sub.add_argument("--max-curv", type=int, required=True)
    sub.add_argument("--window", type=_interval_arg,
                     default=Window.square(0, 2),
                     help="The square x0 <= Re, Im <= x1 holding the "
                          "centers.")
    sub.add_argument("--plot", help="Also draw the circles to this file.")
    sub.set_defaults(func=cmd_circles)

    sub = subparsers.add_parser("vectors", help="Print the vectors "
                                                "(v_i0, a_i0) of a circle.")
    sub.add_argument("--circle", type=_circle_arg, required=True)
    sub.set_defaults(func=cmd_vectors)

    sub = subparsers.add_parser("tile", help="Print the tile of a circle.")
    sub.add_argument("--circle", type=_circle_arg, required=True)
    group = sub.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true")
    group.add_argument("--ascii", action="store_true")
    sub.add_argument("--plot", help="Also draw the tile next to the circle "
                                    "and its parents to this file.")
    sub.set_defaults(func=cmd_tile)

    sub = subparsers.add_parser("pattern", help="Render the Laplacian "
                                                "pattern of a circle.")
    sub.add_argument("--circle", type=_circle_arg, required=True)
    sub.add_argument("--window", type=_size_arg,
                     help="A WxH window around the origin. Defaults to the "
                          "bounding box of the tile.")
    sub.add_argument("--outline", action="store_true",
                     help="Mark the boundary of the tile.")
    _add_render_args(sub)
    sub.set_defaults(func=cmd_pattern)

    sub = subparsers.add_parser("verify", help="Run the verification "
                                               "suite.")
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--circle", type=_circle_arg)
    group.add_argument("--max-curv", type=int)
    sub.add_argument("--periods", type=int,
                     help="Window size in lattice periods.")
    sub.add_argument("--probe-max-curv", type=int,
                     default=PROBE_MAX_CURVATURE,
                     help="The largest curvature given the maximality "
                          "probe.")
    sub.set_defaults(func=cmd_verify)

    sub = subparsers.add_parser("ford", help="Check the Ford circle of "
                                             "p/q.")
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--q", type=int, required=True)
    sub.set_defaults(func=cmd_ford)

    sub = subparsers.add_parser("diamond", help="Check the k-th diamond "
                                                "circle.")
    sub.add_argument("--k", type=int, required=True)
    sub.set_defaults(func=cmd_diamond)

    sub = subparsers.add_parser("sandpile", help="Stabilize chips at the "
                                                 "origin.")
    sub.add_argument("--chips", type=int, required=True)
    sub.add_argument("--schedule", choices=[s.name for s in Schedule])
    _add_render_args(sub)
    sub.set_defaults(func=cmd_sandpile)

    sub = subparsers.add_parser("sandpile-compare",
                                help="Compare a sandpile with the "
                                     "Laplacian patterns.")
    sub.add_argument("--chips", type=int, required=True)
    sub.add_argument("--max-curv", type=int, required=True)
    sub.add_argument("--top", type=int, help="Only print the best matches.")
    sub.set_defaults(func=cmd_sandpile_compare)

    sub = subparsers.add_parser("table", help="Tabulate lattices and "
                                              "Laplacian value counts.")
    sub.add_argument("--max-curv", type=int, required=True)
    sub.set_defaults(func=cmd_table)

    return parser


def _emit(record: Dict[str, Any]):
    print(json.dumps(record))


def _write_bytes(data: bytes, path: Optional[str]):
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    with open(path, "wb") as fh:
        fh.write(data)
    logging.info(f"Wrote {len(data)} bytes to {path}")


def _render_spec(args: argparse.Namespace, config: ApolloniteConfig,
                 outline: bool = False) -> RenderSpec:
    fmt = RenderFormat.ascii if args.ascii else RenderFormat[args.format]
    return RenderSpec.default(fmt, outline,
                              palette_from_config(config.palette))


def _report_exit(reports: ReportContainer) -> int:
    for report in reports:
        _emit(report.to_json())
    failed = reports.failed()
    for report in failed:
        for failure in report.failures:
            logging.error(failure)
    return EXIT_OK if not failed else EXIT_FAILED


def cmd_circles(args: argparse.Namespace, config: ApolloniteConfig) -> int:
    circles = sorted({q.child for q in enumerate_band(args.max_curv,
                                                      args.window)})
    for circle in circles:
        _emit(circle.to_json())
    if args.plot is not None:
        plot_packing(circles, args.window, save_path=args.plot)
    return EXIT_OK


def cmd_vectors(args: argparse.Namespace, config: ApolloniteConfig) -> int:
    cache = VectorCache(config.cache_dir)
    qv = cache.vectors(args.circle)
    cache.save()
    _emit(qv.to_json())
    return EXIT_OK


def cmd_tile(args: argparse.Namespace, config: ApolloniteConfig) -> int:
    tile = tile_for(args.circle)
    if args.json:
        _emit(tile.to_json())
    else:
        sys.stdout.write(tile_ascii(tile))
    if args.plot is not None:
        if args.circle.is_line:
            raise ValueError("Band lines have no tile to plot")
        quad = find_quadruple(args.circle)
        y0 = args.circle.center.im // 2 * 2
        plot_packing(list(quad.circles), Window(0, 2, y0, y0 + 2),
                     tile=tile, save_path=args.plot)
    return EXIT_OK


def cmd_pattern(args: argparse.Namespace, config: ApolloniteConfig) -> int:
    grid = fundamental_pattern(args.circle, args.window, args.outline)
    _write_bytes(render(grid, _render_spec(args, config, args.outline)),
                 args.out)
    return EXIT_OK


def verify_circle(circle: Circle, periods: int = 3,
                  probe_size: Optional[int] = None,
                  cache: Optional[VectorCache] = None) -> ReportContainer:
    """
    Runs every check available for one circle: the vector identities, the
    lattice, the tile and its tiling, the tile odometer, the global
    odometer and, if requested, the maximality probe. A construction that
    raises is recorded as a failed report.

    Args:
        circle (Circle): A circle of positive curvature.
        periods (int, optional): The window size of the sweeps.
        probe_size (int, optional): The maximality probe bound, or None to
                                    skip the probe.
        cache (VectorCache, optional): A cache for the quadruple vectors.

    Returns:
        A ReportContainer.

    """
    reports = ReportContainer()
    name = str(circle)
    try:
        qv = (cache if cache is not None else VectorCache(None)) \
            .vectors(circle)
        reports.append(CheckReport.from_failures(
            "vector_identities", 1, check_identities(qv)))
        try:
            lattice_LC(circle)
            failures: List[str] = []
        except LatticeMismatchError as exc:
            failures = [str(exc)]
        reports.append(CheckReport.from_failures("lattice", 1, failures))

        tile = tile_for(circle)
        reports.extend(verify_tile(tile))
        reports.extend(verify_tiling(tile, qv.lattice, periods, qv))
        reports.append(boundary_concatenation_check(tile, qv))

        h = tile_odometer_for(circle)
        reports.extend(tile_odometer_checks(h))
        g = globalize(h)
        reports.append(CheckReport.from_failures("peak_matrix", 3,
                                                 peak_consistency(g)))
        reports.extend(verify_odometer(g, periods))
        if probe_size is not None:
            reports.append(maximality_probe(g, probe_size))
    except ApolloniteError as exc:
        reports.append(CheckReport.from_failures(
            "construction", 1, [f"{name}: {exc}"]))
    return reports


def cmd_verify(args: argparse.Namespace, config: ApolloniteConfig) -> int:
    periods = args.periods if args.periods is not None \
        else config.window_periods
    cache = VectorCache(config.cache_dir)
    if args.circle is not None:
        circles = [args.circle]
    else:
        circles = sorted({q.child for q in enumerate_band(
            args.max_curv, Window.square(0, 2))})
        logging.info(f"Verifying {len(circles)} circles of curvature at "
                     f"most {args.max_curv}")
    reports = ReportContainer()
    for circle in tqdm.tqdm(circles, disable=not config.progress):
        probe = (config.max_probe_size
                 if circle.c <= args.probe_max_curv else None)
        reports.extend(verify_circle(circle, periods, probe, cache))
    cache.save()
    for name, (checked, failed) in reports.summary().items():
        logging.info(f"{name}: {failed} failures in {checked} checked")
    return _report_exit(reports)


def _family_reports(glued_circle: Circle, closed, checks: CheckReport) \
        -> ReportContainer:
    reports = ReportContainer([checks])
    h = tile_odometer_for(glued_circle)
    failures = ([] if find_translate(h, closed) is not None
                else [f"{glued_circle}: the glued tile odometer is not an "
                      "odometer translation of the closed form"])
    reports.append(CheckReport.from_failures("family_equivalence", 1,
                                             failures))
    return reports


def cmd_ford(args: argparse.Namespace, config: ApolloniteConfig) -> int:
    circle = ford_circle(args.p, args.q)
    return _report_exit(_family_reports(
        circle, ford_odometer(args.p, args.q),
        ford_laplacian_checks(args.p, args.q)))


def cmd_diamond(args: argparse.Namespace, config: ApolloniteConfig) -> int:
    circle = diamond_circle(args.k)
    return _report_exit(_family_reports(
        circle, diamond_odometer(args.k), diamond_laplacian_checks(args.k)))


def cmd_sandpile(args: argparse.Namespace, config: ApolloniteConfig) -> int:
    schedule = (Schedule[args.schedule] if args.schedule is not None
                else config.sandpile_schedule)
    chips = stabilize(args.chips, schedule)
    logging.info(f"Stabilized {args.chips} chips in radius {chips.radius}")
    _write_bytes(render(chips.as_pattern(), _render_spec(args, config)),
                 args.out)
    return EXIT_OK


def cmd_sandpile_compare(args: argparse.Namespace,
                         config: ApolloniteConfig) -> int:
    chips = stabilize(args.chips, config.sandpile_schedule)
    library = pattern_library(args.max_curv, progress=config.progress)
    matches = compare_patterns(chips, library, progress=config.progress)
    if args.top is not None:
        matches = matches[:args.top]
    for match in matches:
        _emit(match.to_json())
    return EXIT_OK


def cmd_table(args: argparse.Namespace, config: ApolloniteConfig) -> int:
    for row in pattern_table(args.max_curv, progress=config.progress):
        _emit(pattern_row_json(row))
    return EXIT_OK


def _load_config(path: Optional[str]) -> ApolloniteConfig:
    if path is None:
        return ApolloniteConfig({})
    with open(path) as handle:
        return ApolloniteConfig(json.load(handle))


def _configure_logging(config: ApolloniteConfig):
    # Configure logging to go to a file and STDERR
    logging.basicConfig(
        level=config.log_level,
        format="%(asctime)s [%(levelname)s]  %(message)s",
        handlers=[
            logging.FileHandler(
                os.path.join(config.output_dir, config.log_file),
                delay=True),
            logging.StreamHandler(sys.stderr)
        ])

    logging.info(f"Using configuration: {str(config)}")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Runs the command line.

    Args:
        argv (list, optional): The arguments, without the program name.
                               Defaults to sys.argv[1:].

    Returns:
        0 on success, 1 when a check fails or a construction raises, 2 on
        a usage error.

    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    try:
        config = _load_config(args.config)
        # validates the enumerated options up front
        str(config)
    except (OSError, ValueError, MissingConfigOptionException) as exc:
        print(f"apollonite: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE

    _configure_logging(config)

    func: Callable[[argparse.Namespace, ApolloniteConfig], int] = args.func
    try:
        return func(args, config)
    except ApolloniteError as exc:
        logging.error(f"{type(exc).__name__}: {exc}")
        return EXIT_FAILED
    except ValueError as exc:
        logging.error(str(exc))
        return EXIT_USAGE


def main():
    """
    The main entry point for the apollonite command line.

    """
    sys.exit(run(sys.argv[1:]))
