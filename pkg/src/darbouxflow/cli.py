"""Command line driver: scenario in, CSV/SVG out.

    darbouxflow <command> --config <path> [--out <dir>] [--h <step>] [--tol <x>]

Commands: darboux (smooth transform of a polarized curve), flow (edge-wise
propagation of a discrete polarized curve), motion (isoperimetric polygon
motion), verify (run the acceptance suite), figure1 (one circle, one
parameter, two polarizations — two visibly different transforms).

Exit codes: 0 success, 1 validation/config error, 2 numerical failure,
3 verification failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from .config import ConfigError, Scenario, load_scenario
from .darboux import DarbouxParams, arclength_darboux, darboux_transform
from .errors import BlowupError, CurveError
from .geometry import Sheet, SGrid
from .motion import integrate_motion
from .output import ensure_dir, write_csv, write_svg
from .semidiscrete import FlowSpec, infinitesimal_darboux
from .verification import FIGURE_MU, FIGURE_POINT, figure_family, run_suite

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="darbouxflow",
        description="Darboux transforms, discrete curve flows, and their "
                    "equivalence checks.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, summary in (
        ("darboux", "transform one smooth polarized curve"),
        ("flow", "propagate a discrete polarized curve into a sheet"),
        ("motion", "integrate an isoperimetric polygon motion"),
        ("verify", "run the acceptance checks and report pass/fail"),
        ("figure1", "emit the two-polarizations demonstration figure"),
    ):
        p = sub.add_parser(name, help=summary)
        p.add_argument("--config", required=True, help="scenario file (INI sections)")
        p.add_argument("--out", default=None, help="directory for output files")
        p.add_argument("--h", type=float, default=None,
                       help="override the grid step from the scenario")
        p.add_argument("--tol", type=float, default=None,
                       help="multiplier applied to every verification tolerance")
    return parser


def _resolve(path: str | None, default_name: str, outdir: str | None,
             want_default: bool) -> str | None:
    """An output path from the scenario, or a default name, under --out."""
    if path is None:
        if not want_default:
            return None
        path = default_name
    if outdir and not os.path.isabs(path):
        path = os.path.join(outdir, path)
    ensure_dir(path)
    return path


def _run_darboux(sc: Scenario, outdir) -> list[str]:
    if sc.offset_angle is not None:
        transform = arclength_darboux(sc.source, sc.mu, sc.offset_angle)
    else:
        transform = darboux_transform(sc.source, DarbouxParams(sc.mu, sc.initial_point))
    sheet = Sheet(sc.grid, np.stack([sc.source.points, transform.points]))
    files = []
    csv_path = _resolve(sc.csv_path, "darboux.csv", outdir, True)
    write_csv(csv_path, sheet)
    files.append(csv_path)
    svg_path = _resolve(sc.svg_path, "darboux.svg", outdir, False)
    if svg_path:
        write_svg(svg_path, [sc.source.points, transform.points],
                  colors=["black", "red"],
                  markers=[transform.points[0]])
        files.append(svg_path)
    return files


def _run_flow(sc: Scenario, outdir) -> list[str]:
    sheet = infinitesimal_darboux(FlowSpec(sc.base, sc.m, sc.n0, sc.initial))
    files = []
    csv_path = _resolve(sc.csv_path, "flow.csv", outdir, True)
    write_csv(csv_path, sheet)
    files.append(csv_path)
    svg_path = _resolve(sc.svg_path, "flow.svg", outdir, False)
    if svg_path:
        write_svg(svg_path, list(sheet.values))
        files.append(svg_path)
    return files


def _run_motion(sc: Scenario, outdir) -> list[str]:
    result = integrate_motion(sc.vertices, sc.w0, sc.n0, sc.grid)
    files = []
    csv_path = _resolve(sc.csv_path, "motion.csv", outdir, True)
    write_csv(csv_path, result.sheet)
    files.append(csv_path)
    svg_path = _resolve(sc.svg_path, "motion.svg", outdir, False)
    if svg_path:
        write_svg(svg_path, list(result.sheet.values))
        files.append(svg_path)
    return files


def _run_figure(sc: Scenario, outdir, h: float | None) -> list[str]:
    grid = sc.grid
    if grid is None:
        grid = SGrid.from_step(0.0, 2.0 * math.pi, h if h else 1e-3)
    mu = sc.mu if sc.mu is not None else FIGURE_MU
    point = sc.initial_point if sc.initial_point is not None else FIGURE_POINT
    base, t1, t2 = figure_family(grid, mu, point)
    files = []
    svg_path = _resolve(sc.svg_path, "figure1.svg", outdir, True)
    write_svg(svg_path, [base.points, t1.points, t2.points],
              colors=["black", "red", "blue"], markers=[point])
    files.append(svg_path)
    csv_path = _resolve(sc.csv_path, "figure1.csv", outdir, False)
    if csv_path:
        write_csv(csv_path, Sheet(grid, np.stack([base.points, t1.points, t2.points])))
        files.append(csv_path)
    return files


def _run_verify(sc: Scenario, h: float | None, tol: float | None) -> int:
    results = run_suite(h=h if h else 1e-3,
                        tol_multiplier=tol if tol else 1.0,
                        overrides=sc.tolerances)
    for res in results:
        print(res.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 3 if failed else 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        sc = load_scenario(args.config, args.command, args.h)
        if args.tol is not None and args.tol <= 0:
            raise ConfigError(f"--tol must be positive, got {args.tol!r}")
        if args.out:
            os.makedirs(args.out, exist_ok=True)
    except (ConfigError, CurveError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        if sc.command == "verify":
            return _run_verify(sc, args.h, args.tol)
        if sc.command == "darboux":
            files = _run_darboux(sc, args.out)
        elif sc.command == "flow":
            files = _run_flow(sc, args.out)
        elif sc.command == "motion":
            files = _run_motion(sc, args.out)
        else:
            files = _run_figure(sc, args.out, args.h)
    except (BlowupError, CurveError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in files:
        print(path)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
