"""Command-line front end.

Subcommands: walls (wall summary to stdout), cones (cone summary),
report (full report file), figures (the two SVG documents).  Exit
codes: 0 success, 2 configuration error, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .cones import InconsistentConeError
from .figures import render_halfplane_svg, render_ns_cone_svg
from .report import (ConfigError, RunConfig, RunReport, parse_config,
                     render_report, run_pipeline)
from .walls import Semicircle, UnboundedSearchError, Vertical

EXIT_CONFIG = 2
EXIT_INTERNAL = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3walls",
        description="exact wall-and-chamber computations for moduli of "
                    "sheaves on Picard-rank-1 K3 surfaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("walls", "print the wall decomposition"),
        ("cones", "print the cone chart"),
        ("report", "write the full report"),
        ("figures", "write the half-plane and cone figures"),
    ):
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("--config", type=Path, help="key=value config file")
        cmd.add_argument("--h2", type=int, help="degree H^2 of the polarization")
        cmd.add_argument("--v", help="class as a,b,c")
        cmd.add_argument("--rank-bound", type=int, dest="rank_bound")
        cmd.add_argument("--out", type=Path, help="output directory")
        cmd.add_argument("--scale", type=int, help="figure scale factor")
    return parser


def _load_config(args: argparse.Namespace) -> tuple[RunConfig, Path | None]:
    base_dir = None
    if args.config is not None:
        config = parse_config(args.config.read_text(encoding="utf-8"))
        base_dir = args.config.parent
    else:
        if args.h2 is None or args.v is None:
            raise ConfigError(None, "either --config or both --h2 and --v are required")
        config = parse_config(f"h2 = {args.h2}\nv = {args.v}\n")
    overrides = {}
    if args.h2 is not None and args.config is not None:
        overrides["h2"] = args.h2
    if args.v is not None and args.config is not None:
        text = f"h2 = {args.h2 or config.h2}\nv = {args.v}\n"
        overrides["v"] = parse_config(text).v
    if args.rank_bound is not None:
        if args.rank_bound < 0:
            raise ConfigError(None, "rank_bound must be nonnegative")
        overrides["rank_bound"] = args.rank_bound
    if args.out is not None:
        overrides["out"] = str(args.out)
    if args.scale is not None:
        if args.scale <= 0:
            raise ConfigError(None, "scale must be positive")
        overrides["scale"] = args.scale
    if overrides:
        from dataclasses import replace
        config = replace(config, **overrides)
    return config, base_dir


def _summarize_walls(report: RunReport) -> str:
    lines = [f"H^2 = {report.cfg.h2}, v = {report.v}, "
             f"{len(report.walls)} wall(s)"]
    for cw in report.walls:
        shape = cw.wall.shape
        if isinstance(shape, Vertical):
            where = f"vertical at beta = {shape.beta}"
        else:
            where = f"semicircle C = {shape.center}, R^2 = {shape.radius2}"
        holes = ", ".join(f"({h.beta}, {h.alpha2})" for h in cw.holes) or "none"
        lines.append(f"  {cw.wall.witness}: {where}; {cw.classification.kind.value}; "
                     f"holes: {holes}")
    for note in report.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines)


def _summarize_cones(report: RunReport) -> str:
    if report.chart is None:
        return "no cone chart (see report notes)"
    chart = report.chart
    from .report import _ray_str
    lines = [
        f"positive cone: {_ray_str(chart.pos_rays[0])} / {_ray_str(chart.pos_rays[1])}",
        f"movable cone:  {_ray_str(chart.mov_rays[0])} / {_ray_str(chart.mov_rays[1])}",
        f"nef cone:      {_ray_str(chart.nef_rays[0])} / {_ray_str(chart.nef_rays[1])}",
    ]
    for chamber in chart.chambers:
        lines.append(f"chamber {chamber.label}: model {chamber.model}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config, base_dir = _load_config(args)
    except (ConfigError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        report = run_pipeline(config, base_dir)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InconsistentConeError, UnboundedSearchError, AssertionError) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL

    out_dir = Path(config.out) if config.out else Path.cwd()
    if args.command == "walls":
        print(_summarize_walls(report))
    elif args.command == "cones":
        print(_summarize_cones(report))
    elif args.command == "report":
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / "report.txt"
        path.write_text(render_report(report), encoding="utf-8")
        print(f"wrote {path}")
    elif args.command == "figures":
        out_dir.mkdir(parents=True, exist_ok=True)
        half = out_dir / "halfplane.svg"
        cone = out_dir / "cones.svg"
        half.write_text(render_halfplane_svg(report), encoding="utf-8")
        cone.write_text(render_ns_cone_svg(report), encoding="utf-8")
        print(f"wrote {half}")
        print(f"wrote {cone}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
