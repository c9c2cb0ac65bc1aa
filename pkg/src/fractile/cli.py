"""Command-line surface.

Exit codes: 0 success, 1 negative verdict (e.g. analyze on a generator
that is not a tree fractal), 2 input or usage error, 3 resource-bounded
no-result (refute found no matching stage pair within its budget).
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .fractal import (
    Generator,
    TAXONOMY_DOUBLE,
    TAXONOMY_ORTHOGONAL,
    TAXONOMY_PARALLEL,
    TAXONOMY_REAL,
    bridges,
    census,
    format_generator,
    is_tree_fractal_generator,
    parse_generator,
    piers,
    scale,
    select_pier_anchor,
    stage,
)
from .movies import bond_forming, format_movie, record_movie
from .refuter import (
    NoMatchReport,
    RefutationConfig,
    format_certificate,
    format_no_match,
    refute,
)
from .render import check_cell_budget, format_grid, render_svg
from .tiles import (
    Box,
    LexicographicPolicy,
    SeededUniformPolicy,
    clipped_frontier,
    frontier,
    parse_tile_system,
    run,
)
from .windows import WindowSpec, boundary_contacts, window_inside

_SHORT_TAXONOMY = {
    TAXONOMY_REAL: "real",
    TAXONOMY_PARALLEL: "parallel",
    TAXONOMY_ORTHOGONAL: "orthogonal",
    TAXONOMY_DOUBLE: "double",
}


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _load_generator(path: str) -> Generator:
    return parse_generator(_read(path))


def _policy(name: str, seed: int):
    if name == "uniform":
        return SeededUniformPolicy(seed)
    return LexicographicPolicy()


def cmd_analyze(args: argparse.Namespace) -> int:
    gen = _load_generator(args.generator)
    ok, diagnosis = is_tree_fractal_generator(gen)
    lines = [f"generator: g={gen.g}, {len(gen.cells)} cells"]
    lines.append("tree-fractal: yes" if ok else f"tree-fractal: no ({diagnosis})")
    all_bridges = bridges(gen.cells)
    for b in all_bridges:
        state = "connected" if b.connected else "disconnected"
        (ax, ay), (bx, by) = b.endpoints
        lines.append(
            f"bridge: {b.kind} at {b.index}, ({ax},{ay})-({bx},{by}), {state}"
        )
    nh = sum(1 for b in all_bridges if b.kind == "horizontal")
    lines.append(f"bridge counts: {nh} horizontal, {len(all_bridges) - nh} vertical")
    pier_bits = [
        f"({p.position[0]},{p.position[1]}){p.pointing.name}/{_SHORT_TAXONOMY[p.taxonomy]}"
        for p in piers(gen)
    ]
    lines.append("piers: " + (", ".join(pier_bits) if pier_bits else "none"))
    try:
        anchor = select_pier_anchor(gen)
        lines.append(
            f"anchor: pier ({anchor.pier[0]},{anchor.pier[1]}),"
            f" (e,f)=({anchor.anchor[0]},{anchor.anchor[1]}),"
            f" glue side {anchor.glue_side.name}"
        )
    except ValueError as exc:
        lines.append(f"anchor: none ({exc})")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


def _render_points(points, side: int, fmt: str, out: Optional[str]) -> int:
    check_cell_budget(side)
    if fmt == "svg":
        _emit(render_svg(points, side), out)
    else:
        _emit(format_grid(points, side), out)
    return 0


def cmd_stages(args: argparse.Namespace) -> int:
    gen = _load_generator(args.generator)
    points = scale(stage(gen, args.stage), args.scale)
    side = args.scale * gen.g**args.stage
    return _render_points(points, side, args.format, args.out)


def cmd_scale(args: argparse.Namespace) -> int:
    gen = _load_generator(args.generator)
    points = scale(gen.cells, args.scale)
    return _render_points(points, args.scale * gen.g, args.format, args.out)


def cmd_census(args: argparse.Namespace) -> int:
    stats = census(args.g, allow_large=args.allow_large)
    lines = [
        f"side: {stats.g}",
        f"candidates: {stats.candidates}",
        f"valid: {stats.valid}",
        f"tree-fractal: {stats.tree_fractal}",
    ]
    for tax in (TAXONOMY_REAL, TAXONOMY_PARALLEL, TAXONOMY_ORTHOGONAL, TAXONOMY_DOUBLE):
        lines.append(f"piers {_SHORT_TAXONOMY[tax]}: {stats.taxonomy.get(tax, 0)}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    system = parse_tile_system(_read(args.system))
    region = Box.parse(args.region) if args.region else None
    seq = run(system, region, _policy(args.policy, args.seed), args.max_steps)
    lines = [
        f"{ev.index} {ev.position[0]} {ev.position[1]} {ev.tile.name}"
        for ev in seq.events
    ]
    lines.append(f"tiles: {len(seq.result)}")
    open_sites = frontier(system, seq.result, region)
    clipped = clipped_frontier(system, seq.result, region) if region else ()
    if open_sites:
        lines.append(f"stopped: step limit, {len(open_sites)} open sites")
    elif clipped:
        lines.append(f"stopped: region boundary, {len(clipped)} sites clipped")
    else:
        lines.append("stopped: terminal")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_movie(args: argparse.Namespace) -> int:
    gen = _load_generator(args.generator)
    system = parse_tile_system(_read(args.system))
    anchor = select_pier_anchor(gen)
    side = args.scale * gen.g**args.stage
    region = Box(0, 0, side - 1, side - 1)
    seq = run(system, region, _policy(args.policy, args.seed), args.max_steps)
    window = window_inside(
        WindowSpec(args.scale, args.stage, gen.g, anchor.anchor, anchor.pier)
    )
    movie = record_movie(seq, window)
    if args.bond_forming:
        movie = bond_forming(movie, seq.result, system.temperature)
    _emit(format_movie(movie), args.out)
    return 0


def cmd_refute(args: argparse.Namespace) -> int:
    gen = _load_generator(args.generator)
    system = parse_tile_system(_read(args.system))
    cfg = RefutationConfig(
        generator=gen,
        c=args.scale,
        system=system,
        max_stage=args.max_stage,
        policy_seed=args.seed,
        max_steps=args.max_steps,
    )
    outcome = refute(cfg)
    if isinstance(outcome, NoMatchReport):
        _emit(format_no_match(outcome), args.out)
        return 3
    _emit(format_certificate(outcome), args.out)
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    gen = _load_generator(args.generator)
    side = args.scale * gen.g**args.stage
    check_cell_budget(side)
    points = scale(stage(gen, args.stage), args.scale)
    windows = []
    glue_edges = []
    ok, _ = is_tree_fractal_generator(gen)
    if ok and args.stage >= 2:
        try:
            anchor = select_pier_anchor(gen)
        except ValueError:
            anchor = None
        if anchor is not None:
            for s in range(2, args.stage + 1):
                inside = window_inside(
                    WindowSpec(args.scale, s, gen.g, anchor.anchor, anchor.pier)
                )
                windows.append(inside)
                glue_edges.extend(boundary_contacts(inside, points)[anchor.glue_side])
    _emit(render_svg(points, side, windows, glue_edges), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fractile",
        description="Discrete self-similar fractals, tile assembly, and"
        " window-movie refutation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write output to this file instead of stdout")
        return p

    p = add("analyze", cmd_analyze, "characterize a generator file")
    p.add_argument("generator", help="path to a .gen file")

    for name, func, help_text in (
        ("stages", cmd_stages, "render a fractal stage"),
        ("scale", cmd_scale, "render the c-scaled generator pattern"),
    ):
        p = add(name, func, help_text)
        p.add_argument("generator", help="path to a .gen file")
        if name == "stages":
            p.add_argument("--stage", type=int, default=2, help="stage index (default 2)")
        p.add_argument("--scale", type=int, default=1, help="scale factor (default 1)")
        p.add_argument(
            "--format", choices=("text", "svg"), default="text", help="output format"
        )

    p = add("census", cmd_census, "enumerate all generators of a side")
    p.add_argument("g", type=int, help="side length")
    p.add_argument(
        "--allow-large", action="store_true", help="permit the 65536-candidate side-4 run"
    )

    p = add("simulate", cmd_simulate, "run a tile system")
    p.add_argument("system", help="path to a .tas file")
    p.add_argument("--region", help="bounding box x0,y0,x1,y1 (default unbounded)")
    p.add_argument(
        "--policy", choices=("lex", "uniform"), default="lex", help="selection policy"
    )
    p.add_argument("--seed", type=int, default=0, help="seed for the uniform policy")
    p.add_argument("--max-steps", type=int, default=100_000, help="step budget")

    p = add("movie", cmd_movie, "record a window movie along a stage window")
    p.add_argument("generator", help="path to a .gen file")
    p.add_argument("system", help="path to a .tas file")
    p.add_argument("--stage", type=int, default=2, help="window stage (default 2)")
    p.add_argument("--scale", type=int, default=1, help="scale factor (default 1)")
    p.add_argument(
        "--policy", choices=("lex", "uniform"), default="lex", help="selection policy"
    )
    p.add_argument("--seed", type=int, default=0, help="seed for the uniform policy")
    p.add_argument("--max-steps", type=int, default=100_000, help="step budget")
    p.add_argument(
        "--bond-forming", action="store_true", help="keep only bond-forming events"
    )

    p = add("refute", cmd_refute, "search for a splice counterexample")
    p.add_argument("generator", help="path to a .gen file")
    p.add_argument("system", help="path to a .tas file")
    p.add_argument("--scale", type=int, default=1, help="scale factor (default 1)")
    p.add_argument("--max-stage", type=int, default=6, help="largest window stage")
    p.add_argument(
        "--seed",
        type=int,
        default=None,
        help="run the seeded uniform policy (default: lexicographic)",
    )
    p.add_argument("--max-steps", type=int, default=100_000, help="step budget")

    p = add("render", cmd_render, "SVG of a stage with windows and glue lines")
    p.add_argument("generator", help="path to a .gen file")
    p.add_argument("--stage", type=int, default=2, help="stage index (default 2)")
    p.add_argument("--scale", type=int, default=1, help="scale factor (default 1)")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())
