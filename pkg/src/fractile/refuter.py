"""Search for a window-interior transplant that breaks a candidate tiling.

Given a tree-fractal generator and a tile system that is supposed to
build the scaled fractal, run the system once, record the bond-forming
submovies along the pier windows of successive stages, and look for two
stages whose submovies coincide under the stage-to-stage shift.  Such a
pair lets the larger window's interior be replaced by the smaller one's;
when the transplanted assembly differs from the fractal, that splice is a
machine-checkable counterexample certificate.  If no pair matches within
the stage budget, the distinct submovies themselves are the (honest,
resource-bounded) answer.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Optional, Union

from .fractal import (
    Generator,
    PierAnchor,
    format_generator,
    is_tree_fractal_generator,
    scale,
    select_pier_anchor,
    stage,
)
from .grid import Direction, Point, translate
from .movies import (
    BondFormingSubmovie,
    SpliceError,
    bond_forming,
    format_movie,
    record_movie,
    splice,
    submovie_matches,
)
from .tiles import (
    DEFAULT_MAX_STEPS,
    Assembly,
    AssemblySequence,
    Box,
    LexicographicPolicy,
    SeededUniformPolicy,
    TileSystem,
    run,
)
from .windows import WindowSpec, translation, window_inside


def glue_line_bound(system: TileSystem, c: int) -> int:
    """How many distinct glue-line configurations a length-c window side
    admits: (distinct positive glues)^(2c) · (2c)!.

    The 2c slots are the two ends of each of the c cut edges; orderings
    count because movies are order-sensitive.  Searching one more window
    than this bound guarantees a repeat by pigeonhole — in practice
    repeats show up far earlier, and the stage budget caps the search.
    """
    if c < 1:
        raise ValueError(f"scale factor must be >= 1, got {c}")
    glues = {
        g
        for t in system.tiles
        for g in (t.north, t.east, t.south, t.west)
        if g.strength > 0
    }
    return len(glues) ** (2 * c) * math.factorial(2 * c)


def alignment_offset(
    gen: Generator, c: int, i: int, j: int, pier_anchor: PierAnchor
) -> Point:
    """The extra shift that lines up the glue lines of the stage-i and
    stage-j windows.

    The stage-to-stage translation matches the windows' corners, but the
    bonded side of the larger window is longer, so the glue line sits
    ``bridge_offset`` sub-blocks along it; for far-side glue lines the
    whole margin is added too.  The offset never exceeds the enclosure
    margin, so the shifted window stays enclosed.
    """
    if not 2 <= i < j:
        raise ValueError(f"stages must satisfy 2 <= i < j, got i={i}, j={j}")
    if c < 1:
        raise ValueError(f"scale factor must be >= 1, got {c}")
    sigma = sum(gen.g**k for k in range(i - 2, j - 2))
    margin = c * (gen.g ** (j - 2) - gen.g ** (i - 2))
    along = pier_anchor.bridge_offset * c * sigma
    side = pier_anchor.glue_side
    if side is Direction.W:
        return (0, along)
    if side is Direction.E:
        return (margin, along)
    if side is Direction.S:
        return (along, 0)
    return (along, margin)


@dataclass(frozen=True)
class RefutationConfig:
    """One refutation problem: the fractal, the scale, and the candidate
    tile system, plus run bounds.

    ``region`` defaults to the square bounding the max-stage fractal;
    ``policy_seed`` None runs the deterministic lexicographic policy,
    an integer runs the seeded uniform one.
    """

    generator: Generator
    c: int
    system: TileSystem
    max_stage: int = 6
    region: Optional[Box] = None
    policy_seed: Optional[int] = None
    max_steps: int = DEFAULT_MAX_STEPS


@dataclass(frozen=True)
class SpliceCertificate:
    """A verified counterexample: the splice replays and its result is
    not the target shape."""

    config: RefutationConfig
    pier_anchor: PierAnchor
    i: int
    j: int
    w_i: WindowSpec
    w_j: WindowSpec
    alignment: Point
    c_vec: Point
    submovie: BondFormingSubmovie
    spliced: AssemblySequence
    spliced_domain_diff: tuple[Point, ...]
    replay_ok: bool


@dataclass(frozen=True)
class SubmovieGroup:
    """Stages whose bond-forming submovies are translates of each other."""

    stages: tuple[int, ...]
    submovie: BondFormingSubmovie


@dataclass(frozen=True)
class NoMatchReport:
    """No stage pair matched within the budget — a resource-bounded
    outcome, not a verdict on the tile system."""

    config: RefutationConfig
    pier_anchor: PierAnchor
    stages: tuple[int, ...]
    groups: tuple[SubmovieGroup, ...]
    notes: tuple[str, ...]


def refute(cfg: RefutationConfig) -> Union[SpliceCertificate, NoMatchReport]:
    """Run the pipeline: characterize, anchor, simulate, record, match,
    splice, certify.

    Stage pairs are tried smallest-first.  A pair is skipped when the
    starting assembly sits in exactly one of its windows, when its
    submovies differ under the computed shift, when the two window
    interiors are identical as configurations (the transplant would be
    vacuous), or when the transplant reproduces the target exactly.
    """
    gen = cfg.generator
    ok, diagnosis = is_tree_fractal_generator(gen)
    if not ok:
        raise ValueError(f"characterization failed: {diagnosis}")
    if cfg.c < 1:
        raise ValueError(f"scale factor must be >= 1, got {cfg.c}")
    if cfg.max_stage < 2:
        raise ValueError(f"max stage must be >= 2, got {cfg.max_stage}")
    anchor = select_pier_anchor(gen)
    side = cfg.c * gen.g**cfg.max_stage
    region = cfg.region if cfg.region is not None else Box(0, 0, side - 1, side - 1)
    target = scale(stage(gen, cfg.max_stage), cfg.c)
    if any(p not in region for p in target):
        raise ValueError(
            f"region too small for stage {cfg.max_stage} at scale {cfg.c}"
        )
    if cfg.policy_seed is None:
        policy = LexicographicPolicy()
    else:
        policy = SeededUniformPolicy(cfg.policy_seed)
    seq = run(cfg.system, region, policy, cfg.max_steps)
    result = seq.result

    e, f = anchor.anchor
    p, q = anchor.pier
    specs: dict[int, WindowSpec] = {}
    insides: dict[int, frozenset] = {}
    subs: dict[int, BondFormingSubmovie] = {}
    for s in range(2, cfg.max_stage + 1):
        spec = WindowSpec(cfg.c, s, gen.g, anchor.anchor, anchor.pier)
        inside = window_inside(spec)
        specs[s] = spec
        insides[s] = inside
        subs[s] = bond_forming(record_movie(seq, inside), result, cfg.system.temperature)

    start_cells = frozenset(seq.initial)

    def seed_class(inside: frozenset) -> str:
        hit = start_cells & inside
        if not hit:
            return "outside"
        return "inside" if hit == start_cells else "straddle"

    notes: list[str] = []
    for i_stage in range(2, cfg.max_stage):
        for j_stage in range(i_stage + 1, cfg.max_stage + 1):
            label = f"stages {i_stage}->{j_stage}"
            cls_i = seed_class(insides[i_stage])
            cls_j = seed_class(insides[j_stage])
            if "straddle" in (cls_i, cls_j) or cls_i != cls_j:
                notes.append(f"{label}: skipped by the seed rule ({cls_i}/{cls_j})")
                continue
            base = translation(cfg.c, gen.g, i_stage, j_stage, e, f, p, q)
            align = alignment_offset(gen, cfg.c, i_stage, j_stage, anchor)
            c_vec = (base[0] + align[0], base[1] + align[1])
            if c_vec == (0, 0):
                notes.append(f"{label}: zero shift")
                continue
            if not submovie_matches(subs[i_stage], subs[j_stage], c_vec):
                notes.append(f"{label}: submovies differ under shift {c_vec}")
                continue
            if not translate(insides[i_stage], c_vec) <= insides[j_stage]:
                notes.append(f"{label}: shifted window not enclosed")
                continue
            interior_i = {pt: result[pt] for pt in insides[i_stage] if pt in result}
            interior_j = {pt: result[pt] for pt in insides[j_stage] if pt in result}
            shifted_i = {
                (pt[0] + c_vec[0], pt[1] + c_vec[1]): t for pt, t in interior_i.items()
            }
            if shifted_i == interior_j:
                notes.append(f"{label}: identical window interiors, transplant is vacuous")
                continue
            try:
                spliced = splice(seq, insides[i_stage], insides[j_stage], c_vec)
            except SpliceError as exc:
                notes.append(f"{label}: splice rejected ({exc})")
                continue
            diff = tuple(
                sorted(spliced.result.domain ^ target, key=lambda v: (v[1], v[0]))
            )
            if not diff:
                notes.append(f"{label}: transplanted assembly still matches the target")
                continue
            return SpliceCertificate(
                config=cfg,
                pier_anchor=anchor,
                i=i_stage,
                j=j_stage,
                w_i=specs[i_stage],
                w_j=specs[j_stage],
                alignment=align,
                c_vec=c_vec,
                submovie=subs[i_stage],
                spliced=spliced,
                spliced_domain_diff=diff,
                replay_ok=True,
            )

    group_order: list[tuple] = []
    grouped: dict[tuple, list[int]] = {}
    for s in range(2, cfg.max_stage + 1):
        key = subs[s].canonical()
        if key not in grouped:
            grouped[key] = []
            group_order.append(key)
        grouped[key].append(s)
    groups = tuple(
        SubmovieGroup(tuple(grouped[key]), subs[grouped[key][0]]) for key in group_order
    )
    return NoMatchReport(
        config=cfg,
        pier_anchor=anchor,
        stages=tuple(range(2, cfg.max_stage + 1)),
        groups=groups,
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# Serialization


def generator_digest(gen: Generator) -> str:
    return hashlib.sha256(format_generator(gen).encode()).hexdigest()


def assembly_digest(assembly: Assembly) -> str:
    text = "".join(f"{x} {y} {assembly[(x, y)].name}\n" for (x, y) in assembly)
    return hashlib.sha256(text.encode()).hexdigest()


def _policy_description(cfg: RefutationConfig) -> str:
    if cfg.policy_seed is None:
        return "lexicographic"
    return f"uniform seed={cfg.policy_seed}"


def _header_lines(title: str, cfg: RefutationConfig, anchor: PierAnchor) -> list[str]:
    return [
        title,
        f"generator-sha256: {generator_digest(cfg.generator)}",
        f"scale: {cfg.c}",
        f"temperature: {cfg.system.temperature}",
        f"policy: {_policy_description(cfg)}",
        f"max-stage: {cfg.max_stage}",
        f"pier: {anchor.pier[0]} {anchor.pier[1]}",
        f"anchor: {anchor.anchor[0]} {anchor.anchor[1]}",
        f"glue-side: {anchor.glue_side.name}",
    ]


def _indented_movie(submovie: BondFormingSubmovie) -> list[str]:
    dump = format_movie(submovie)
    if not dump:
        return ["  (empty)"]
    return ["  " + line for line in dump.splitlines()]


def format_certificate(cert: SpliceCertificate) -> str:
    """Deterministic text form of a certificate, stable field order."""
    lines = _header_lines("fractile splice certificate", cert.config, cert.pier_anchor)
    lines += [
        f"matched-stages: {cert.i} {cert.j}",
        f"alignment: {cert.alignment[0]} {cert.alignment[1]}",
        f"shift: {cert.c_vec[0]} {cert.c_vec[1]}",
        f"replay: {'ok' if cert.replay_ok else 'FAILED'}",
        f"replay-sha256: {assembly_digest(cert.spliced.result)}",
        "submovie:",
        *_indented_movie(cert.submovie),
        f"domain-diff: {len(cert.spliced_domain_diff)} points",
    ]
    lines += [f"  {x} {y}" for (x, y) in cert.spliced_domain_diff]
    return "\n".join(lines) + "\n"


def format_no_match(report: NoMatchReport) -> str:
    """Deterministic text form of a no-match report."""
    lines = _header_lines("fractile no-match report", report.config, report.pier_anchor)
    lines.append(f"stages-examined: {report.stages[0]}..{report.stages[-1]}")
    lines.append(f"distinct-submovies: {len(report.groups)}")
    for group in report.groups:
        stages = " ".join(str(s) for s in group.stages)
        lines.append(f"submovie at stages {stages}:")
        lines += _indented_movie(group.submovie)
    if report.notes:
        lines.append("pair log:")
        lines += [f"  {note}" for note in report.notes]
    return "\n".join(lines) + "\n"
