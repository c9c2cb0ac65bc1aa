"""Tile systems and assembly semantics on the square lattice.

Square tiles carry a labeled, strength-weighted glue on each side.  Two
abutting glues bond only when label and strength both agree and the
strength is positive.  An assembly is stable at temperature tau when no
cut of its bond graph is lighter than tau, and a tile may attach to a
stable assembly exactly when its new bonds alone reach tau.

Growth is nondeterministic in the model; here it is driven by explicit
selection policies so every run is replayable bit for bit.  Bounded
regions stand in for the infinite plane: attachment sites outside the
region are reported at the end of a run, never silently dropped.
"""

from __future__ import annotations

import random
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Container, Iterable, Iterator, Optional, Sequence

import networkx as nx

from .grid import DIRECTIONS, Direction, Point, PointSet, is_connected, neighbors

DEFAULT_MAX_STEPS = 100_000

VERDICT_VIOLATION = "VIOLATION"
VERDICT_INCOMPLETE_OK = "INCOMPLETE-OK"


@dataclass(frozen=True)
class Glue:
    """A side label with a nonnegative binding strength.

    The null glue is written ``-`` in files and never binds; the ``-``
    label is reserved for it.
    """

    label: str
    strength: int

    def __post_init__(self) -> None:
        if not self.label or any(c.isspace() for c in self.label) or "=" in self.label:
            raise ValueError(f"bad glue label: {self.label!r}")
        if self.strength < 0:
            raise ValueError(f"glue strength must be >= 0, got {self.strength}")
        if self.label == "-" and self.strength != 0:
            raise ValueError("the null label '-' cannot carry positive strength")


NULL_GLUE = Glue("-", 0)


def glues_bind(a: Glue, b: Glue) -> int:
    """Strength of the bond two facing glues form: their common strength
    when they are equal in both label and strength, else zero."""
    if a.label == b.label and a.strength == b.strength and a.strength > 0:
        return a.strength
    return 0


@dataclass(frozen=True)
class TileType:
    """An un-rotatable unit tile: a name and one glue per side."""

    name: str
    north: Glue = NULL_GLUE
    east: Glue = NULL_GLUE
    south: Glue = NULL_GLUE
    west: Glue = NULL_GLUE

    def __post_init__(self) -> None:
        if not self.name or any(c.isspace() for c in self.name):
            raise ValueError(f"bad tile name: {self.name!r}")

    def glue(self, side: Direction) -> Glue:
        if side is Direction.N:
            return self.north
        if side is Direction.E:
            return self.east
        if side is Direction.S:
            return self.south
        return self.west


class Assembly(Mapping):
    """A nonempty, connected placement of tile types on the lattice.

    Behaves as an immutable mapping from points to tile types; iteration
    order is row-major from the bottom-left for reproducible output.
    """

    __slots__ = ("_tiles",)

    def __init__(self, placements: Mapping[Point, TileType]):
        tiles = dict(sorted(placements.items(), key=lambda kv: (kv[0][1], kv[0][0])))
        if not tiles:
            raise ValueError("assembly must be nonempty")
        if not is_connected(frozenset(tiles)):
            raise ValueError("assembly domain must be connected")
        object.__setattr__(self, "_tiles", tiles)

    def __setattr__(self, name, value):
        raise AttributeError("assemblies are immutable")

    def __getitem__(self, p: Point) -> TileType:
        return self._tiles[p]

    def __iter__(self) -> Iterator[Point]:
        return iter(self._tiles)

    def __len__(self) -> int:
        return len(self._tiles)

    def __repr__(self) -> str:
        return f"Assembly({len(self._tiles)} tiles)"

    @property
    def domain(self) -> PointSet:
        return frozenset(self._tiles)

    def translate(self, vec: Point) -> "Assembly":
        dx, dy = vec
        return Assembly({(x + dx, y + dy): t for (x, y), t in self._tiles.items()})


@dataclass(frozen=True)
class Box:
    """Inclusive axis-aligned bounding region."""

    x0: int
    y0: int
    x1: int
    y1: int

    def __post_init__(self) -> None:
        if self.x1 < self.x0 or self.y1 < self.y0:
            raise ValueError("box corners out of order")

    def __contains__(self, p: Point) -> bool:
        return self.x0 <= p[0] <= self.x1 and self.y0 <= p[1] <= self.y1

    def __str__(self) -> str:
        return f"{self.x0},{self.y0},{self.x1},{self.y1}"

    @classmethod
    def parse(cls, text: str) -> "Box":
        parts = text.split(",")
        if len(parts) != 4:
            raise ValueError(f"expected x0,y0,x1,y1, got {text!r}")
        return cls(*(int(p) for p in parts))


@dataclass(frozen=True)
class TileSystem:
    """Tile set, seed assembly, and temperature."""

    tiles: tuple[TileType, ...]
    seed: Assembly
    temperature: int

    def __post_init__(self) -> None:
        if self.temperature < 1:
            raise ValueError(f"temperature must be >= 1, got {self.temperature}")
        object.__setattr__(self, "tiles", tuple(self.tiles))
        names = [t.name for t in self.tiles]
        if len(set(names)) != len(names):
            raise ValueError("tile names must be unique")
        known = set(self.tiles)
        for p, t in self.seed.items():
            if t not in known:
                raise ValueError(f"seed tile at {p} is not in the tile set")
        if not is_tau_stable(self.seed, self.temperature):
            raise ValueError("seed assembly is not stable at this temperature")

    def tile_named(self, name: str) -> TileType:
        for t in self.tiles:
            if t.name == name:
                return t
        raise KeyError(name)


# ---------------------------------------------------------------------------
# Bonds and stability


def bond_strength(assembly: Mapping[Point, TileType], edge: tuple[Point, Point]) -> int:
    """Strength of the bond carried by one lattice edge of an assembly."""
    p, q = edge
    if p not in assembly or q not in assembly:
        raise ValueError(f"endpoint not placed: {p if p not in assembly else q}")
    d = _direction_between(p, q)
    return glues_bind(assembly[p].glue(d), assembly[q].glue(d.inverse()))


def _direction_between(p: Point, q: Point) -> Direction:
    delta = (q[0] - p[0], q[1] - p[1])
    for d in DIRECTIONS:
        if d.unit == delta:
            return d
    raise ValueError(f"points not adjacent: {p}, {q}")


def binding_graph(assembly: Mapping[Point, TileType]) -> "nx.Graph":
    """Graph on the assembly's cells whose weighted edges are its bonds."""
    graph = nx.Graph()
    graph.add_nodes_from(assembly)
    for p in assembly:
        for d in (Direction.E, Direction.N):
            q = d(p)
            if q in assembly:
                w = glues_bind(assembly[p].glue(d), assembly[q].glue(d.inverse()))
                if w > 0:
                    graph.add_edge(p, q, weight=w)
    return graph


def is_tau_stable(assembly: Mapping[Point, TileType], tau: int) -> bool:
    """Whether every cut of the bond graph weighs at least tau.

    Singletons are stable by convention; anything with a bond-disconnected
    domain admits a weight-zero cut and is not.
    """
    if len(assembly) <= 1:
        return True
    graph = binding_graph(assembly)
    if not nx.is_connected(graph):
        return False
    cut, _ = nx.stoer_wagner(graph)
    return cut >= tau


def attachment_strength(assembly: Mapping[Point, TileType], p: Point, tile: TileType) -> int:
    """Total strength of the bonds a tile would form if placed at p."""
    total = 0
    for d in DIRECTIONS:
        q = d(p)
        if q in assembly:
            total += glues_bind(tile.glue(d), assembly[q].glue(d.inverse()))
    return total


def frontier(
    system: TileSystem,
    assembly: Mapping[Point, TileType],
    region: Optional[Container[Point]] = None,
) -> tuple[tuple[Point, TileType], ...]:
    """Every (position, tile) pair that could stably attach right now.

    Since one new tile's bonds must alone reach the temperature, adding any
    frontier pair to a stable assembly keeps it stable.  Sites are sorted
    by row, column, then tile name.
    """
    sites = []
    seen = set()
    for placed in assembly:
        for p in neighbors(placed):
            if p in assembly or p in seen:
                continue
            seen.add(p)
            if region is not None and p not in region:
                continue
            for t in system.tiles:
                if attachment_strength(assembly, p, t) >= system.temperature:
                    sites.append((p, t))
    sites.sort(key=lambda site: (site[0][1], site[0][0], site[1].name))
    return tuple(sites)


# ---------------------------------------------------------------------------
# Assembly sequences


@dataclass(frozen=True)
class SequenceEvent:
    """One attachment: at step ``index`` the tile was placed at ``position``."""

    index: int
    position: Point
    tile: TileType


@dataclass(frozen=True)
class AssemblySequence:
    """An ordered construction history.

    ``start`` is the assembly the events grow from; None means the
    system's seed.  Splicing can relocate the starting assembly, which is
    why it is carried explicitly.
    """

    system: TileSystem
    events: tuple[SequenceEvent, ...]
    result: Assembly
    start: Optional[Assembly] = None

    @property
    def initial(self) -> Assembly:
        return self.start if self.start is not None else self.system.seed


class ReplayError(ValueError):
    pass


def replay(
    system: TileSystem,
    events: Iterable[SequenceEvent],
    start: Optional[Assembly] = None,
) -> Assembly:
    """Re-run a sequence of attachments, validating every step.

    This is the validity oracle for spliced sequences: each event must
    land on an empty cell and bond with at least the temperature's worth
    of strength.
    """
    tiles = dict(start if start is not None else system.seed)
    for k, ev in enumerate(events, 1):
        if ev.position in tiles:
            raise ReplayError(f"invalid at step {k}: position occupied")
        if attachment_strength(tiles, ev.position, ev.tile) < system.temperature:
            raise ReplayError(f"invalid at step {k}: insufficient strength")
        tiles[ev.position] = ev.tile
    return Assembly(tiles)


class LexicographicPolicy:
    """Always take the first frontier site: lowest row, then column, then
    tile name."""

    def __init__(self, seed: Optional[int] = None):
        pass

    def choose(self, sites: Sequence[tuple[Point, TileType]]) -> tuple[Point, TileType]:
        return sites[0]


class SeededUniformPolicy:
    """Uniform choice over frontier sites from a seeded PRNG."""

    def __init__(self, seed: int = 0):
        self._rng = random.Random(seed)

    def choose(self, sites: Sequence[tuple[Point, TileType]]) -> tuple[Point, TileType]:
        return sites[self._rng.randrange(len(sites))]


def clipped_frontier(
    system: TileSystem,
    assembly: Mapping[Point, TileType],
    region: Container[Point],
) -> tuple[tuple[Point, TileType], ...]:
    """Attachment sites that exist beyond the region boundary.

    A bounded run stops at the region's edge; this reports what it was
    forced to leave out, so boundary clipping is visible instead of
    silent.
    """
    return tuple(
        site for site in frontier(system, assembly, None) if site[0] not in region
    )


def run(
    system: TileSystem,
    region: Optional[Container[Point]] = None,
    policy=None,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> AssemblySequence:
    """Grow the seed one tile at a time until nothing attaches in the
    region or the step budget runs out.

    The policy picks from the sorted frontier, so runs are reproducible:
    the same system, region, policy, and budget give identical sequences.
    Use :func:`clipped_frontier` on the result to see what the region
    boundary cut off.
    """
    if policy is None:
        policy = LexicographicPolicy()
    tiles = dict(system.seed)
    if region is not None and any(p not in region for p in tiles):
        raise ValueError("seed outside region")

    candidates: dict[Point, tuple[TileType, ...]] = {}

    def refresh(p: Point) -> None:
        if p in tiles or (region is not None and p not in region):
            candidates.pop(p, None)
            return
        attachable = tuple(
            t for t in system.tiles if attachment_strength(tiles, p, t) >= system.temperature
        )
        if attachable:
            candidates[p] = attachable
        else:
            candidates.pop(p, None)

    for placed in list(tiles):
        for p in neighbors(placed):
            refresh(p)

    events = []
    step = 0
    while candidates and step < max_steps:
        sites = [
            (p, t)
            for p in sorted(candidates, key=lambda v: (v[1], v[0]))
            for t in sorted(candidates[p], key=lambda t: t.name)
        ]
        pos, tile = policy.choose(sites)
        step += 1
        events.append(SequenceEvent(step, pos, tile))
        tiles[pos] = tile
        candidates.pop(pos, None)
        for q in neighbors(pos):
            refresh(q)

    return AssemblySequence(system, tuple(events), Assembly(tiles))


# ---------------------------------------------------------------------------
# Bounded strict self-assembly checking


@dataclass(frozen=True)
class StrictCheck:
    """Outcome of a bounded strict self-assembly check.

    VIOLATION carries a witness cell where the system can grow off the
    target.  INCOMPLETE-OK means no off-target site appeared before the
    run stopped; it is evidence, never a proof.
    """

    status: str
    witness: Optional[Point]
    detail: str
    steps: int


def check_strict_self_assembly(
    system: TileSystem,
    target: Iterable[Point],
    region: Container[Point],
    policy=None,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> StrictCheck:
    """Run the system and watch for any chance to leave the target shape.

    Every step checks the whole in-region frontier, so a violation is
    found as soon as any off-target attachment becomes possible, whether
    or not the policy would have taken it.
    """
    if policy is None:
        policy = LexicographicPolicy()
    target_set = frozenset(target)
    tiles = dict(system.seed)
    if any(p not in region for p in tiles):
        raise ValueError("seed outside region")
    off_seed = sorted((p for p in tiles if p not in target_set), key=lambda p: (p[1], p[0]))
    if off_seed:
        return StrictCheck(
            VERDICT_VIOLATION, off_seed[0], f"seed tile off target at {off_seed[0]}", 0
        )

    steps = 0
    while True:
        sites = frontier(system, tiles, region)
        off = sorted(
            {p for p, _ in sites if p not in target_set}, key=lambda p: (p[1], p[0])
        )
        if off:
            return StrictCheck(
                VERDICT_VIOLATION,
                off[0],
                f"frontier site off target at {off[0]} after {steps} steps",
                steps,
            )
        if not sites:
            unrestricted = frontier(system, tiles, None)
            covered = len(target_set & tiles.keys())
            if unrestricted:
                detail = (
                    f"region boundary reached; {len(unrestricted) - len(sites)} sites"
                    f" clipped; covered {covered}/{len(target_set)} target cells"
                )
            else:
                detail = f"terminal; covered {covered}/{len(target_set)} target cells"
            return StrictCheck(VERDICT_INCOMPLETE_OK, None, detail, steps)
        if steps >= max_steps:
            covered = len(target_set & tiles.keys())
            return StrictCheck(
                VERDICT_INCOMPLETE_OK,
                None,
                f"step limit reached; covered {covered}/{len(target_set)} target cells",
                steps,
            )
        pos, tile = policy.choose(sites)
        tiles[pos] = tile
        steps += 1


# ---------------------------------------------------------------------------
# Tile-system files


def _format_glue(g: Glue) -> str:
    return f"{g.label}:{g.strength}"


def _parse_glue(token: str, lineno: int) -> Glue:
    label, sep, raw = token.rpartition(":")
    if not sep or not label:
        raise ValueError(f"line {lineno}: bad glue {token!r}")
    try:
        strength = int(raw)
    except ValueError:
        raise ValueError(f"line {lineno}: bad glue strength {raw!r}") from None
    try:
        return Glue(label, strength)
    except ValueError as exc:
        raise ValueError(f"line {lineno}: {exc}") from None


def parse_tile_system(text: str) -> TileSystem:
    """Parse the line-based tile-system format.

    Directives: ``temperature <t>``, ``tile <name> N=<glue> E=<glue>
    S=<glue> W=<glue>`` with glues written ``label:strength`` (``-:0`` for
    the null glue), and one ``seed <x> <y> <name>`` per seed tile.  Blank
    lines and ``#`` comments are skipped.
    """
    temperature: Optional[int] = None
    tile_list: list[TileType] = []
    by_name: dict[str, TileType] = {}
    seed_placements: dict[Point, TileType] = {}

    for lineno, raw in enumerate(text.split("\n"), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "temperature":
            if temperature is not None:
                raise ValueError(f"line {lineno}: duplicate temperature")
            if len(tokens) != 2:
                raise ValueError(f"line {lineno}: expected 'temperature <t>'")
            temperature = int(tokens[1])
        elif kind == "tile":
            if len(tokens) != 6:
                raise ValueError(f"line {lineno}: expected 'tile <name> N=.. E=.. S=.. W=..'")
            name = tokens[1]
            if name in by_name:
                raise ValueError(f"line {lineno}: duplicate tile {name!r}")
            glues = {}
            for token in tokens[2:]:
                side, sep, rest = token.partition("=")
                if not sep or side not in ("N", "E", "S", "W") or side in glues:
                    raise ValueError(f"line {lineno}: bad side assignment {token!r}")
                glues[side] = _parse_glue(rest, lineno)
            tile = TileType(name, glues["N"], glues["E"], glues["S"], glues["W"])
            tile_list.append(tile)
            by_name[name] = tile
        elif kind == "seed":
            if len(tokens) != 4:
                raise ValueError(f"line {lineno}: expected 'seed <x> <y> <name>'")
            x, y = int(tokens[1]), int(tokens[2])
            if tokens[3] not in by_name:
                raise ValueError(f"line {lineno}: unknown tile {tokens[3]!r}")
            if (x, y) in seed_placements:
                raise ValueError(f"line {lineno}: duplicate seed position {(x, y)}")
            seed_placements[(x, y)] = by_name[tokens[3]]
        else:
            raise ValueError(f"line {lineno}: unknown directive {kind!r}")

    if temperature is None:
        raise ValueError("missing temperature")
    if not seed_placements:
        raise ValueError("missing seed placement")
    return TileSystem(tuple(tile_list), Assembly(seed_placements), temperature)


def format_tile_system(system: TileSystem) -> str:
    """Inverse of :func:`parse_tile_system`; canonical output round-trips."""
    lines = [f"temperature {system.temperature}"]
    for t in system.tiles:
        lines.append(
            f"tile {t.name}"
            f" N={_format_glue(t.north)} E={_format_glue(t.east)}"
            f" S={_format_glue(t.south)} W={_format_glue(t.west)}"
        )
    for (x, y), t in system.seed.items():
        lines.append(f"seed {x} {y} {t.name}")
    return "\n".join(lines) + "\n"
