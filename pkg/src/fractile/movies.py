"""Window movies: what an assembly sequence shows along a window's cut.

A movie records, in placement order, every positive-strength glue a tile
presents across the window boundary.  The bond-forming submovie keeps
only the glues that end up in actual bonds.  When one sequence shows the
same bond-forming submovie along two windows, one a translate of the
other's surroundings, the window interiors are interchangeable: `splice`
rebuilds the sequence with the smaller window's interior transplanted
into the larger window, and the result still assembles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .grid import DIRECTIONS, Direction, Point, translate
from .tiles import (
    Assembly,
    AssemblySequence,
    Glue,
    ReplayError,
    SequenceEvent,
    TileType,
    glues_bind,
    replay,
)
from .windows import WindowLike, inside_of


@dataclass(frozen=True)
class GlueEvent:
    """One glue presented across the cut: ``vertex`` is the cell of the
    tile doing the presenting, ``orientation`` the side it presents on."""

    step: int
    vertex: Point
    orientation: Direction
    glue: Glue

    def translated(self, vec: Point) -> "GlueEvent":
        return GlueEvent(
            self.step,
            (self.vertex[0] + vec[0], self.vertex[1] + vec[1]),
            self.orientation,
            self.glue,
        )


@dataclass(frozen=True)
class WindowMovie:
    """Every glue event a sequence presents along one window, in order."""

    window: frozenset
    events: tuple[GlueEvent, ...]


@dataclass(frozen=True)
class BondFormingSubmovie:
    """The events of a movie whose glues carry bonds in the final result."""

    events: tuple[GlueEvent, ...]

    def canonical(self) -> tuple:
        """Translation- and step-invariant key: two submovies are
        translates of each other iff their keys are equal."""
        if not self.events:
            return ()
        bx, by = self.events[0].vertex
        return tuple(
            (e.vertex[0] - bx, e.vertex[1] - by, e.orientation.name, e.glue.label, e.glue.strength)
            for e in self.events
        )


def _cut_events(inside: frozenset, step: int, pos: Point, tile: TileType) -> list[GlueEvent]:
    events = []
    for d in DIRECTIONS:
        q = d(pos)
        if ((pos in inside) != (q in inside)) and tile.glue(d).strength > 0:
            events.append(GlueEvent(step, pos, d, tile.glue(d)))
    events.sort(key=lambda e: e.orientation.unit)
    return events


def record_movie(seq: AssemblySequence, w: WindowLike) -> WindowMovie:
    """Record the glue events ``seq`` presents along ``w``'s cut.

    Tiles already present at the start contribute events at step 0,
    ordered by cell (row-major) — their glues face the cut from the
    beginning.  A placement that crosses the cut on several sides emits
    one event per side, ordered by orientation.
    """
    inside = frozenset(inside_of(w))
    events: list[GlueEvent] = []
    start = seq.initial
    for pos in start:
        events.extend(_cut_events(inside, 0, pos, start[pos]))
    for ev in seq.events:
        events.extend(_cut_events(inside, ev.index, ev.position, ev.tile))
    return WindowMovie(inside, tuple(events))


def bond_forming(movie: WindowMovie, result: Assembly, tau: int) -> BondFormingSubmovie:
    """Filter a movie down to the events whose glues actually bond in
    ``result``.

    ``tau`` is the recording system's temperature; bonding itself is
    temperature-independent (any positive matched strength is a bond),
    so it only sanity-checks the call.
    """
    if tau < 1:
        raise ValueError(f"temperature must be >= 1, got {tau}")
    kept = []
    for e in movie.events:
        q = e.orientation(e.vertex)
        if e.vertex not in result or q not in result:
            continue
        facing = result[q].glue(e.orientation.inverse())
        if glues_bind(result[e.vertex].glue(e.orientation), facing) > 0:
            kept.append(e)
    return BondFormingSubmovie(tuple(kept))


def submovie_matches(a: BondFormingSubmovie, b: BondFormingSubmovie, vec: Point) -> bool:
    """Whether shifting every event of ``a`` by ``vec`` reproduces ``b``:
    same vertices, orientations, and glues, in the same order.  Absolute
    step numbers are ignored; only the order carries information."""
    if len(a.events) != len(b.events):
        return False
    dx, dy = vec
    return all(
        (ea.vertex[0] + dx, ea.vertex[1] + dy) == eb.vertex
        and ea.orientation is eb.orientation
        and ea.glue == eb.glue
        for ea, eb in zip(a.events, b.events)
    )


def match_up_to_translation(
    a: BondFormingSubmovie, b: BondFormingSubmovie
) -> Optional[Point]:
    """The nonzero shift taking ``a`` to ``b``, if one exists.

    The only viable candidate comes from the first event pair; it is then
    verified against the full lists.  Returns None when the movies do not
    match, match only under the zero shift, or are both empty (no
    candidate is derivable).
    """
    if len(a.events) != len(b.events) or not a.events:
        return None
    first_a, first_b = a.events[0], b.events[0]
    vec = (first_b.vertex[0] - first_a.vertex[0], first_b.vertex[1] - first_a.vertex[1])
    if vec == (0, 0):
        return None
    return vec if submovie_matches(a, b, vec) else None


def format_movie(movie) -> str:
    """One line per event: ``step x y orientation label strength``."""
    lines = [
        f"{e.step} {e.vertex[0]} {e.vertex[1]} {e.orientation.name}"
        f" {e.glue.label} {e.glue.strength}"
        for e in movie.events
    ]
    return "\n".join(lines) + ("\n" if lines else "")


class SpliceError(ValueError):
    """A splice hypothesis does not hold for the given inputs."""


def splice(
    seq: AssemblySequence, w: WindowLike, w_prime: WindowLike, c_vec: Point
) -> AssemblySequence:
    """Transplant ``w``'s interior into ``w_prime`` along a matching movie.

    Requires a nonzero shift ``c_vec`` under which (1) ``w`` shifted is
    enclosed in ``w_prime``, (2) the sequence's bond-forming submovies
    along the two windows coincide, and (3) the starting assembly sits
    inside both windows or outside both.  The rebuilt sequence interleaves
    the placements outside ``w_prime`` with the shifted placements from
    inside ``w``, keyed on the shared submovie so every attachment still
    has its strength when it happens; its result is exactly (outside
    ``w_prime``) ∪ (inside ``w``, shifted).

    Hypothesis violations raise :class:`SpliceError` naming the failed
    hypothesis.  A replay failure after the hypotheses pass is a bug, not
    an input error, and raises RuntimeError.
    """
    inside_small = frozenset(inside_of(w))
    inside_big = frozenset(inside_of(w_prime))
    system = seq.system
    result = seq.result
    dx, dy = c_vec

    if (dx, dy) == (0, 0):
        raise SpliceError("translation hypothesis failed: the shift vector must be nonzero")
    if not translate(inside_small, c_vec) <= inside_big:
        raise SpliceError(
            "enclosure hypothesis failed: the shifted window is not enclosed"
            " in the target window"
        )
    start = seq.initial
    start_cells = frozenset(start)
    in_small = start_cells & inside_small
    in_big = start_cells & inside_big
    seed_inside = bool(in_small or in_big)
    if seed_inside and not (in_small == start_cells and in_big == start_cells):
        raise SpliceError(
            "seed placement hypothesis failed: the seed must lie inside both"
            " windows or outside both"
        )
    small_sub = bond_forming(record_movie(seq, inside_small), result, system.temperature)
    big_sub = bond_forming(record_movie(seq, inside_big), result, system.temperature)
    if not submovie_matches(small_sub, big_sub, c_vec):
        raise SpliceError(
            "movie hypothesis failed: the bond-forming submovies do not match"
            " under the shift"
        )

    outer_events = [ev for ev in seq.events if ev.position not in inside_big]
    inner_events = [ev for ev in seq.events if ev.position in inside_small]

    gamma0 = start.translate(c_vec) if seed_inside else start
    placed: dict[Point, TileType] = dict(gamma0)
    rebuilt: list[tuple[Point, TileType]] = []
    oi = 0
    ii = 0

    def append(pos: Point, tile: TileType) -> None:
        if pos in placed:
            raise RuntimeError(f"splice invariant broken: duplicate placement at {pos}")
        placed[pos] = tile
        rebuilt.append((pos, tile))

    # Walk the target-window submovie; each event forces the placements
    # that produce it, pulled from whichever side of the cut it lives on.
    for ev in big_sub.events:
        v = ev.vertex
        if v not in inside_big:
            while v not in placed:
                if oi >= len(outer_events):
                    raise RuntimeError(f"splice invariant broken: no outer placement at {v}")
                nxt = outer_events[oi]
                oi += 1
                append(nxt.position, nxt.tile)
        else:
            if v in placed:
                continue
            if (v[0] - dx, v[1] - dy) not in inside_small:
                raise SpliceError(
                    "movie hypothesis failed: a matched event does not originate"
                    " inside the shifted window"
                )
            while v not in placed:
                if ii >= len(inner_events):
                    raise RuntimeError(f"splice invariant broken: no inner placement at {v}")
                nxt = inner_events[ii]
                ii += 1
                append((nxt.position[0] + dx, nxt.position[1] + dy), nxt.tile)

    while ii < len(inner_events):
        nxt = inner_events[ii]
        ii += 1
        append((nxt.position[0] + dx, nxt.position[1] + dy), nxt.tile)
    while oi < len(outer_events):
        nxt = outer_events[oi]
        oi += 1
        append(nxt.position, nxt.tile)

    expected = {p: result[p] for p in result if p not in inside_big}
    for p in result:
        if p in inside_small:
            expected[(p[0] + dx, p[1] + dy)] = result[p]
    if placed != expected:
        raise RuntimeError("splice invariant broken: result is not the outer/inner union")

    events = tuple(
        SequenceEvent(k, pos, tile) for k, (pos, tile) in enumerate(rebuilt, 1)
    )
    try:
        final = replay(system, events, start=gamma0)
    except ReplayError as exc:
        raise RuntimeError(f"spliced sequence does not replay: {exc}") from exc
    start_field = None if gamma0 == system.seed else gamma0
    return AssemblySequence(system, events, final, start=start_field)
