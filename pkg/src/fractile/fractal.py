"""Discrete self-similar fractals from square generators.

A generator is a pattern of occupied cells inside the g-by-g square that
contains the origin and meets every row and column.  Substituting the
pattern into itself yields the finite stages of a fractal; the infinite
union of stages is a tree fractal exactly when the generator's grid graph
is a tree and the pattern has one horizontal and one vertical bridge.

This module also locates piers (cells free on exactly three sides),
classifies them against the bridges, and picks the pier/anchor pair that
the window machinery in :mod:`fractile.windows` is built around.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .grid import (
    DIRECTIONS,
    Direction,
    Point,
    PointSet,
    connected_components,
    extents,
    free_directions,
    grid_edges,
    is_connected,
    is_tree,
)

TAXONOMY_REAL = "real"
TAXONOMY_PARALLEL = "parallel-single-bridge"
TAXONOMY_ORTHOGONAL = "orthogonal-single-bridge"
TAXONOMY_DOUBLE = "double-bridge"


@dataclass(frozen=True)
class Generator:
    """Occupied cells of a side-g square pattern.

    Invariants, enforced at construction: g >= 2, the origin is occupied,
    cells stay inside the g-by-g square, and every row and every column of
    the square holds at least one cell.
    """

    g: int
    cells: PointSet

    def __post_init__(self) -> None:
        if self.g < 2:
            raise ValueError(f"side must be at least 2, got {self.g}")
        object.__setattr__(self, "cells", frozenset(self.cells))
        for (x, y) in self.cells:
            if not (0 <= x < self.g and 0 <= y < self.g):
                raise ValueError(f"cell outside {self.g}x{self.g} square: {(x, y)}")
        if (0, 0) not in self.cells:
            raise ValueError("origin not occupied")
        rows = {y for _, y in self.cells}
        cols = {x for x, _ in self.cells}
        for k in range(self.g):
            if k not in rows:
                raise ValueError(f"row {k} empty")
            if k not in cols:
                raise ValueError(f"column {k} empty")

    def __contains__(self, p: Point) -> bool:
        return p in self.cells

    def __len__(self) -> int:
        return len(self.cells)


@dataclass(frozen=True)
class Bridge:
    """A pair of cells on opposite extremes of the same row or column.

    ``kind`` is "horizontal" (leftmost and rightmost cell of row ``index``)
    or "vertical" (bottom and top cell of column ``index``).  ``connected``
    records whether a path inside the point set joins the two endpoints.
    """

    kind: str
    index: int
    endpoints: tuple[Point, Point]
    connected: bool


@dataclass(frozen=True)
class Pier:
    """A cell free on exactly three sides, pointing away from its support."""

    position: Point
    pointing: Direction
    taxonomy: str


@dataclass(frozen=True)
class PierAnchor:
    """A pier together with the stage-copy anchor its windows are built at.

    ``pier`` is the (p, q) cell inside the generator, ``anchor`` the (e, f)
    cell selecting which copy of the previous stage the windows live in,
    ``glue_side`` the single window side that carries bonds, and
    ``bridge_offset`` the bridge coordinate (row of the horizontal bridge
    for E/W glue sides, column of the vertical bridge for N/S) used to
    align windows of different stages.
    """

    pier: Point
    pointing: Direction
    anchor: Point
    glue_side: Direction
    bridge_offset: int


# ---------------------------------------------------------------------------
# .gen format


def parse_generator(text: str) -> Generator:
    """Parse the .gen format: a ``g=<int>`` header, then g rows of g cells,
    ``#`` occupied and ``.`` empty, top row first."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or not lines[0].startswith("g="):
        raise ValueError("first line must be g=<int>")
    try:
        g = int(lines[0][2:])
    except ValueError:
        raise ValueError(f"bad side in header: {lines[0]!r}") from None
    grid_lines = lines[1:]
    if len(grid_lines) != g:
        raise ValueError(f"expected {g} grid lines, got {len(grid_lines)}")
    cells = set()
    for i, line in enumerate(grid_lines):
        if len(line) != g:
            raise ValueError(f"line {i + 2}: expected {g} cells, got {len(line)}")
        y = g - 1 - i
        for x, ch in enumerate(line):
            if ch == "#":
                cells.add((x, y))
            elif ch != ".":
                raise ValueError(f"line {i + 2}: bad cell {ch!r}")
    return Generator(g, frozenset(cells))


def format_generator(gen: Generator) -> str:
    """Inverse of :func:`parse_generator`; round-trips bit-exactly."""
    rows = []
    for y in range(gen.g - 1, -1, -1):
        rows.append("".join("#" if (x, y) in gen.cells else "." for x in range(gen.g)))
    return f"g={gen.g}\n" + "\n".join(rows) + "\n"


# ---------------------------------------------------------------------------
# Stages and scaling


def stage(gen: Generator, i: int) -> PointSet:
    """The i-th finite stage: stage 1 is the generator itself, and each
    later stage translates the previous one to every occupied cell of the
    pattern, scaled up by a factor of g per level."""
    if i < 1:
        raise ValueError(f"stage index must be >= 1, got {i}")
    pts = set(gen.cells)
    block = 1
    for _ in range(i - 1):
        block *= gen.g
        pts = {(x + block * nx, y + block * ny) for (nx, ny) in gen.cells for (x, y) in pts}
    return frozenset(pts)


def scale(points: Iterable[Point], c: int) -> PointSet:
    """Replace every point by a c-by-c block of points."""
    if c < 1:
        raise ValueError(f"scale factor must be >= 1, got {c}")
    out = set()
    for (x, y) in points:
        for dx in range(c):
            for dy in range(c):
                out.add((c * x + dx, c * y + dy))
    return frozenset(out)


# ---------------------------------------------------------------------------
# Bridges and piers


def bridges(points: Iterable[Point]) -> list[Bridge]:
    """All horizontal and vertical bridges of a nonempty point set.

    A horizontal bridge at row y is the pair of cells in the leftmost and
    rightmost columns of the whole set, both occupied at that row; vertical
    bridges are the transpose.  Horizontal bridges come first, by row, then
    vertical ones by column.
    """
    pts = set(points)
    ext = extents(pts)
    comps = connected_components(pts)
    comp_of = {}
    for idx, comp in enumerate(comps):
        for p in comp:
            comp_of[p] = idx
    out = []
    for y in range(ext.bottom, ext.top + 1):
        a, b = (ext.left, y), (ext.right, y)
        if a in pts and b in pts:
            out.append(Bridge("horizontal", y, (a, b), comp_of[a] == comp_of[b]))
    for x in range(ext.left, ext.right + 1):
        a, b = (x, ext.bottom), (x, ext.top)
        if a in pts and b in pts:
            out.append(Bridge("vertical", x, (a, b), comp_of[a] == comp_of[b]))
    return out


def bridge_counts(points: Iterable[Point]) -> tuple[int, int]:
    """(number of horizontal bridges, number of vertical bridges)."""
    bs = bridges(points)
    nh = sum(1 for b in bs if b.kind == "horizontal")
    return nh, len(bs) - nh


def is_tree_fractal_generator(gen: Generator) -> tuple[bool, str]:
    """Check the tree-fractal characterization, reporting the first failing
    clause: the pattern must be a tree and must have exactly one bridge of
    each kind."""
    if not is_tree(gen.cells):
        return False, "not a tree"
    nh, nv = bridge_counts(gen.cells)
    if nh != 1:
        return False, f"{nh} horizontal bridges (need exactly 1)"
    if nv != 1:
        return False, f"{nv} vertical bridges (need exactly 1)"
    return True, "tree-fractal generator"


def piers(gen: Generator) -> list[Pier]:
    """Piers of the generator, in row-major order (bottom row first).

    A pier is a cell with exactly three free sides; it points in the
    direction whose inverse leads to its single occupied neighbor.  The
    taxonomy records how the pier sits on the pattern's bridges.
    """
    bs = bridges(gen.cells)
    out = []
    for p in sorted(gen.cells, key=lambda q: (q[1], q[0])):
        free = free_directions(gen.cells, p)
        if len(free) != 3:
            continue
        (occupied,) = (d for d in DIRECTIONS if d not in free)
        pointing = occupied.inverse()
        mine = [b for b in bs if p in b.endpoints]
        if not mine:
            tax = TAXONOMY_REAL
        elif len(mine) == 2:
            tax = TAXONOMY_DOUBLE
        else:
            horizontal = mine[0].kind == "horizontal"
            along = pointing in (Direction.E, Direction.W)
            tax = TAXONOMY_PARALLEL if horizontal == along else TAXONOMY_ORTHOGONAL
        out.append(Pier(p, pointing, tax))
    return out


# ---------------------------------------------------------------------------
# Free points

# The free_point_* constructions all exploit the same fact: a maximal
# connected component has no neighbors in the rest of the set, so the
# nearest point of the set on the far side of a component cell is separated
# from it by at least one empty cell and is therefore free toward the
# component.  Scan orders are fixed so the returned point is reproducible,
# and the full output contract is re-checked before returning rather than
# trusted.


def _check_free_point(
    pts: PointSet, comp: PointSet, p: Point, conditions: dict[str, bool]
) -> Point:
    conditions = {"point outside the component": p not in comp, **conditions}
    for what, ok in conditions.items():
        if not ok:
            raise RuntimeError(f"constructed point {p} violates its contract: {what}")
    return p


def _component_of(points: PointSet, component: Iterable[Point]) -> PointSet:
    comp = frozenset(component)
    for c in connected_components(points):
        if c == comp:
            return c
    raise ValueError("C is not a connected component of G")


def _connected_bridge(points: PointSet, kind: str) -> Bridge:
    for b in bridges(points):
        if b.kind == kind and b.connected:
            return b
    raise ValueError(f"no connected {kind} bridge")


def free_point_north(points: Iterable[Point], component: Iterable[Point]) -> Point:
    """A north-free point outside ``component``, strictly below the top row.

    Requires a connected horizontal bridge and a component that reaches the
    top row while avoiding the leftmost column.  Scanning the component's
    columns (bottommost first), the topmost point of the set strictly below
    the component is north-free: the component is a maximal connected
    piece, so the cell separating the two would otherwise belong to it.
    """
    pts = frozenset(points)
    comp = _component_of(pts, component)
    ext = extents(pts)
    if all(y != ext.top for _, y in comp):
        raise ValueError("component does not reach the top row")
    if any(x == ext.left for x, _ in comp):
        raise ValueError("component touches the leftmost column")
    _connected_bridge(pts, "horizontal")
    bottoms: dict[int, int] = {}
    for x, y in comp:
        bottoms[x] = min(y, bottoms.get(x, y))
    point = None
    for x, floor in sorted(bottoms.items(), key=lambda kv: (kv[1], kv[0])):
        below = [q for q in pts if q[0] == x and q[1] < floor]
        if below:
            point = max(below, key=lambda q: q[1])
            break
    if point is None:
        raise RuntimeError("no point of the set lies below the component")
    return _check_free_point(
        pts,
        comp,
        point,
        {
            "north side free": Direction.N(point) not in pts,
            "below the top row": point[1] < ext.top,
        },
    )


def free_point_northeast(points: Iterable[Point], component: Iterable[Point]) -> Point:
    """An east-free point of the top row, outside ``component`` and west of
    the rightmost column.

    Requires a connected vertical bridge and a component that touches the
    rightmost column and the top row but not the bottom row.  Returns the
    rightmost top-row cell of the bridge path.
    """
    pts = frozenset(points)
    comp = _component_of(pts, component)
    ext = extents(pts)
    if all(x != ext.right for x, _ in comp):
        raise ValueError("component does not reach the rightmost column")
    if all(y != ext.top for _, y in comp):
        raise ValueError("component does not reach the top row")
    if any(y == ext.bottom for _, y in comp):
        raise ValueError("component touches the bottom row")
    _connected_bridge(pts, "vertical")
    point = None
    for cx in sorted(x for x, y in comp if y == ext.top):
        row_west = [q for q in pts if q[1] == ext.top and q[0] < cx]
        if not row_west:
            continue
        candidate = max(row_west, key=lambda q: q[0])
        if candidate not in comp:
            point = candidate
            break
    if point is None:
        raise RuntimeError("no point of the set lies west of the component's top row")
    return _check_free_point(
        pts,
        comp,
        point,
        {
            "east side free": Direction.E(point) not in pts,
            "in the top row": point[1] == ext.top,
            "west of the rightmost column": point[0] < ext.right,
        },
    )


def free_point_east(points: Iterable[Point], component: Iterable[Point]) -> Point:
    """An east-free point outside ``component``, strictly west of it.

    Requires a connected vertical bridge and a component that touches the
    rightmost column but not the bottom row.  Mirror image of
    :func:`free_point_north`: scanning the component's rows (leftmost
    first), the rightmost point of the set strictly west of the component
    is east-free by the same maximality argument.
    """
    pts = frozenset(points)
    comp = _component_of(pts, component)
    ext = extents(pts)
    if all(x != ext.right for x, _ in comp):
        raise ValueError("component does not reach the rightmost column")
    if any(y == ext.bottom for _, y in comp):
        raise ValueError("component touches the bottom row")
    _connected_bridge(pts, "vertical")
    lefts: dict[int, int] = {}
    for x, y in comp:
        lefts[y] = min(x, lefts.get(y, x))
    point = None
    for y, wall in sorted(lefts.items(), key=lambda kv: (kv[1], kv[0])):
        west = [q for q in pts if q[1] == y and q[0] < wall]
        if west:
            point = max(west, key=lambda q: q[0])
            break
    if point is None:
        raise RuntimeError("no point of the set lies west of the component")
    return _check_free_point(
        pts,
        comp,
        point,
        {
            "east side free": Direction.E(point) not in pts,
            "west of the rightmost column": point[0] < ext.right,
        },
    )


# ---------------------------------------------------------------------------
# Pier/anchor selection

# The anchor rules are solved in one canonical orientation per taxonomy
# (north-pointing for parallel piers, east-pointing with the pier on the
# top row for orthogonal ones) and carried to the other orientations by a
# symmetry of the square: transform the pattern, solve, map the answer
# back.  A transform is (swap, negx, negy): optionally swap the axes, then
# optionally mirror each axis within the square.

_Transform = tuple[bool, bool, bool]

_TRANSFORMS: tuple[_Transform, ...] = (
    (False, False, False),
    (False, True, False),
    (False, False, True),
    (False, True, True),
    (True, False, False),
    (True, True, False),
    (True, False, True),
    (True, True, True),
)


def _apply_point(t: _Transform, g: int, p: Point) -> Point:
    swap, negx, negy = t
    x, y = (p[1], p[0]) if swap else p
    return (g - 1 - x if negx else x, g - 1 - y if negy else y)


def _apply_dir(t: _Transform, d: Direction) -> Direction:
    swap, negx, negy = t
    dx, dy = (d.unit[1], d.unit[0]) if swap else d.unit
    return Direction((-dx if negx else dx, -dy if negy else dy))


def _invert(t: _Transform) -> _Transform:
    swap, negx, negy = t
    return (True, negy, negx) if swap else t


def _transform_generator(t: _Transform, gen: Generator) -> Generator:
    return Generator(gen.g, frozenset(_apply_point(t, gen.g, p) for p in gen.cells))


def _topmost_below(cells: PointSet, column: int, limit: int) -> Optional[Point]:
    ys = [y for x, y in cells if x == column and y < limit]
    return (column, max(ys)) if ys else None


def _solve_parallel_north(gen: Generator, pier: Point) -> Point:
    # North-pointing parallel pier sits at (p, g-1) on the vertical bridge.
    p, q = pier
    assert q == gen.g - 1
    column = 1 if p == 0 else p - 1
    anchor = _topmost_below(gen.cells, column, gen.g - 1)
    if anchor is None:
        raise RuntimeError(f"no anchor cell in column {column}")
    return anchor


def _solve_orthogonal_east(gen: Generator, pier: Point) -> Point:
    # East-pointing orthogonal pier sits at (p, g-1) on the vertical bridge.
    p, q = pier
    assert q == gen.g - 1
    if p < gen.g - 1:
        anchor = _topmost_below(gen.cells, p, gen.g - 2)
    else:
        anchor = _topmost_below(gen.cells, 0, gen.g - 1)
    if anchor is None:
        raise RuntimeError("no anchor cell for orthogonal pier")
    return anchor


def select_pier_anchor(gen: Generator, pier: Optional[Point] = None) -> PierAnchor:
    """Pick a pier and the anchor copy its windows are carved from.

    Among the generator's piers, real ones are preferred, then parallel
    single-bridge, then orthogonal single-bridge; double-bridge piers are
    never selected.  Ties go to the smallest (x, y) position.  Passing
    ``pier`` forces a specific pier instead.

    The window wraps the pier's copy-of-a-copy block, so it touches the
    rest of the shape only through the side facing the pier's support; that
    side becomes ``glue_side`` and must carry a single line of glues, which
    is verified here on the second stage before returning.
    """
    ok, diagnosis = is_tree_fractal_generator(gen)
    if not ok:
        raise ValueError(f"not a tree-fractal generator: {diagnosis}")
    candidates = piers(gen)
    if pier is not None:
        chosen = next((pr for pr in candidates if pr.position == pier), None)
        if chosen is None:
            raise ValueError(f"{pier} is not a pier of the generator")
        if chosen.taxonomy == TAXONOMY_DOUBLE:
            raise ValueError("double-bridge piers cannot anchor windows")
    else:
        chosen = None
        for tax in (TAXONOMY_REAL, TAXONOMY_PARALLEL, TAXONOMY_ORTHOGONAL):
            matches = sorted(
                (pr for pr in candidates if pr.taxonomy == tax),
                key=lambda pr: pr.position,
            )
            if matches:
                chosen = matches[0]
                break
        if chosen is None:
            raise ValueError("generator has no usable pier")

    if chosen.taxonomy == TAXONOMY_REAL:
        anchor = chosen.position
    elif chosen.taxonomy == TAXONOMY_PARALLEL:
        t = next(t for t in _TRANSFORMS if _apply_dir(t, chosen.pointing) == Direction.N)
        gen2 = _transform_generator(t, gen)
        pier2 = _apply_point(t, gen.g, chosen.position)
        anchor2 = _solve_parallel_north(gen2, pier2)
        anchor = _apply_point(_invert(t), gen.g, anchor2)
    else:
        t = next(
            t
            for t in _TRANSFORMS
            if _apply_dir(t, chosen.pointing) == Direction.E
            and _apply_point(t, gen.g, chosen.position)[1] == gen.g - 1
        )
        gen2 = _transform_generator(t, gen)
        pier2 = _apply_point(t, gen.g, chosen.position)
        anchor2 = _solve_orthogonal_east(gen2, pier2)
        anchor = _apply_point(_invert(t), gen.g, anchor2)

    glue_side = chosen.pointing.inverse()
    if glue_side in (Direction.E, Direction.W):
        offset = next(b.index for b in bridges(gen.cells) if b.kind == "horizontal")
    else:
        offset = next(b.index for b in bridges(gen.cells) if b.kind == "vertical")
    result = PierAnchor(chosen.position, chosen.pointing, anchor, glue_side, offset)
    _check_anchor_window(gen, result)
    return result


def _check_anchor_window(gen: Generator, anchor: PierAnchor) -> None:
    # Cheap sanity pass on the second stage at scale 1: the window around
    # the pier block must be free on three sides and bonded on glue_side by
    # exactly one adjacent pair.
    from .windows import WindowSpec, boundary_contacts, window_inside

    shape = stage(gen, 2)
    spec = WindowSpec(1, 2, gen.g, anchor.anchor, anchor.pier)
    contacts = boundary_contacts(window_inside(spec), shape)
    bad = [d for d in DIRECTIONS if d != anchor.glue_side and contacts[d]]
    if bad or len(contacts[anchor.glue_side]) != 1:
        raise RuntimeError(f"window at {anchor} is not three-sided on stage 2")


# ---------------------------------------------------------------------------
# Stage-level checks and the census


def stage_property(gen: Generator, s: int) -> bool:
    """True when stage s is a tree with exactly one bridge of each kind."""
    pts = stage(gen, s)
    if not is_tree(pts):
        return False
    return bridge_counts(pts) == (1, 1)


@dataclass(frozen=True)
class CensusStats:
    """Counts from enumerating every generator of a given side."""

    g: int
    candidates: int
    valid: int
    tree_fractal: int
    taxonomy: dict[str, int]
    tree_fractal_generators: tuple[Generator, ...]
    predicate_hits: Optional[int] = None


def census(
    g: int,
    predicate: Optional[Callable[[Generator], bool]] = None,
    allow_large: bool = False,
) -> CensusStats:
    """Enumerate all patterns of side g containing the origin.

    ``predicate``, when given, is counted over the tree-fractal generators.
    Side 4 means 2**16 candidates and is gated behind ``allow_large``;
    larger sides are refused outright.
    """
    if g < 2:
        raise ValueError(f"side must be at least 2, got {g}")
    if g == 4 and not allow_large:
        raise ValueError("side 4 enumerates 65536 candidates; pass allow_large=True")
    if g > 4:
        raise ValueError(f"census supports sides up to 4, got {g}")

    order = [(x, y) for y in range(g) for x in range(g) if (x, y) != (0, 0)]
    n_free = len(order)
    valid = 0
    tree_fractal = []
    taxonomy: Counter[str] = Counter()
    hits = 0
    for mask in range(1 << n_free):
        cells = {(0, 0)}
        for bit in range(n_free):
            if mask >> bit & 1:
                cells.add(order[bit])
        try:
            gen = Generator(g, frozenset(cells))
        except ValueError:
            continue
        valid += 1
        ok, _ = is_tree_fractal_generator(gen)
        if not ok:
            continue
        tree_fractal.append(gen)
        for pr in piers(gen):
            taxonomy[pr.taxonomy] += 1
        if predicate is not None and predicate(gen):
            hits += 1
    return CensusStats(
        g=g,
        candidates=1 << n_free,
        valid=valid,
        tree_fractal=len(tree_fractal),
        taxonomy=dict(taxonomy),
        tree_fractal_generators=tuple(tree_fractal),
        predicate_hits=hits if predicate is not None else None,
    )


def random_valid_generator(g: int, rng: random.Random) -> Generator:
    """Rejection-sample a valid generator of side g."""
    cells_all = [(x, y) for y in range(g) for x in range(g) if (x, y) != (0, 0)]
    while True:
        cells = {(0, 0)}
        cells.update(p for p in cells_all if rng.random() < 0.5)
        try:
            return Generator(g, frozenset(cells))
        except ValueError:
            continue
