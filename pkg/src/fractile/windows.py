"""Square windows around pier blocks of fractal stages.

The window at stage s wraps one copy-of-a-copy block: the square of side
c * g**(s-2) sitting at the pier cell of the anchor copy.  Windows of
different stages around the same pier/anchor pair are similar, and the
vector between their corners is what the splicing machinery shifts
assemblies by.

A window is represented by its inside point set; the window itself — the
cut separating a finite inside from the infinite outside — is derived on
demand as the set of edges leaving the inside.  Everything this package
builds uses axis-aligned squares, and ClosedWindow enforces that shape so
the inside can never straddle its own cut.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, TypeVar, Union

from .grid import DIRECTIONS, Direction, Point, PointSet, extents

V = TypeVar("V")


@dataclass(frozen=True)
class ClosedWindow:
    """A square cut of the grid, named by the points it encloses."""

    inside: PointSet

    def __post_init__(self) -> None:
        pts = frozenset(self.inside)
        object.__setattr__(self, "inside", pts)
        if not pts:
            raise ValueError("window inside must be nonempty")
        ext = extents(pts)
        side = ext.right - ext.left + 1
        if ext.top - ext.bottom + 1 != side or len(pts) != side * side:
            raise ValueError("window inside must be a filled axis-aligned square")

    def __contains__(self, p: Point) -> bool:
        return p in self.inside

    def translate(self, vec: Point) -> "ClosedWindow":
        dx, dy = vec
        return ClosedWindow(frozenset((x + dx, y + dy) for (x, y) in self.inside))

    def cut_edges(self) -> frozenset[tuple[Point, Point]]:
        """Directed boundary edges (inside point, outside neighbor)."""
        out = set()
        for p in self.inside:
            for d in DIRECTIONS:
                q = d(p)
                if q not in self.inside:
                    out.add((p, q))
        return frozenset(out)


@dataclass(frozen=True)
class WindowSpec:
    """Parameters of a stage window: scale c, stage s >= 2, generator side
    g, anchor copy (e, f) and pier cell (p, q)."""

    c: int
    stage: int
    g: int
    anchor: Point
    pier: Point

    def __post_init__(self) -> None:
        if self.c < 1:
            raise ValueError(f"scale factor must be >= 1, got {self.c}")
        if self.stage < 2:
            raise ValueError(f"stage windows exist from stage 2, got {self.stage}")
        if self.g < 2:
            raise ValueError(f"side must be at least 2, got {self.g}")
        for name, (x, y) in (("anchor", self.anchor), ("pier", self.pier)):
            if not (0 <= x < self.g and 0 <= y < self.g):
                raise ValueError(f"{name} outside {self.g}x{self.g} square: {(x, y)}")

    @property
    def side(self) -> int:
        return self.c * self.g ** (self.stage - 2)

    @property
    def corner(self) -> Point:
        e, f = self.anchor
        p, q = self.pier
        hi = self.c * self.g ** (self.stage - 1)
        lo = self.c * self.g ** (self.stage - 2)
        return (hi * e + lo * p, hi * f + lo * q)


WindowLike = Union[ClosedWindow, WindowSpec, PointSet, frozenset, set]


def inside_of(w: WindowLike) -> PointSet:
    """The inside point set of any window representation."""
    if isinstance(w, ClosedWindow):
        return w.inside
    if isinstance(w, WindowSpec):
        return window_inside(w)
    return frozenset(w)


def window_inside(spec: WindowSpec) -> PointSet:
    """All points enclosed by the window: the square of side c*g**(s-2)
    whose corner combines the anchor-copy and pier offsets."""
    ox, oy = spec.corner
    n = spec.side
    return frozenset((ox + dx, oy + dy) for dx in range(n) for dy in range(n))


def closed_window(spec: WindowSpec) -> ClosedWindow:
    return ClosedWindow(window_inside(spec))


def translation(c: int, g: int, i: int, j: int, e: int, f: int, p: int, q: int) -> Point:
    """Vector carrying the corner of the stage-i window to the corner of
    the stage-j window, for the same scale, side, anchor, and pier."""
    if not 2 <= i < j:
        raise ValueError(f"stages must satisfy 2 <= i < j, got i={i}, j={j}")
    hi = c * (g ** (j - 1) - g ** (i - 1))
    lo = c * (g ** (j - 2) - g ** (i - 2))
    return (hi * e + lo * p, hi * f + lo * q)


def translation_between(a: WindowSpec, b: WindowSpec) -> Point:
    """translation() in terms of two WindowSpecs of the same family."""
    if (a.c, a.g, a.anchor, a.pier) != (b.c, b.g, b.anchor, b.pier):
        raise ValueError("windows disagree on scale, side, anchor, or pier")
    (e, f), (p, q) = a.anchor, a.pier
    return translation(a.c, a.g, a.stage, b.stage, e, f, p, q)


def enclosure_margin(c: int, g: int, i: int, j: int) -> int:
    """The slack m = c*(g**(j-2) - g**(i-2)): how far the corner-aligned
    stage-i window can shift east and north inside the stage-j window."""
    if not 2 <= i < j:
        raise ValueError(f"stages must satisfy 2 <= i < j, got i={i}, j={j}")
    return c * (g ** (j - 2) - g ** (i - 2))


def enclosure_bound_ok(c: int, g: int, i: int, j: int, x: int, y: int) -> bool:
    """Whether an extra (x, y) shift keeps the translated stage-i window
    enclosed in the stage-j window: both components must stay within the
    margin."""
    if x < 0 or y < 0:
        raise ValueError("shift components must be nonnegative")
    m = enclosure_margin(c, g, i, j)
    return x <= m and y <= m


def encloses(outer: WindowLike, inner: WindowLike) -> bool:
    """Whether the inner window's inside lies within the outer's."""
    return inside_of(inner) <= inside_of(outer)


def partition(placed: Mapping[Point, V], w: WindowLike) -> tuple[dict[Point, V], dict[Point, V]]:
    """Split a cell mapping into its (inside-window, outside-window) parts.

    Accepts any finite inside set, not only squares; an assembly works
    directly since it is a mapping from points to tile types.
    """
    inside = inside_of(w)
    ins: dict[Point, V] = {}
    outs: dict[Point, V] = {}
    for p, v in placed.items():
        (ins if p in inside else outs)[p] = v
    return ins, outs


def boundary_contacts(
    w: WindowLike, shape: Iterable[Point]
) -> dict[Direction, list[tuple[Point, Point]]]:
    """Edges of the shape crossing the window, grouped by the direction of
    the crossing as seen from the inside point.

    Each entry (p, q) has p inside the window, q outside, both in the
    shape; lists are sorted by p for reproducibility.
    """
    inside = inside_of(w)
    shape_set = frozenset(shape)
    out: dict[Direction, list[tuple[Point, Point]]] = {d: [] for d in DIRECTIONS}
    for p in sorted(inside & shape_set):
        for d in DIRECTIONS:
            q = d(p)
            if q not in inside and q in shape_set:
                out[d].append((p, q))
    return out


def free_sides(w: WindowLike, shape: Iterable[Point]) -> tuple[Direction, ...]:
    """Directions along which the window cuts no edge of the shape."""
    contacts = boundary_contacts(w, shape)
    return tuple(d for d in DIRECTIONS if not contacts[d])
