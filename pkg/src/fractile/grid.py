"""Integer-lattice geometry: points, directions, and grid-graph predicates.

Everything downstream (fractal stages, tile assemblies, windows) works on
plain ``(x, y)`` tuples and treats a set of points as the vertex set of its
full grid graph: vertices are the points, edges join points at unit
horizontal or vertical distance.
"""

from __future__ import annotations

from collections import deque
from enum import Enum
from typing import Iterable, NamedTuple

Point = tuple[int, int]
PointSet = frozenset[Point]


class Direction(Enum):
    """The four lattice directions, usable as functions on points."""

    N = (0, 1)
    E = (1, 0)
    S = (0, -1)
    W = (-1, 0)

    @property
    def unit(self) -> Point:
        return self.value

    def apply(self, p: Point) -> Point:
        return (p[0] + self.value[0], p[1] + self.value[1])

    def __call__(self, p: Point) -> Point:
        return self.apply(p)

    def inverse(self) -> "Direction":
        return _INVERSE[self]


_INVERSE = {
    Direction.N: Direction.S,
    Direction.S: Direction.N,
    Direction.E: Direction.W,
    Direction.W: Direction.E,
}

#: Fixed iteration order for the four directions.
DIRECTIONS: tuple[Direction, ...] = (
    Direction.N,
    Direction.E,
    Direction.S,
    Direction.W,
)


class Extents(NamedTuple):
    """Leftmost/rightmost x and bottommost/topmost y of a point set."""

    left: int
    right: int
    bottom: int
    top: int


def extents(points: Iterable[Point]) -> Extents:
    pts = list(points)
    if not pts:
        raise ValueError("empty point set")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return Extents(min(xs), max(xs), min(ys), max(ys))


def neighbors(p: Point) -> tuple[Point, Point, Point, Point]:
    x, y = p
    return ((x, y + 1), (x + 1, y), (x, y - 1), (x - 1, y))


def translate(points: Iterable[Point], vec: Point) -> PointSet:
    dx, dy = vec
    return frozenset((x + dx, y + dy) for x, y in points)


def grid_edges(points: Iterable[Point]) -> list[tuple[Point, Point]]:
    """Undirected edges of the full grid graph, each listed once."""
    pts = set(points)
    edges = []
    for p in pts:
        for q in (Direction.E(p), Direction.N(p)):
            if q in pts:
                edges.append((p, q))
    return edges


def is_connected(points: Iterable[Point]) -> bool:
    """True when the full grid graph on ``points`` is connected.

    The empty set counts as not connected.
    """
    pts = set(points)
    if not pts:
        return False
    start = next(iter(pts))
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for q in neighbors(p):
            if q in pts and q not in seen:
                seen.add(q)
                queue.append(q)
    return len(seen) == len(pts)


def is_tree(points: Iterable[Point]) -> bool:
    """True when the full grid graph on ``points`` is a tree.

    A connected graph on n vertices is a tree exactly when it has n - 1
    edges, which is what we count here.
    """
    pts = set(points)
    if not pts:
        return False
    if not is_connected(pts):
        return False
    return len(grid_edges(pts)) == len(pts) - 1


def d_free(points: Iterable[Point], p: Point, direction: Direction) -> bool:
    """True when ``p`` has no neighbor of the set in ``direction``."""
    pts = set(points)
    if p not in pts:
        raise ValueError(f"point not in set: {p}")
    return direction.apply(p) not in pts


def free_directions(pts: set | frozenset, p: Point) -> tuple[Direction, ...]:
    return tuple(d for d in DIRECTIONS if d.apply(p) not in pts)


def connected_components(points: Iterable[Point]) -> list[PointSet]:
    """Connected components of the full grid graph, in order of their
    smallest (y, x) member."""
    pts = set(points)
    comps = []
    remaining = set(pts)
    for start in sorted(pts, key=lambda p: (p[1], p[0])):
        if start not in remaining:
            continue
        seen = {start}
        queue = deque([start])
        while queue:
            p = queue.popleft()
            for q in neighbors(p):
                if q in remaining and q not in seen:
                    seen.add(q)
                    queue.append(q)
        remaining -= seen
        comps.append(frozenset(seen))
    return comps


def shortest_path(points: Iterable[Point], src: Point, dst: Point) -> list[Point]:
    """Deterministic BFS path from src to dst inside the set.

    Neighbor expansion follows N, E, S, W order, so equal-length paths
    resolve the same way on every run.  Raises if no path exists.
    """
    pts = set(points)
    if src not in pts or dst not in pts:
        raise ValueError("path endpoints must belong to the set")
    prev: dict[Point, Point] = {src: src}
    queue = deque([src])
    while queue:
        p = queue.popleft()
        if p == dst:
            path = [p]
            while path[-1] != src:
                path.append(prev[path[-1]])
            path.reverse()
            return path
        for d in DIRECTIONS:
            q = d.apply(p)
            if q in pts and q not in prev:
                prev[q] = p
                queue.append(q)
    raise ValueError(f"no path from {src} to {dst}")
