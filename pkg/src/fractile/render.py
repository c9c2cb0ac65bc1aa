"""Text and SVG renderings of point sets, windows, and glue lines.

Renderings are for inspection: axis-aligned rectangles, one color per
role (shape cell, window outline, glue-line marker), north up.  A cell
cap, overridable through the FRACTILE_CELL_CAP environment variable,
keeps accidental stage-9 requests from producing gigabyte files.
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence
from xml.etree import ElementTree

from .grid import Point

CELL_CAP_ENV = "FRACTILE_CELL_CAP"
DEFAULT_CELL_CAP = 262_144  # 512x512

_SHAPE_FILL = "#5b8bb0"
_WINDOW_STROKE = "#c2471d"
_GLUE_FILL = "#2c8a4b"


def cell_cap() -> int:
    raw = os.environ.get(CELL_CAP_ENV)
    if raw is None:
        return DEFAULT_CELL_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"bad {CELL_CAP_ENV} value: {raw!r}") from None
    if cap < 1:
        raise ValueError(f"bad {CELL_CAP_ENV} value: {raw!r}")
    return cap


def check_cell_budget(side: int) -> None:
    cap = cell_cap()
    if side * side > cap:
        raise ValueError(
            f"rendering {side}x{side} cells exceeds the cap of {cap};"
            " try a smaller stage"
        )


def format_grid(points: Iterable[Point], side: int) -> str:
    """Render a point set in the generator grid syntax at the given side."""
    pts = set(points)
    rows = [f"g={side}"]
    for y in range(side - 1, -1, -1):
        rows.append("".join("#" if (x, y) in pts else "." for x in range(side)))
    return "\n".join(rows) + "\n"


def render_svg(
    points: Iterable[Point],
    side: int,
    windows: Sequence[frozenset] = (),
    glue_edges: Sequence[tuple[Point, Point]] = (),
    unit: int = 10,
) -> str:
    """An SVG of the shape with optional window outlines and glue markers.

    Each shape cell is one ``rect`` of class "cell"; windows are stroked
    squares of class "window"; each glue edge becomes a thin strip of
    class "glue" across the shared cell boundary.
    """
    size = side * unit
    root = ElementTree.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(size),
        height=str(size),
        viewBox=f"0 0 {size} {size}",
    )

    def rect(x: float, y: float, w: float, h: float, **attrs: str) -> None:
        ElementTree.SubElement(
            root,
            "rect",
            x=f"{x:g}",
            y=f"{y:g}",
            width=f"{w:g}",
            height=f"{h:g}",
            **attrs,
        )

    for (x, y) in sorted(points, key=lambda v: (v[1], v[0])):
        rect(
            x * unit,
            (side - 1 - y) * unit,
            unit,
            unit,
            **{"class": "cell", "fill": _SHAPE_FILL},
        )
    for window in windows:
        xs = [x for x, _ in window]
        ys = [y for _, y in window]
        w = max(xs) - min(xs) + 1
        rect(
            min(xs) * unit,
            (side - min(ys) - w) * unit,
            w * unit,
            w * unit,
            **{
                "class": "window",
                "fill": "none",
                "stroke": _WINDOW_STROKE,
                "stroke-width": f"{unit / 5:g}",
            },
        )
    thick = unit / 4
    for (a, b) in glue_edges:
        if b[0] - a[0]:  # vertical strip on the shared east/west edge
            edge_x = max(a[0], b[0]) * unit
            rect(
                edge_x - thick / 2,
                (side - 1 - a[1]) * unit,
                thick,
                unit,
                **{"class": "glue", "fill": _GLUE_FILL},
            )
        else:  # horizontal strip on the shared north/south edge
            edge_y = (side - max(a[1], b[1])) * unit
            rect(
                a[0] * unit,
                edge_y - thick / 2,
                unit,
                thick,
                **{"class": "glue", "fill": _GLUE_FILL},
            )
    return ElementTree.tostring(root, encoding="unicode") + "\n"
