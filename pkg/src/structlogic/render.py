"""ASCII and SVG pictures of optical grids and their traces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .optics import Cell, Channel, Heading, OpticalGrid, TraceResult

GLYPHS = {
    Cell.NULL: ".",
    Cell.BLACK: "#",
    Cell.MIRROR_FWD: "\\",
    Cell.MIRROR_REV: "/",
    Cell.HALF_FWD: "%",
    Cell.HALF_REV: "&",
}
# overlay for lit NULL cells: horizontal, vertical, both
_LIT = {"h": "-", "v": "|", "hv": "+"}


@dataclass(frozen=True)
class RenderSpec:
    format: str = "ascii"
    cell_size: int = 24
    show_paths: bool = True

    def __post_init__(self):
        if self.format not in ("ascii", "svg"):
            raise ValueError(f"unknown render format {self.format!r}")
        if self.cell_size <= 0:
            raise ValueError("cell size must be positive")


def _lit_axes(t: TraceResult) -> dict[tuple[int, int], str]:
    axes: dict[tuple[int, int], set[str]] = {}
    for path in t.paths:
        for r, c, h in path.cells:
            axes.setdefault((r, c), set()).add("h" if h in (Heading.E, Heading.W) else "v")
    return {rc: "".join(sorted(a)) for rc, a in axes.items()}


def render_ascii(g: OpticalGrid, t: Optional[TraceResult] = None) -> str:
    """One character per cell; empty cells crossed by light show ``-``, ``|`` or ``+``."""
    lit = _lit_axes(t) if t is not None else {}
    lines = []
    for r, row in enumerate(g.cells):
        chars = []
        for c, cell in enumerate(row):
            if cell is Cell.NULL and (r, c) in lit:
                chars.append(_LIT[lit[(r, c)]])
            else:
                chars.append(GLYPHS[cell])
        lines.append("".join(chars))
    return "\n".join(lines) + "\n"


def _boundary_point(ch: Channel, s: int, rows: int, cols: int) -> tuple[float, float]:
    mid = (ch.index + 0.5) * s
    return {
        "north": (mid, 0.0),
        "south": (mid, rows * s),
        "west": (0.0, mid),
        "east": (cols * s, mid),
    }[ch.side]


def _edge_cell(ch: Channel, rows: int, cols: int) -> tuple[int, int]:
    return {
        "north": (0, ch.index),
        "south": (rows - 1, ch.index),
        "west": (ch.index, 0),
        "east": (ch.index, cols - 1),
    }[ch.side]


def _path_points(g: OpticalGrid, path, s: int) -> list[tuple[float, float]]:
    """Polyline for one run: injected and coupled runs start on the boundary,
    split branches at the centre of the splitting cell."""

    def centre(r: int, c: int) -> tuple[float, float]:
        return ((c + 0.5) * s, (r + 0.5) * s)

    pts = [centre(r, c) for r, c, _ in path.cells]
    if path.cells:
        r, c, h = path.cells[0]
        if path.parent is None or path.cells[0] == g.entry_state(path.entry):
            pts.insert(0, _boundary_point(path.entry, s, g.rows, g.cols))
        else:
            pts.insert(0, centre(r - h.value[0], c - h.value[1]))
    elif path.exit is not None:
        pts.append(centre(*_edge_cell(path.exit, g.rows, g.cols)))
    if path.exit is not None:
        pts.append(_boundary_point(path.exit, s, g.rows, g.cols))
    return pts


def _fmt(x: float) -> str:
    return f"{x:g}"


def render_svg(g: OpticalGrid, t: Optional[TraceResult] = None, spec: RenderSpec = RenderSpec("svg")) -> str:
    s = spec.cell_size
    w, h = g.cols * s, g.rows * s
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
        f'<rect x="0" y="0" width="{w}" height="{h}" fill="white" stroke="black"/>',
    ]
    for r, row in enumerate(g.cells):
        for c, cell in enumerate(row):
            x, y = c * s, r * s
            fill = "black" if cell is Cell.BLACK else "none"
            out.append(f'<rect x="{x}" y="{y}" width="{s}" height="{s}" fill="{fill}" stroke="#bbb"/>')
            if cell in (Cell.MIRROR_FWD, Cell.HALF_FWD):
                x1, y1, x2, y2 = x, y, x + s, y + s
            elif cell in (Cell.MIRROR_REV, Cell.HALF_REV):
                x1, y1, x2, y2 = x, y + s, x + s, y
            else:
                continue
            dash = ' stroke-dasharray="3,2"' if cell in (Cell.HALF_FWD, Cell.HALF_REV) else ""
            out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="steelblue" stroke-width="2"{dash}/>')
    if t is not None and spec.show_paths:
        for path in t.paths:
            pts = _path_points(g, path, s)
            if len(pts) < 2:
                continue
            coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
            parent = "" if path.parent is None else f' data-parent="{path.parent}"'
            out.append(
                f'<polyline data-path="{path.id}"{parent} data-end="{path.end}" points="{coords}" '
                f'fill="none" stroke="red" stroke-width="1.5"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(g: OpticalGrid, t: Optional[TraceResult] = None, spec: RenderSpec = RenderSpec()) -> str:
    if spec.format == "svg":
        return render_svg(g, t, spec)
    return render_ascii(g, t if spec.show_paths else None)
