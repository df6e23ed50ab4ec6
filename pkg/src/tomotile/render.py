"""ASCII and SVG drawings of tilings, with tile centers marked."""

from __future__ import annotations

import dataclasses
import xml.etree.ElementTree as ET

from .core import Tiling, footprint

GLYPHS = "abcdefghijklmnopqrstuvwxyz"
COLORS = ("#f2d13b", "#3b7bf2", "#e8443a", "#9ad27a", "#b07cd8", "#f29a3b", "#4cc9c0", "#8c8c8c")
EMPTY_GLYPH = "."
EMPTY_COLOR = "#ffffff"


@dataclasses.dataclass(frozen=True)
class RenderSpec:
    format: str = "ascii"  # "ascii" or "svg"
    cell_size: int = 24
    palette: tuple[str, ...] | None = None

    def colors(self, h: int) -> tuple[str, ...]:
        default = GLYPHS if self.format == "ascii" else COLORS
        palette = self.palette or tuple(default[k % len(default)] for k in range(h))
        if len(palette) < h:
            raise ValueError(f"palette has {len(palette)} entries for {h} tile types")
        return tuple(palette)


def render_ascii(t: Tiling, spec: RenderSpec = RenderSpec()) -> str:
    """One character per cell: the type's glyph, upper-cased on tile centers.

    Glyphs without an upper case show centers as ``*``.
    """
    rows, cols = t.shape
    glyphs = spec.colors(t.h)
    grid = [[EMPTY_GLYPH] * cols for _ in range(rows)]
    for p in t.placements:
        for a, b in footprint(p, t.tileset):
            grid[a][b] = glyphs[p.k]
        g = glyphs[p.k]
        grid[p.row][p.col] = g.upper() if g.upper() != g else "*"
    return "".join("".join(row) + "\n" for row in grid)


def render_svg(t: Tiling, spec: RenderSpec = RenderSpec(format="svg")) -> str:
    rows, cols = t.shape
    s = spec.cell_size
    colors = spec.colors(t.h)
    owner = t.covered()
    svg = ET.Element(
        "svg", xmlns="http://www.w3.org/2000/svg", width=str(cols * s), height=str(rows * s),
        viewBox=f"0 0 {cols * s} {rows * s}",
    )
    for i in range(rows):
        for j in range(cols):
            p = owner.get((i, j))
            ET.SubElement(
                svg, "rect", x=str(j * s), y=str(i * s), width=str(s), height=str(s),
                fill=EMPTY_COLOR if p is None else colors[p.k], stroke="#444444",
            )
    for p in t.sorted_placements():
        ET.SubElement(
            svg, "circle", cx=str(p.col * s + s / 2), cy=str(p.row * s + s / 2), r=str(s / 4),
            fill="none", stroke="#000000", **{"stroke-width": "2"},
        )
    return ET.tostring(svg, encoding="unicode") + "\n"


def render(t: Tiling, spec: RenderSpec = RenderSpec()) -> str:
    if spec.format == "svg":
        return render_svg(t, spec)
    if spec.format == "ascii":
        return render_ascii(t, spec)
    raise ValueError(f"unknown render format {spec.format!r}")
