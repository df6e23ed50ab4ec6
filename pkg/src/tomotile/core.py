"""Tiles, tilings and their row/column projections.

Coordinates are ``(row, col)`` with rows numbered top to bottom and columns
left to right, both from 0.  Tile types are 0-based inside the library; the
JSON layer in :mod:`tomotile.io` shifts them to 1-based.
"""

from __future__ import annotations

import dataclasses
import enum
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    BadTypeIndex,
    Disconnected,
    EmptyTile,
    HasHole,
    InvalidTiling,
    MalformedInstance,
    NotRepresentable,
    Oversubscribed,
    TileError,
)

Cell = tuple[int, int]

_NEIGHBOURS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def _flood(start: Cell, allowed) -> set[Cell]:
    seen = {start}
    stack = [start]
    while stack:
        r, c = stack.pop()
        for dr, dc in _NEIGHBOURS:
            nb = (r + dr, c + dc)
            if nb not in seen and allowed(nb):
                seen.add(nb)
                stack.append(nb)
    return seen


def _check_polyomino(cells: frozenset[Cell]) -> None:
    if not cells:
        raise EmptyTile("tile has no cells")
    if len(_flood(next(iter(cells)), cells.__contains__)) != len(cells):
        raise Disconnected(f"cells {sorted(cells)} are not 4-connected")
    rows = [r for r, _ in cells]
    cols = [c for _, c in cells]
    r0, r1 = min(rows) - 1, max(rows) + 1
    c0, c1 = min(cols) - 1, max(cols) + 1

    def outside(cell):
        r, c = cell
        return r0 <= r <= r1 and c0 <= c <= c1 and cell not in cells

    # the padded frame is connected, so one flood from a corner reaches
    # every complement cell that is not enclosed
    reached = _flood((r0, c0), outside)
    if len(reached) + len(cells) != (r1 - r0 + 1) * (c1 - c0 + 1):
        raise HasHole(f"cells {sorted(cells)} enclose a hole")


@dataclasses.dataclass(frozen=True)
class Tile:
    """A hole-less polyomino whose center ``(0, 0)`` is its upper-left cell.

    Build one from arbitrary cells with :func:`normalize_tile`; the
    constructor only accepts cells that are already normalized.
    """

    cells: frozenset[Cell]

    def __post_init__(self):
        cells = frozenset((int(r), int(c)) for r, c in self.cells)
        object.__setattr__(self, "cells", cells)
        _check_polyomino(cells)
        if (0, 0) not in cells:
            raise TileError("tile must contain its center (0, 0)")
        if any(r < 0 or (r == 0 and c < 0) for r, c in cells):
            raise TileError("center (0, 0) must be the upper-left cell")

    @classmethod
    def rect(cls, height: int, width: int) -> "Tile":
        return cls(frozenset((r, c) for r in range(height) for c in range(width)))

    @property
    def height(self) -> int:
        return max(r for r, _ in self.cells) + 1

    @property
    def width(self) -> int:
        cols = [c for _, c in self.cells]
        return max(cols) - min(cols) + 1

    @property
    def size(self) -> int:
        return len(self.cells)

    def profile(self, axis: int) -> tuple[int, tuple[int, ...]]:
        """Per-line cell counts along ``axis`` (0 = rows, 1 = columns).

        Returns ``(lo, counts)`` where ``counts[o]`` is the number of cells at
        line offset ``lo + o`` from the center.
        """
        coords = [cell[axis] for cell in self.cells]
        lo, hi = min(coords), max(coords)
        counts = [0] * (hi - lo + 1)
        for x in coords:
            counts[x - lo] += 1
        return lo, tuple(counts)

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.cells)

    def __repr__(self):
        return f"Tile({self.sorted_cells()})"


TileSet = tuple[Tile, ...]

CELL = Tile(frozenset({(0, 0)}))


def normalize_tile(cells: Iterable[Cell]) -> Tile:
    """Translate ``cells`` so the upper-left cell sits at ``(0, 0)``."""
    cells = frozenset((int(r), int(c)) for r, c in cells)
    if not cells:
        raise EmptyTile("tile has no cells")
    r0 = min(r for r, _ in cells)
    c0 = min(c for r, c in cells if r == r0)
    return Tile(frozenset((r - r0, c - c0) for r, c in cells))


def make_tileset(tiles: Iterable[Tile | Iterable[Cell]]) -> TileSet:
    out = tuple(t if isinstance(t, Tile) else normalize_tile(t) for t in tiles)
    if not out:
        raise MalformedInstance("tile set is empty")
    return out


class Placement(NamedTuple):
    row: int
    col: int
    k: int


def footprint(p: Placement, tileset: Sequence[Tile]) -> frozenset[Cell]:
    if not 0 <= p.k < len(tileset):
        raise BadTypeIndex(f"type {p.k} not in tile set of size {len(tileset)}")
    return frozenset((p.row + r, p.col + c) for r, c in tileset[p.k].cells)


def _shape(n) -> tuple[int, int]:
    if isinstance(n, int):
        return n, n
    rows, cols = n
    return int(rows), int(cols)


@dataclasses.dataclass(frozen=True)
class Tiling:
    """A set of placements on a grid of ``n`` x ``n`` cells.

    ``n`` may also be a ``(rows, cols)`` pair for rectangular grids.
    Construction does not check disjointness; see :func:`validate_tiling`.
    """

    n: int | tuple[int, int]
    tileset: TileSet
    placements: frozenset[Placement] = frozenset()

    def __post_init__(self):
        rows, cols = _shape(self.n)
        object.__setattr__(self, "n", rows if rows == cols else (rows, cols))
        object.__setattr__(self, "tileset", tuple(self.tileset))
        object.__setattr__(
            self, "placements", frozenset(Placement(*p) for p in self.placements)
        )

    @property
    def shape(self) -> tuple[int, int]:
        return _shape(self.n)

    @property
    def h(self) -> int:
        return len(self.tileset)

    def sorted_placements(self) -> list[Placement]:
        return sorted(self.placements)

    def key(self) -> tuple[Placement, ...]:
        return tuple(self.sorted_placements())

    def covered(self) -> dict[Cell, Placement]:
        """Cell -> placement covering it.  Assumes the tiling is valid."""
        owner = {}
        for p in self.sorted_placements():
            for cell in footprint(p, self.tileset):
                owner[cell] = p
        return owner

    def translate(self, dr: int, dc: int, n=None) -> "Tiling":
        moved = {Placement(p.row + dr, p.col + dc, p.k) for p in self.placements}
        return Tiling(self.n if n is None else n, self.tileset, frozenset(moved))

    def __or__(self, other: "Tiling") -> "Tiling":
        return Tiling(self.n, self.tileset, self.placements | other.placements)


@dataclasses.dataclass(frozen=True)
class Violation:
    kind: str  # "out_of_grid" | "overlap" | "bad_type"
    placements: tuple[Placement, ...]
    cell: Cell | None = None

    def __str__(self):
        where = "" if self.cell is None else f" at cell {self.cell}"
        return f"{self.kind}: {list(self.placements)}{where}"


def validate_tiling(t: Tiling) -> Violation | None:
    """Return the first violation in placement order, or ``None`` if valid."""
    rows, cols = t.shape
    owner: dict[Cell, Placement] = {}
    for p in t.sorted_placements():
        if not 0 <= p.k < t.h:
            return Violation("bad_type", (p,))
        for cell in sorted(footprint(p, t.tileset)):
            r, c = cell
            if not (0 <= r < rows and 0 <= c < cols):
                return Violation("out_of_grid", (p,), cell)
            if cell in owner:
                return Violation("overlap", (owner[cell], p), cell)
            owner[cell] = p
    return None


def require_valid(t: Tiling) -> None:
    violation = validate_tiling(t)
    if violation is not None:
        raise InvalidTiling(violation)


class Kind(str, enum.Enum):
    CENTER = "center"
    CELL = "cell"


Matrix = tuple[tuple[int, ...], ...]


def _freeze(m) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in m)


def zeros(n: int, h: int) -> list[list[int]]:
    return [[0] * h for _ in range(n)]


@dataclasses.dataclass(frozen=True)
class ProjectionPair:
    """Row and column projections: ``r[i][k]`` and ``c[j][k]``."""

    r: Matrix
    c: Matrix
    kind: Kind = Kind.CENTER
    h: int | None = None

    def __post_init__(self):
        r, c = _freeze(self.r), _freeze(self.c)
        h = self.h
        if h is None:
            widths = {len(row) for row in r + c}
            if len(widths) != 1:
                raise MalformedInstance("cannot infer the number of types")
            h = widths.pop()
        if any(len(row) != h for row in r + c):
            raise MalformedInstance("projection rows must all have h entries")
        if any(x < 0 for row in r + c for x in row):
            raise MalformedInstance("projections must be non-negative")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "h", h)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.r), len(self.c)

    def row_totals(self) -> list[int]:
        return [sum(row[k] for row in self.r) for k in range(self.h)]

    def col_totals(self) -> list[int]:
        return [sum(row[k] for row in self.c) for k in range(self.h)]

    def balanced(self) -> bool:
        return self.row_totals() == self.col_totals()

    def column(self, axis: int, k: int) -> list[int]:
        """Type-``k`` vector over rows (axis 0) or columns (axis 1)."""
        m = self.r if axis == 0 else self.c
        return [row[k] for row in m]

    def __add__(self, other: "ProjectionPair") -> "ProjectionPair":
        if (self.kind, self.shape, self.h) != (other.kind, other.shape, other.h):
            raise ValueError("projection pairs are not compatible")
        add = lambda a, b: [[x + y for x, y in zip(p, q)] for p, q in zip(a, b)]
        return ProjectionPair(add(self.r, other.r), add(self.c, other.c), self.kind, self.h)


@dataclasses.dataclass(frozen=True)
class Instance:
    tileset: TileSet
    projections: ProjectionPair

    def __post_init__(self):
        object.__setattr__(self, "tileset", tuple(self.tileset))
        if not self.tileset:
            raise MalformedInstance("tile set is empty")
        if self.projections.h != len(self.tileset):
            raise MalformedInstance(
                f"projections have {self.projections.h} types, "
                f"tile set has {len(self.tileset)}"
            )

    @property
    def shape(self) -> tuple[int, int]:
        return self.projections.shape

    @property
    def n(self):
        rows, cols = self.shape
        return rows if rows == cols else (rows, cols)

    @property
    def kind(self) -> Kind:
        return self.projections.kind


def center_projections(t: Tiling) -> ProjectionPair:
    require_valid(t)
    rows, cols = t.shape
    r, c = zeros(rows, t.h), zeros(cols, t.h)
    for p in t.placements:
        r[p.row][p.k] += 1
        c[p.col][p.k] += 1
    return ProjectionPair(r, c, Kind.CENTER, t.h)


def cell_projections(t: Tiling) -> ProjectionPair:
    require_valid(t)
    rows, cols = t.shape
    r, c = zeros(rows, t.h), zeros(cols, t.h)
    for p in t.placements:
        for i, j in footprint(p, t.tileset):
            r[i][p.k] += 1
            c[j][p.k] += 1
    return ProjectionPair(r, c, Kind.CELL, t.h)


def projections(t: Tiling, kind: Kind | str = Kind.CENTER) -> ProjectionPair:
    return center_projections(t) if Kind(kind) is Kind.CENTER else cell_projections(t)


def _placeable(tile: Tile, axis: int, length: int) -> range:
    lo, counts = tile.profile(axis)
    hi = lo + len(counts) - 1
    return range(max(0, -lo), max(0, length - hi))


def _spread(centers: Sequence[int], tile: Tile, axis: int) -> list[int]:
    lo, counts = tile.profile(axis)
    out = [0] * len(centers)
    for x in _placeable(tile, axis, len(centers)):
        if centers[x]:
            for o, m in enumerate(counts):
                out[x + lo + o] += centers[x] * m
    return out


def _center_vector(cells: Sequence[int], tile: Tile, axis: int) -> list[int]:
    lo, counts = tile.profile(axis)
    n = len(cells)
    centers = [0] * n
    for x in _placeable(tile, axis, n):
        # cell line x+lo only receives mass from centers <= x
        acc = cells[x + lo]
        for o in range(1, len(counts)):
            if x - o >= 0:
                acc -= centers[x - o] * counts[o]
        q, rem = divmod(acc, counts[0])
        if rem or q < 0:
            raise NotRepresentable(
                f"line {x + lo}: residual {acc} is not a non-negative multiple of {counts[0]}"
            )
        centers[x] = q
    if _spread(centers, tile, axis) != list(cells):
        raise NotRepresentable("cell counts are not a sum of single-tile projections")
    return centers


def convert_projections(
    p: ProjectionPair, tileset: Sequence[Tile], target: Kind | str
) -> ProjectionPair:
    """Map center projections to cell projections or back.

    Center counts on lines where a tile cannot be placed have no cell
    counterpart and raise :class:`NotRepresentable`.
    """
    target = Kind(target)
    if p.h != len(tileset):
        raise MalformedInstance("projection pair and tile set disagree on h")
    if p.kind is target:
        return p
    out = []
    for axis, m in ((0, p.r), (1, p.c)):
        cols = []
        for k, tile in enumerate(tileset):
            vec = [row[k] for row in m]
            if target is Kind.CELL:
                allowed = set(_placeable(tile, axis, len(vec)))
                if any(v and x not in allowed for x, v in enumerate(vec)):
                    raise NotRepresentable(f"type {k} has centers where it cannot fit")
                cols.append(_spread(vec, tile, axis))
            else:
                cols.append(_center_vector(vec, tile, axis))
        out.append([list(row) for row in zip(*cols)] if cols else [])
    return ProjectionPair(out[0], out[1], target, p.h)


def add_clear_tile(inst: Instance) -> Instance:
    """Append a 1x1 clear type covering every cell the other types leave empty."""
    cells = convert_projections(inst.projections, inst.tileset, Kind.CELL)
    rows, cols = inst.shape
    clear_r = [cols - sum(row) for row in cells.r]
    clear_c = [rows - sum(row) for row in cells.c]
    if min(clear_r + clear_c, default=0) < 0:
        raise Oversubscribed("some line has more covered cells than it has cells")
    base = inst.projections
    r = [list(row) + [x] for row, x in zip(base.r, clear_r)]
    c = [list(row) + [x] for row, x in zip(base.c, clear_c)]
    return Instance(
        inst.tileset + (CELL,), ProjectionPair(r, c, base.kind, base.h + 1)
    )


def interlocking_witness(t: Tile) -> tuple[int, int] | None:
    """An offset placing a disjoint copy of ``t`` inside a box < 2w x 2h."""
    h, w = t.height, t.width
    rows = [r for r, _ in t.cells]
    cols = [c for _, c in t.cells]
    for di in range(0, h):
        for dj in range(-(w - 1), w):
            if di == 0 and dj <= 0:
                continue  # (di, dj) and its negation give the same pair
            if any((r + di, c + dj) in t.cells for r, c in t.cells):
                continue
            height = max(rows + [r + di for r in rows]) - min(rows + [r + di for r in rows]) + 1
            width = max(cols + [c + dj for c in cols]) - min(cols + [c + dj for c in cols]) + 1
            if height < 2 * h and width < 2 * w:
                return di, dj
    return None


def is_interlocking(t: Tile) -> bool:
    return interlocking_witness(t) is not None
