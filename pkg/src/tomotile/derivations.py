"""How the shipped gadget fixtures were obtained.

Each function rebuilds one gadget from scratch by constrained enumeration
(or shape discovery) and returns it; ``python -m tomotile.derivations DIR``
rewrites the fixture files.  The test-suite checks that the shipped files
equal what these functions produce.
"""

from __future__ import annotations

import sys
from pathlib import Path

from .core import CELL, Tile, Tiling, cell_projections
from .gadgets import (
    BlockConstraint,
    Gadget,
    RequiredSignature,
    discover_gadgets,
    enumerate_block_tilings,
    signature,
)

H_DOMINO = Tile.rect(1, 2)
V_DOMINO = Tile.rect(2, 1)
SQUARE = Tile.rect(2, 2)
L_TROMINO = Tile(frozenset({(0, 0), (1, 0), (1, 1)}))

# row-center distributions of the 7x7 blocks, one per atom
SHAPE7_ROWS = {
    "yellow": (2, 0, 0, 1, 0, 0, 0),
    "blue": (1, 1, 0, 1, 0, 0, 0),
    "red": (1, 0, 1, 1, 0, 0, 0),
    "clear": (1, 0, 0, 2, 0, 0, 0),
}


def _clear_counts(t: Tiling) -> tuple[int, int]:
    """Uncovered cells in block rows 1-2 and in block column 0."""
    p = cell_projections(t)
    d = t.shape[0]
    rows = sum(d - sum(p.r[i]) for i in (1, 2))
    col0 = d - sum(p.c[0])
    return rows, col0


def dominoes3() -> Gadget:
    d = 3
    first_row_col = frozenset({(0, j) for j in range(d)} | {(i, 0) for i in range(d)})
    closure = BlockConstraint(region=first_row_col, covered=frozenset({(0, 0)}))
    tilings = enumerate_block_tilings(d, (H_DOMINO, V_DOMINO), closure)
    # coefficients of the clear-cell sums: rows 1-2 give 5Y+5B+4R+6C,
    # column 0 gives Y+B+2C; yellow/blue tie, broken by canonical order
    pattern = {"yellow": (5, 1), "blue": (5, 1), "red": (4, 0), "clear": (6, 2)}
    atom_map: dict[str, list[int]] = {a: [] for a in pattern}
    for idx, t in enumerate(tilings):
        counts = _clear_counts(t)
        atom = next(a for a, pat in pattern.items() if pat == counts and not atom_map[a])
        atom_map[atom].append(idx)
    return _ordered("dominoes3", d, (H_DOMINO, V_DOMINO), tilings, atom_map, closure=closure)


def _ordered(name, d, tiles, tilings, atom_map, bad=(), closure=None, atoms=None) -> Gadget:
    """Reorder admissible tilings so they follow the atom order."""
    atoms = tuple(atoms or atom_map)
    order = [i for a in atoms for i in atom_map[a]]
    new_map = {}
    pos = 0
    for a in atoms:
        new_map[a] = tuple(range(pos, pos + len(atom_map[a])))
        pos += len(atom_map[a])
    return Gadget(name, d, tiles, tuple(tilings[i] for i in order), new_map, atoms, tuple(bad), closure)


def _squares_family(tiles, closure: BlockConstraint):
    """Enumerate the 4x4 blocks and split off the bad tiling.

    The bad tiling shares its row projections with the yellow block and its
    column projections with the blue block.  Yellow is the block with a
    center in column 1, blue the one with a center in row 1.
    """
    tilings = enumerate_block_tilings(4, tiles, closure)
    centers = lambda t: {(p.row, p.col) for p in t.placements}
    yellow = [t for t in tilings if any(c == 1 for _, c in centers(t))]
    blue = [t for t in tilings if any(r == 1 for r, _ in centers(t))]
    assert len(yellow) == 1 and len(blue) == 1, "expected exactly one yellow and one blue block"
    y, b = yellow[0], blue[0]
    bad = [
        t for t in tilings
        if t not in (y, b) and signature(t).rows == signature(y).rows and signature(t).cols == signature(b).cols
    ]
    rest = [t for t in tilings if t not in (y, b) and t not in bad]
    return y, b, bad, rest


def _row1_col1(k: int) -> tuple[tuple[int, frozenset], ...]:
    return ((k, frozenset({(1, j) for j in range(4)} | {(i, 1) for i in range(4)})),)


def twosquares4() -> Gadget:
    light, dark = SQUARE, SQUARE
    tiles = (light, dark)
    closure = BlockConstraint(covered_by=_row1_col1(0))
    y, b, bad, rest = _squares_family(tiles, closure)
    # the two four-tile blocks: the all-light one is red, the one with the
    # dark square is clear, so the first three blocks use light squares only
    red = next(t for t in rest if all(p.k == 0 for p in t.placements))
    clear = next(t for t in rest if t is not red)
    tilings = [y, b, red, clear]
    return Gadget("twosquares4", 4, tiles, tuple(tilings), {"yellow": (0,), "blue": (1,), "red": (2,), "clear": (3,)}, bad=tuple(bad), closure=closure)


def cellsquare4() -> Gadget:
    tiles = (SQUARE, CELL)
    # cells only appear where the clear block of the two-squares gadget has
    # its dark square; every other line has zero cell projection
    closure = BlockConstraint(covered_by=_row1_col1(0), centers=((1, frozenset({(2, 2)})),))
    y, b, bad, rest = _squares_family(tiles, closure)
    red = next(t for t in rest if all(p.k == 0 for p in t.placements))
    clear = next(t for t in rest if t is not red)
    return Gadget("cellsquare4", 4, tiles, (y, b, red, clear), {"yellow": (0,), "blue": (1,), "red": (2,), "clear": (3,)}, bad=tuple(bad), closure=closure)


def square4() -> Gadget:
    """Single square type: yellow, blue and clear for the 2-atom problem."""
    tiles = (SQUARE,)
    closure = BlockConstraint(covered_by=_row1_col1(0))
    y, b, bad, rest = _squares_family(tiles, closure)
    (clear,) = rest
    atoms = ("yellow", "blue", "clear")
    return Gadget("square4", 4, tiles, (y, b, clear), {"yellow": (0,), "blue": (1,), "clear": (2,)}, atoms, tuple(bad), closure)


LSHAPE_SUPPORT = frozenset(
    {(0, 0), (1, 0), (1, 1), (2, 0), (2, 2), (3, 1), (3, 3), (4, 0), (4, 2), (4, 3)}
)
LSHAPE_EXCLUSIVE = (((1, 0), (2, 0)), ((2, 0), (3, 1)), ((3, 1), (4, 2)), ((4, 2), (4, 3)), ((1, 1), (2, 2)))


def lshape6() -> Gadget:
    """L-tromino on 6x6 blocks.

    The closure is what the residue-matrix argument leaves standing: centers
    only where the final residue matrix can be non-zero, a center at (4, 0)
    in every block, and the exclusive pairs.
    """
    closure = BlockConstraint(
        centers=((0, LSHAPE_SUPPORT),),
        required=frozenset({(4, 0)}),
        exactly_one=LSHAPE_EXCLUSIVE,
    )
    tilings = enumerate_block_tilings(6, (L_TROMINO,), closure)
    atom_map: dict[str, list[int]] = {"yellow": [], "blue": [], "red": [], "clear": []}
    for idx, t in enumerate(tilings):
        centers = {(p.row, p.col) for p in t.placements}
        if any(r == 3 for r, _ in centers):
            atom = "clear"  # row 3 of the residue matrix sums to C
        elif (0, 0) in centers:
            atom = "red"  # m[0][0] = R
        elif (1, 1) in centers:
            atom = "yellow"  # row 1 sums to Y + C
        else:
            atom = "blue"
        atom_map[atom].append(idx)
    # the clear block with a center at (3, 3) comes first
    atom_map["clear"].sort(key=lambda i: (3, 3) not in {(p.row, p.col) for p in tilings[i].placements})
    return _ordered("lshape6", 6, (L_TROMINO,), tilings, atom_map, closure=closure)


def shape7_candidates() -> list[Gadget]:
    required = [
        RequiredSignature(atom, tuple((x,) for x in rows), tuple((x,) for x in rows))
        for atom, rows in SHAPE7_ROWS.items()
    ]
    found = discover_gadgets(7, required, count=[3], bbox=(4, 4), name="shape7")
    # the tile's center must be the corner of its bounding box so that tiles
    # centered in rows/columns 0-3 of a block stay inside that block
    return [g for g in found if min(c for _, c in g.tileset[0].cells) == 0]


def shape7() -> Gadget:
    return shape7_candidates()[0]


DERIVATIONS = {
    "dominoes3": dominoes3,
    "twosquares4": twosquares4,
    "cellsquare4": cellsquare4,
    "square4": square4,
    "lshape6": lshape6,
    "shape7": shape7,
}


def main(argv=None) -> int:
    from .io import gadget_to_dict, write_json

    argv = sys.argv[1:] if argv is None else argv
    out = Path(argv[0]) if argv else Path(__file__).parent / "data"
    out.mkdir(parents=True, exist_ok=True)
    for name, build in DERIVATIONS.items():
        write_json(out / f"{name}.json", gadget_to_dict(build()))
        print(f"wrote {out / name}.json")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
