"""Reduce atom instances to tiling instances through a block gadget.

Each atom of an ``n x n`` atom grid becomes a ``d x d`` block carrying the
admissible tiling of that atom.  Block-row ``i`` of the reduced instance gets
the projections ``sum_k r[i][k] * e_k`` where ``e_k`` are the representative
block projections; columns likewise.
"""

from __future__ import annotations

import dataclasses
from typing import Sequence

from .core import CELL, Instance, Placement, ProjectionPair, Tiling, footprint, validate_tiling
from .errors import TomoTileError, UnverifiedGadget
from .gadgets import Gadget, representative_signatures, verify_gadget
from .rational import solve_combination

AtomGrid = tuple[tuple[int, ...], ...]

# smallest instance whose row and column totals disagree
NEGATIVE_INSTANCE = Instance((CELL,), ProjectionPair([[1]], [[0]]))


class NotBlockAdmissible(TomoTileError):
    def __init__(self, block: tuple[int, int], reason: str):
        super().__init__(f"block {block}: {reason}")
        self.block = block
        self.reason = reason


@dataclasses.dataclass(frozen=True)
class AtomInstance:
    """Atom projections ``r[i][k]``, ``c[j][k]`` over ``len(atoms)`` colours."""

    n: int
    r: tuple[tuple[int, ...], ...]
    c: tuple[tuple[int, ...], ...]
    atoms: tuple[str, ...] = ("yellow", "blue", "red", "clear")

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(tuple(row) for row in self.r))
        object.__setattr__(self, "c", tuple(tuple(row) for row in self.c))
        object.__setattr__(self, "atoms", tuple(self.atoms))
        a = len(self.atoms)
        if len(self.r) != self.n or len(self.c) != self.n:
            raise ValueError("atom projections need n rows")
        if any(len(row) != a or min(row, default=0) < 0 for row in self.r + self.c):
            raise ValueError("atom projections must be non-negative with one entry per atom")

    @property
    def standard(self) -> bool:
        return all(sum(row) == self.n for row in self.r + self.c)

    def balanced(self) -> bool:
        return self.to_instance().projections.balanced()

    def totals(self) -> dict[str, int]:
        return {a: sum(row[k] for row in self.r) for k, a in enumerate(self.atoms)}

    def to_instance(self) -> Instance:
        """The equivalent complete tiling instance with one 1x1 type per atom."""
        return Instance((CELL,) * len(self.atoms), ProjectionPair(self.r, self.c))


def atom_grid_projections(grid: Sequence[Sequence[int]], atoms: Sequence[str]) -> AtomInstance:
    n = len(grid)
    r = [[0] * len(atoms) for _ in range(n)]
    c = [[0] * len(atoms) for _ in range(n)]
    for i, row in enumerate(grid):
        for j, k in enumerate(row):
            r[i][k] += 1
            c[j][k] += 1
    return AtomInstance(n, r, c, tuple(atoms))


def atom_grid_from_tiling(t: Tiling) -> AtomGrid:
    """Read a complete tiling by 1x1 types as an atom grid."""
    rows, cols = t.shape
    grid = [[-1] * cols for _ in range(rows)]
    for p in t.placements:
        grid[p.row][p.col] = p.k
    if any(-1 in row for row in grid):
        raise ValueError("atom tiling is not complete")
    return tuple(map(tuple, grid))


def atom_grid_to_tiling(grid: Sequence[Sequence[int]], atoms: Sequence[str]) -> Tiling:
    placements = frozenset(
        Placement(i, j, k) for i, row in enumerate(grid) for j, k in enumerate(row)
    )
    return Tiling(len(grid), (CELL,) * len(atoms), placements)


_verified: dict[tuple, bool] = {}


def _fingerprint(g: Gadget) -> tuple:
    return (
        g.name,
        g.d,
        g.tileset,
        tuple(t.key() for t in g.admissible),
        tuple(t.key() for t in g.bad),
        tuple(g.atom_map.items()),
        g.closure,
    )


def require_verified(g: Gadget) -> None:
    key = _fingerprint(g)
    if key not in _verified:
        _verified[key] = g.closure is not None and verify_gadget(g).passed
    if not _verified[key]:
        raise UnverifiedGadget(f"gadget {g.name} does not pass verification")


def _atom_count_check(a: AtomInstance, g: Gadget) -> None:
    if tuple(a.atoms) != tuple(g.atoms):
        raise ValueError(f"instance atoms {a.atoms} do not match gadget atoms {g.atoms}")


def _expand(counts_by_line, blocks, d: int, h: int) -> list[list[int]]:
    out = []
    for counts in counts_by_line:
        for line in range(d):
            out.append([sum(q * blk[line][k] for q, blk in zip(counts, blocks)) for k in range(h)])
    return out


def reduce_instance(a: AtomInstance, g: Gadget, check: bool = True) -> Instance:
    if check:
        require_verified(g)
    _atom_count_check(a, g)
    if not a.balanced():
        return NEGATIVE_INSTANCE
    sigs = representative_signatures(g)
    r = _expand(a.r, [s.rows for s in sigs], g.d, g.h)
    c = _expand(a.c, [s.cols for s in sigs], g.d, g.h)
    return Instance(g.tileset, ProjectionPair(r, c, h=g.h))


@dataclasses.dataclass(frozen=True)
class Decoded:
    status: str  # "ok" | "no_solution" | "ambiguous"
    q: tuple[int, ...] | None = None


def decode_block_row(
    b: Sequence[Sequence[int]] | Sequence[int],
    g: Gadget,
    n: int,
    axis: int = 0,
    check: bool = True,
) -> Decoded:
    """Recover the atom counts of one block-row (axis 0) or block-column (axis 1).

    ``b`` is the ``d x h`` projection of the block line, or its flattening.
    The system uses the extended vectors: each block projection gets a
    trailing 1 and ``b`` gets a trailing ``n``.
    """
    if check:
        require_verified(g)
    flat = [x for row in b for x in row] if b and isinstance(b[0], (list, tuple)) else list(b)
    sigs = representative_signatures(g)
    vectors = [s.row_extended if axis == 0 else s.col_extended for s in sigs]
    q = solve_combination(vectors, flat + [n])
    if q is None:
        return Decoded("no_solution")
    if q == "ambiguous":
        return Decoded("ambiguous")
    if any(x.denominator != 1 or x < 0 for x in q):
        return Decoded("no_solution")
    return Decoded("ok", tuple(int(x) for x in q))


def block_line(inst: Instance, i: int, d: int, axis: int = 0) -> tuple[tuple[int, ...], ...]:
    m = inst.projections.r if axis == 0 else inst.projections.c
    return m[i * d : (i + 1) * d]


def push_forward(grid: Sequence[Sequence[int]], g: Gadget, check: bool = True) -> Tiling:
    """Replace every atom by its representative admissible block."""
    if check:
        require_verified(g)
    n, d = len(grid), g.d
    placements = set()
    for bi, row in enumerate(grid):
        for bj, k in enumerate(row):
            block = g.representative(g.atoms[k])
            placements |= {Placement(p.row + bi * d, p.col + bj * d, p.k) for p in block.placements}
    return Tiling(n * d, g.tileset, frozenset(placements))


def pull_back(t: Tiling, g: Gadget, check: bool = True) -> AtomGrid:
    """Read each aligned block as an admissible tiling and return its atom.

    Raises :class:`NotBlockAdmissible` for the first block (row-major) that
    holds a straddling tile or a non-admissible tiling.
    """
    if check:
        require_verified(g)
    rows, cols = t.shape
    d = g.d
    if rows != cols or rows % d:
        raise ValueError(f"grid {rows}x{cols} is not a square of {d}x{d} blocks")
    violation = validate_tiling(t)
    if violation is not None:
        raise NotBlockAdmissible((violation.placements[0].row // d, violation.placements[0].col // d), str(violation))
    n = rows // d
    local: dict[tuple[int, int], set[Placement]] = {}
    problems: dict[tuple[int, int], str] = {}
    for p in t.placements:
        block = (p.row // d, p.col // d)
        if {(a // d, b // d) for a, b in footprint(p, t.tileset)} != {block}:
            problems.setdefault(block, f"tile {tuple(p)} straddles a block boundary")
        local.setdefault(block, set()).add(Placement(p.row - block[0] * d, p.col - block[1] * d, p.k))
    lookup = {blk.key(): idx for idx, blk in enumerate(g.admissible)}
    grid = [[0] * n for _ in range(n)]
    for bi in range(n):
        for bj in range(n):
            if (bi, bj) in problems:
                raise NotBlockAdmissible((bi, bj), problems[(bi, bj)])
            key = tuple(sorted(local.get((bi, bj), ())))
            if key not in lookup:
                raise NotBlockAdmissible((bi, bj), "block tiling is not admissible")
            grid[bi][bj] = g.atoms.index(g.atom_of(lookup[key]))
    return tuple(map(tuple, grid))
