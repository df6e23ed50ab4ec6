"""Block gadgets for reducing atom problems to tiling problems.

A gadget is a ``d x d`` block together with its admissible tilings, each
standing for one atom colour.  This module computes block signatures,
checks their (affine) independence with exact arithmetic, confirms by
enumeration that a closure constraint admits exactly the admissible tilings
(plus any documented bad tilings), and searches tile shapes for new gadgets.
"""

from __future__ import annotations

import dataclasses
import itertools
from typing import Callable, Iterable, Mapping, Sequence

from .core import (
    Cell,
    Matrix,
    Placement,
    Tile,
    TileSet,
    Tiling,
    center_projections,
    footprint,
    normalize_tile,
    validate_tiling,
)
from .errors import InvalidGadget, LimitExceeded, SearchSpaceTooLarge, TileError
from .rational import rank

ATOMS = ("yellow", "blue", "red", "clear")


@dataclasses.dataclass(frozen=True)
class BlockConstraint:
    """Declarative restrictions on block tilings.

    Structural fields prune the enumeration; ``predicate`` is an arbitrary
    extra filter applied to each complete candidate.

    count        -- allowed numbers of tiles
    region       -- every footprint must lie inside these cells
    centers      -- per type, the cells allowed to hold a center of that type
    covered      -- cells that must be covered by some tile
    covered_by   -- ``(type, cells)`` pairs: cells covered by that type
    required     -- cells that must hold a center
    exactly_one  -- pairs of cells of which exactly one holds a center
    """

    count: frozenset[int] | None = None
    region: frozenset[Cell] | None = None
    centers: tuple[tuple[int, frozenset[Cell]], ...] = ()
    covered: frozenset[Cell] = frozenset()
    covered_by: tuple[tuple[int, frozenset[Cell]], ...] = ()
    required: frozenset[Cell] = frozenset()
    exactly_one: tuple[tuple[Cell, Cell], ...] = ()
    predicate: Callable[[Tiling], bool] | None = dataclasses.field(default=None, compare=False)

    def allows_placement(self, p: Placement, cells: frozenset[Cell]) -> bool:
        if self.region is not None and not cells <= self.region:
            return False
        for k, allowed in self.centers:
            if k == p.k and (p.row, p.col) not in allowed:
                return False
        return True

    def __call__(self, t: Tiling) -> bool:
        if self.count is not None and len(t.placements) not in self.count:
            return False
        owner = t.covered()
        if not self.covered <= owner.keys():
            return False
        for k, cells in self.covered_by:
            if any(cell not in owner or owner[cell].k != k for cell in cells):
                return False
        centers = {(p.row, p.col) for p in t.placements}
        if not self.required <= centers:
            return False
        if any((a in centers) == (b in centers) for a, b in self.exactly_one):
            return False
        if any(not self.allows_placement(p, footprint(p, t.tileset)) for p in t.placements):
            return False
        return self.predicate is None or bool(self.predicate(t))


def _as_constraint(constraint) -> BlockConstraint:
    if constraint is None:
        return BlockConstraint()
    if isinstance(constraint, BlockConstraint):
        return constraint
    return BlockConstraint(predicate=constraint)


def enumerate_block_tilings(
    d: int,
    tileset: Sequence[Tile],
    constraint: BlockConstraint | Callable[[Tiling], bool] | None = None,
    node_limit: int = 0,
    stop_after: int = 0,
) -> list[Tiling]:
    """All valid tilings of the ``d x d`` grid accepted by ``constraint``.

    ``stop_after`` ends the search once that many tilings were accepted
    (used by discovery to reject shapes early).  Results are sorted by
    placement triples.
    """
    cons = _as_constraint(constraint)
    tileset = tuple(tileset)
    candidates = []
    for i in range(d):
        for j in range(d):
            for k in range(len(tileset)):
                p = Placement(i, j, k)
                cells = footprint(p, tileset)
                if all(0 <= a < d and 0 <= b < d for a, b in cells) and cons.allows_placement(p, cells):
                    candidates.append((p, sum(1 << (a * d + b) for a, b in cells)))
    max_count = max(cons.count) if cons.count is not None else len(candidates)
    found: list[Tiling] = []
    chosen: list[Placement] = []
    nodes = 0

    def walk(idx: int, occ: int) -> bool:
        nonlocal nodes
        nodes += 1
        if node_limit and nodes > node_limit:
            raise LimitExceeded(f"node limit {node_limit} reached")
        if idx == len(candidates):
            t = Tiling(d, tileset, frozenset(chosen))
            if cons(t):
                found.append(t)
                return bool(stop_after) and len(found) >= stop_after
            return False
        p, m = candidates[idx]
        if len(chosen) < max_count and not occ & m:
            chosen.append(p)
            stop = walk(idx + 1, occ | m)
            chosen.pop()
            if stop:
                return True
        return walk(idx + 1, occ)

    walk(0, 0)
    return sorted(found, key=Tiling.key)


@dataclasses.dataclass(frozen=True)
class Gadget:
    name: str
    d: int
    tileset: TileSet
    admissible: tuple[Tiling, ...]
    atom_map: Mapping[str, tuple[int, ...]]
    atoms: tuple[str, ...] = ATOMS
    bad: tuple[Tiling, ...] = ()
    closure: BlockConstraint | None = dataclasses.field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "tileset", tuple(self.tileset))
        object.__setattr__(self, "admissible", tuple(self.admissible))
        object.__setattr__(self, "bad", tuple(self.bad))
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(
            self, "atom_map", {a: tuple(self.atom_map.get(a, ())) for a in self.atoms}
        )
        if set(self.atom_map) != set(self.atoms):
            raise InvalidGadget("atom_map keys must match atoms")
        for t in self.admissible + self.bad:
            if t.shape != (self.d, self.d) or t.tileset != self.tileset:
                raise InvalidGadget("block tilings must use the gadget's grid and tiles")
            violation = validate_tiling(t)
            if violation is not None:
                raise InvalidGadget(f"invalid block tiling: {violation}")
        used = sorted(i for idx in self.atom_map.values() for i in idx)
        if used != list(range(len(self.admissible))):
            raise InvalidGadget("every admissible tiling must represent exactly one atom")
        if any(not idx for idx in self.atom_map.values()):
            raise InvalidGadget("every atom needs at least one admissible tiling")

    @property
    def h(self) -> int:
        return len(self.tileset)

    def representative(self, atom: str) -> Tiling:
        return self.admissible[self.atom_map[atom][0]]

    def atom_of(self, index: int) -> str:
        return next(a for a, idx in self.atom_map.items() if index in idx)


@dataclasses.dataclass(frozen=True)
class BlockSignature:
    """Center projections of one block tiling, as ``d x h`` matrices."""

    rows: Matrix
    cols: Matrix

    @property
    def row_vector(self) -> tuple[int, ...]:
        return tuple(x for row in self.rows for x in row)

    @property
    def col_vector(self) -> tuple[int, ...]:
        return tuple(x for row in self.cols for x in row)

    @property
    def row_extended(self) -> tuple[int, ...]:
        return self.row_vector + (1,)

    @property
    def col_extended(self) -> tuple[int, ...]:
        return self.col_vector + (1,)

    @property
    def vector(self) -> tuple[int, ...]:
        """Rows and columns flattened, with the constant 1 appended."""
        return self.row_vector + self.col_vector + (1,)


def signature(t: Tiling) -> BlockSignature:
    p = center_projections(t)
    return BlockSignature(p.r, p.c)


def block_signatures(g: Gadget) -> list[BlockSignature]:
    return [signature(t) for t in g.admissible]


@dataclasses.dataclass(frozen=True)
class Independence:
    plain: bool
    affine: bool
    row_rank: int
    col_rank: int
    row_affine_rank: int
    col_affine_rank: int


def independence_of(sigs: Sequence[BlockSignature]) -> Independence:
    """Rank tests done separately for the row and the column side.

    Decoding works one block-row (or block-column) at a time, so each side
    has to determine the atom counts on its own.
    """
    k = len(sigs)
    rr = rank([s.row_vector for s in sigs])
    cr = rank([s.col_vector for s in sigs])
    ra = rank([s.row_extended for s in sigs])
    ca = rank([s.col_extended for s in sigs])
    return Independence(rr == k and cr == k, ra == k and ca == k, rr, cr, ra, ca)


def representative_signatures(g: Gadget) -> list[BlockSignature]:
    return [signature(g.representative(a)) for a in g.atoms]


def verify_independence(g: Gadget) -> Independence:
    return independence_of(representative_signatures(g))


@dataclasses.dataclass
class GadgetReport:
    name: str
    enumerated: int
    missing: list[Tiling]
    unexpected: list[Tiling]
    bad_problems: list[str]
    independence: Independence
    inconsistent_atoms: list[str]

    @property
    def closure_ok(self) -> bool:
        return not (self.missing or self.unexpected or self.bad_problems)

    @property
    def passed(self) -> bool:
        return self.closure_ok and self.independence.affine and not self.inconsistent_atoms

    def lines(self) -> list[str]:
        ind = self.independence
        out = [
            f"gadget {self.name}: {'PASS' if self.passed else 'FAIL'}",
            f"  closure: {'ok' if self.closure_ok else 'FAILED'} ({self.enumerated} tilings enumerated)",
        ]
        out += [f"  missing admissible tiling: {list(t.key())}" for t in self.missing]
        out += [f"  unexpected tiling: {list(t.key())}" for t in self.unexpected]
        out += [f"  bad tiling: {msg}" for msg in self.bad_problems]
        out.append(
            f"  independence: plain={ind.plain} affine={ind.affine} "
            f"(row rank {ind.row_rank}/{ind.row_affine_rank}, col rank {ind.col_rank}/{ind.col_affine_rank})"
        )
        out += [f"  atom {a}: tilings have different projections" for a in self.inconsistent_atoms]
        return out


def _is_bad(t: Tiling, g: Gadget) -> str | None:
    """Reason ``t`` fails to be a bad tiling, or ``None`` if it is one."""
    if t.key() in {a.key() for a in g.admissible}:
        return "is admissible"
    sig = signature(t)
    sigs = block_signatures(g)
    row_atoms = {g.atom_of(i) for i, s in enumerate(sigs) if s.rows == sig.rows}
    col_atoms = {g.atom_of(i) for i, s in enumerate(sigs) if s.cols == sig.cols}
    if not any(a != b for a in row_atoms for b in col_atoms):
        return "row and column projections do not match two different atoms"
    return None


def verify_gadget(
    g: Gadget,
    closure: BlockConstraint | Callable[[Tiling], bool] | None = None,
    node_limit: int = 0,
) -> GadgetReport:
    closure = g.closure if closure is None else closure
    if closure is None:
        raise InvalidGadget(f"gadget {g.name} has no closure constraint to verify against")
    enumerated = enumerate_block_tilings(g.d, g.tileset, closure, node_limit)
    got = {t.key(): t for t in enumerated}
    admissible = {t.key() for t in g.admissible}
    bad = {t.key() for t in g.bad}
    missing = [t for t in g.admissible if t.key() not in got]
    unexpected = [t for k, t in got.items() if k not in admissible and k not in bad]
    bad_problems = []
    for t in g.bad:
        if t.key() not in got:
            bad_problems.append(f"{list(t.key())} is not reachable under the closure constraint")
        reason = _is_bad(t, g)
        if reason:
            bad_problems.append(f"{list(t.key())} {reason}")
    inconsistent = []
    for atom, idx in g.atom_map.items():
        sigs = {signature(g.admissible[i]) for i in idx}
        if len(sigs) > 1:
            inconsistent.append(atom)
    return GadgetReport(
        g.name,
        len(enumerated),
        missing,
        unexpected,
        bad_problems,
        verify_independence(g),
        inconsistent,
    )


def polyominoes_in_box(height: int, width: int, max_cells: int = 20) -> list[Tile]:
    """Every hole-less polyomino fitting in the box, normalized and deduplicated."""
    if height * width > max_cells:
        raise SearchSpaceTooLarge(f"{height}x{width} box has more than {max_cells} cells")
    box = [(r, c) for r in range(height) for c in range(width)]
    shapes = set()
    for mask in range(1, 1 << len(box)):
        cells = [box[i] for i in range(len(box)) if mask >> i & 1]
        try:
            shapes.add(normalize_tile(cells))
        except TileError:
            continue
    return sorted(shapes, key=lambda t: (t.size, t.sorted_cells()))


@dataclasses.dataclass(frozen=True)
class RequiredSignature:
    """Projections one admissible tiling must have; ``None`` leaves a side free."""

    atom: str
    rows: Matrix | None = None
    cols: Matrix | None = None

    def matches(self, sig: BlockSignature) -> bool:
        return (self.rows is None or tuple(map(tuple, self.rows)) == sig.rows) and (
            self.cols is None or tuple(map(tuple, self.cols)) == sig.cols
        )


def _assign(tilings: Sequence[Tiling], required: Sequence[RequiredSignature]):
    sigs = [signature(t) for t in tilings]
    for perm in itertools.permutations(range(len(required))):
        if all(required[p].matches(s) for p, s in zip(perm, sigs)):
            return perm
    return None


def discover_gadgets(
    d: int,
    required: Sequence[RequiredSignature],
    *,
    count: Iterable[int],
    tilesets: Iterable[Sequence[Tile]] | None = None,
    bbox: tuple[int, int] | None = None,
    constraint: BlockConstraint | None = None,
    atoms: Sequence[str] = ATOMS,
    name: str = "discovered",
) -> list[Gadget]:
    """Search tile sets for blocks whose tilings match ``required`` exactly.

    Candidate tile sets are either given or every single tile in ``bbox``.
    For each, the tilings of the ``d x d`` block with a tile count in
    ``count`` (and passing ``constraint``) are enumerated; a gadget is
    emitted when there are exactly ``len(required)`` of them and they can be
    matched one-to-one with the required signatures.
    """
    if tilesets is None:
        if bbox is None:
            raise ValueError("give tilesets or a bounding box")
        tilesets = [(t,) for t in polyominoes_in_box(*bbox)]
    counts = frozenset(count)
    base = constraint or BlockConstraint()
    cons = dataclasses.replace(base, count=counts if base.count is None else base.count & counts)
    out = []
    for ts in tilesets:
        ts = tuple(ts)
        if min(counts) * min(t.size for t in ts) > d * d:
            continue
        tilings = enumerate_block_tilings(d, ts, cons, stop_after=len(required) + 1)
        if len(tilings) != len(required):
            continue
        perm = _assign(tilings, required)
        if perm is None:
            continue
        atom_map: dict[str, list[int]] = {a: [] for a in atoms}
        order = sorted(range(len(tilings)), key=lambda i: (atoms.index(required[perm[i]].atom), perm[i]))
        admissible = [tilings[i] for i in order]
        for new, i in enumerate(order):
            atom_map[required[perm[i]].atom].append(new)
        out.append(
            Gadget(name, d, ts, tuple(admissible), atom_map, tuple(atoms), closure=cons)
        )
    return out


def center_residue(t: Tiling, d: int) -> list[list[int]]:
    """``m[i][j]`` counts placements whose center is ``(i, j)`` modulo ``d``."""
    if d < 1:
        raise ValueError("d must be positive")
    m = [[0] * d for _ in range(d)]
    for p in t.placements:
        m[p.row % d][p.col % d] += 1
    return m
