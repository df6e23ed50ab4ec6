"""Exact backtracking reconstruction from center projections.

The search walks candidate center positions in row-major order.  At each
position it tries every type whose residual row and column counts are
positive and whose footprint is free, then tries leaving the position empty.
After every decision the residual demand of the current row and column is
compared against the positions still able to host a center on that line.
"""

from __future__ import annotations

import dataclasses
import enum
import itertools
import random
from typing import Iterator, Sequence

from .core import (
    Instance,
    Kind,
    Placement,
    Tile,
    Tiling,
    convert_projections,
    projections,
    validate_tiling,
)
from .errors import BadIndexSet, LimitExceeded, MalformedInstance, NotRepresentable


class Status(str, enum.Enum):
    SAT = "satisfiable"
    UNSAT = "unsatisfiable"
    LIMIT = "node_limit_reached"


@dataclasses.dataclass(frozen=True)
class SolverConfig:
    node_limit: int = 0  # 0 = unlimited
    solution_limit: int = 0  # 0 = unlimited, enumerate only
    enable_fact1: bool = True
    deterministic: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.node_limit < 0 or self.solution_limit < 0:
            raise ValueError("limits must be non-negative")


@dataclasses.dataclass(frozen=True)
class SolveOutcome:
    status: Status
    witness: Tiling | None = None
    nodes: int = 0
    reason: str = ""

    @property
    def satisfiable(self) -> bool:
        return self.status is Status.SAT


class _NodeLimit(Exception):
    pass


@dataclasses.dataclass(frozen=True)
class Fact1Deduction:
    forced_full: frozenset[tuple[int, int]]
    forced_empty: frozenset[tuple[int, int]]


def fact1_deduce(
    r: Sequence[int], c: Sequence[int], rows: Sequence[int], cols: Sequence[int]
) -> Fact1Deduction | None:
    """Forced cells for a single cell type when the row/column identity is tight.

    If ``sum(r[I]) - sum(c[not J]) == |I| * |J|`` then ``I x J`` is fully
    covered and the complement block is empty in every solution.
    """
    m, n = len(r), len(c)
    I, J = set(rows), set(cols)
    if any(not 0 <= i < m for i in I) or any(not 0 <= j < n for j in J):
        raise BadIndexSet(f"index sets {sorted(I)}, {sorted(J)} out of range")
    not_I = [i for i in range(m) if i not in I]
    not_J = [j for j in range(n) if j not in J]
    if sum(r[i] for i in I) - sum(c[j] for j in not_J) != len(I) * len(J):
        return None
    return Fact1Deduction(
        frozenset(itertools.product(sorted(I), sorted(J))),
        frozenset(itertools.product(not_I, not_J)),
    )


def fact1_forced(r: Sequence[int], c: Sequence[int]) -> Fact1Deduction:
    """Union of the deductions over threshold row and column sets.

    Tight pairs ``(I, J)`` always consist of rows/columns whose sums lie on
    one side of ``|J|`` / ``|I|``, so threshold sets reach all of them.
    """
    full: set = set()
    empty: set = set()
    row_sets = {frozenset(i for i, x in enumerate(r) if x >= t) for t in range(len(c) + 2)}
    col_sets = {frozenset(j for j, x in enumerate(c) if x >= t) for t in range(len(r) + 2)}
    for I in row_sets:
        for J in col_sets:
            d = fact1_deduce(r, c, I, J)
            if d is not None:
                full |= d.forced_full
                empty |= d.forced_empty
    return Fact1Deduction(frozenset(full), frozenset(empty))


class _Search:
    def __init__(self, inst: Instance, cfg: SolverConfig):
        self.inst = inst
        self.cfg = cfg
        self.R, self.C = inst.shape
        self.h = len(inst.tileset)
        self.rr = [list(row) for row in inst.projections.r]
        self.cr = [list(row) for row in inst.projections.c]
        self.nodes = 0
        self.rng = None if cfg.deterministic else random.Random(cfg.seed)
        R, C = self.R, self.C
        # masks[k][pos]: footprint bitmask, or None when the tile does not fit
        self.masks = []
        for tile in inst.tileset:
            row = []
            for i in range(R):
                for j in range(C):
                    m = 0
                    for dr, dc in tile.cells:
                        a, b = i + dr, j + dc
                        if not (0 <= a < R and 0 <= b < C):
                            m = None
                            break
                        m |= 1 << (a * C + b)
                    row.append(m)
            self.masks.append(row)
        self.forced = [-1] * (R * C)
        self.forced_mask = 0
        self.forbidden = [0] * self.h
        self.chosen: list[Placement] = []

    def apply_fact1(self) -> bool:
        """Seed forced/forbidden cells from every 1x1 type.  False if contradictory."""
        for k, tile in enumerate(self.inst.tileset):
            if len(tile.cells) != 1:
                continue
            r = [row[k] for row in self.rr]
            c = [row[k] for row in self.cr]
            d = fact1_forced(r, c)
            for i, j in d.forced_empty:
                self.forbidden[k] |= 1 << (i * self.C + j)
            for i, j in d.forced_full:
                pos = i * self.C + j
                if self.forced[pos] not in (-1, k) or self.forbidden[k] >> pos & 1:
                    return False
                self.forced[pos] = k
                self.forced_mask |= 1 << pos
        return True

    def _line_ok(self, i: int, j: int, occ: int) -> bool:
        C, R, masks = self.C, self.R, self.masks
        rr_i, cr_j = self.rr[i], self.cr[j]
        if any(rr_i):
            base = i * C
            total = sum(rr_i)
            slots = 0
            per_type = [0] * self.h
            for jj in range(j + 1, C):
                pos = base + jj
                any_k = False
                for k in range(self.h):
                    if rr_i[k] and self.cr[jj][k]:
                        m = masks[k][pos]
                        if m is not None and not occ & m:
                            per_type[k] += 1
                            any_k = True
                slots += any_k
            if total > slots or any(rr_i[k] > per_type[k] for k in range(self.h)):
                return False
        if any(cr_j):
            total = sum(cr_j)
            slots = 0
            per_type = [0] * self.h
            for ii in range(i + 1, R):
                pos = ii * C + j
                any_k = False
                for k in range(self.h):
                    if cr_j[k] and self.rr[ii][k]:
                        m = masks[k][pos]
                        if m is not None and not occ & m:
                            per_type[k] += 1
                            any_k = True
                slots += any_k
            if total > slots or any(cr_j[k] > per_type[k] for k in range(self.h)):
                return False
        return True

    def run(self, pos: int = 0, occ: int = 0) -> Iterator[list[Placement]]:
        self.nodes += 1
        if self.cfg.node_limit and self.nodes > self.cfg.node_limit:
            raise _NodeLimit
        if pos == self.R * self.C:
            yield self.chosen
            return
        i, j = divmod(pos, self.C)
        forced = self.forced[pos]
        types = range(self.h) if forced < 0 else (forced,)
        if self.rng is not None and forced < 0:
            types = self.rng.sample(list(types), len(types))
        bit = 1 << pos
        for k in types:
            if not (self.rr[i][k] and self.cr[j][k]):
                continue
            m = self.masks[k][pos]
            if m is None or occ & m or self.forbidden[k] & bit:
                continue
            if m & self.forced_mask != (bit if forced == k else 0):
                continue
            self.rr[i][k] -= 1
            self.cr[j][k] -= 1
            self.chosen.append(Placement(i, j, k))
            if self._line_ok(i, j, occ | m):
                yield from self.run(pos + 1, occ | m)
            self.chosen.pop()
            self.rr[i][k] += 1
            self.cr[j][k] += 1
        if forced < 0 and self._line_ok(i, j, occ):
            yield from self.run(pos + 1, occ)


def _prepare(inst: Instance) -> tuple[Instance | None, str]:
    """Center-kind copy of ``inst`` or ``(None, reason)`` when trivially unsat."""
    if not isinstance(inst, Instance):
        raise MalformedInstance("expected an Instance")
    if inst.kind is Kind.CELL:
        try:
            inst = Instance(
                inst.tileset, convert_projections(inst.projections, inst.tileset, Kind.CENTER)
            )
        except NotRepresentable:
            return None, "not_representable"
    if not inst.projections.balanced():
        return None, "unbalanced"
    return inst, ""


def _iterate(inst: Instance, cfg: SolverConfig) -> tuple[_Search | None, str]:
    center, reason = _prepare(inst)
    if center is None:
        return None, reason
    search = _Search(center, cfg)
    if cfg.enable_fact1 and not search.apply_fact1():
        return None, "fact1_contradiction"
    return search, ""


def solve(inst: Instance, cfg: SolverConfig = SolverConfig()) -> SolveOutcome:
    search, reason = _iterate(inst, cfg)
    if search is None:
        return SolveOutcome(Status.UNSAT, reason=reason)
    try:
        for placements in search.run():
            t = Tiling(inst.n, inst.tileset, frozenset(placements))
            return SolveOutcome(Status.SAT, t, search.nodes)
    except _NodeLimit:
        return SolveOutcome(Status.LIMIT, nodes=search.nodes, reason="node_limit")
    return SolveOutcome(Status.UNSAT, nodes=search.nodes, reason="exhausted")


def enumerate_solutions(inst: Instance, cfg: SolverConfig = SolverConfig()) -> list[Tiling]:
    """All tilings with the instance's projections, sorted by placement triples.

    With ``solution_limit`` set, the first solutions found by the search are
    kept and returned in the same canonical order.  Exceeding ``node_limit``
    raises :class:`LimitExceeded`.
    """
    search, _ = _iterate(inst, cfg)
    if search is None:
        return []
    found = []
    try:
        for placements in search.run():
            found.append(Tiling(inst.n, inst.tileset, frozenset(placements)))
            if cfg.solution_limit and len(found) >= cfg.solution_limit:
                break
    except _NodeLimit:
        raise LimitExceeded(f"node limit {cfg.node_limit} reached") from None
    return sorted(found, key=Tiling.key)


def count_all_tilings(n, tileset: Sequence[Tile], node_limit: int = 0) -> int:
    """Number of valid tilings of the grid, the empty tiling included."""
    t = Tiling(n, tileset)
    R, C = t.shape
    masks = []
    for i in range(R):
        for j in range(C):
            at = []
            for tile in t.tileset:
                cells = [(i + a, j + b) for a, b in tile.cells]
                if all(0 <= a < R and 0 <= b < C for a, b in cells):
                    at.append(sum(1 << (a * C + b) for a, b in cells))
            masks.append(at)
    nodes = 0

    def count(pos: int, occ: int) -> int:
        nonlocal nodes
        nodes += 1
        if node_limit and nodes > node_limit:
            raise LimitExceeded(f"node limit {node_limit} reached")
        if pos == R * C:
            return 1
        total = count(pos + 1, occ)
        for m in masks[pos]:
            if not occ & m:
                total += count(pos + 1, occ | m)
        return total

    return count(0, 0)


def check(inst: Instance, t: Tiling) -> bool:
    if validate_tiling(t) is not None:
        return False
    if t.shape != inst.shape or t.tileset != inst.tileset:
        return False
    return projections(t, inst.kind) == inst.projections
