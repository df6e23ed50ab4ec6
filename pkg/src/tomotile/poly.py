"""Polynomial special cases: a single 1x1 type, and single horizontal bars."""

from __future__ import annotations

from typing import Sequence

from .core import Instance, Kind, Placement, Tile, Tiling
from .errors import OutOfRange, WrongTileSet
from .solver import SolveOutcome, SolverConfig, Status, solve


class OpCounter:
    """Counts elementary steps so tests can check how work scales with n."""

    def __init__(self):
        self.ops = 0

    def tick(self, k: int = 1) -> None:
        self.ops += k


def _check_ranges(r: Sequence[int], c: Sequence[int]) -> None:
    if any(not 0 <= x <= len(c) for x in r) or any(not 0 <= x <= len(r) for x in c):
        raise OutOfRange("row sums must lie in [0, #cols] and column sums in [0, #rows]")


def _sorted_desc(values: Sequence[int], top: int, counter: OpCounter | None) -> list[int]:
    # counting sort keeps the whole test linear in the grid side
    buckets = [0] * (top + 1)
    for x in values:
        buckets[x] += 1
    out = []
    for v in range(top, -1, -1):
        out.extend([v] * buckets[v])
    if counter:
        counter.tick(len(values) + top + 1)
    return out


def ryser_feasible(
    r: Sequence[int], c: Sequence[int], counter: OpCounter | None = None
) -> bool:
    """Gale-Ryser test for a 0-1 matrix with row sums ``r`` and column sums ``c``."""
    _check_ranges(r, c)
    if sum(r) != sum(c):
        return False
    rs = _sorted_desc(r, len(c), counter)
    # conjugate[k-1] = number of columns with sum >= k
    conjugate = [0] * (len(r) + 1)
    for x in c:
        conjugate[x] += 1
    for k in range(len(r) - 1, -1, -1):
        conjugate[k] += conjugate[k + 1]
    if counter:
        counter.tick(len(c) + len(r))
    lhs = rhs = 0
    for k, x in enumerate(rs, start=1):
        lhs += x
        rhs += conjugate[k] if k <= len(r) else 0
        if lhs > rhs:
            return False
    if counter:
        counter.tick(len(rs))
    return True


def ryser_solve(
    r: Sequence[int], c: Sequence[int], counter: OpCounter | None = None
) -> list[list[int]] | None:
    """A 0-1 matrix with the given margins, or ``None`` when none exists.

    Rows are filled in descending row-sum order (stable), each putting its
    ones into the columns with the largest remaining demand, lower column
    index first on ties.
    """
    if not ryser_feasible(r, c, counter):
        return None
    m, n = len(r), len(c)
    residual = list(c)
    out = [[0] * n for _ in range(m)]
    order = [i for v in range(n, -1, -1) for i in range(m) if r[i] == v]
    if counter:
        counter.tick(m * (n + 1))
    for i in order:
        # bucket columns by residual; each bucket stays in column order
        buckets: list[list[int]] = [[] for _ in range(m + 1)]
        for j in range(n):
            buckets[residual[j]].append(j)
        need = r[i]
        for v in range(m, 0, -1):
            for j in buckets[v]:
                if not need:
                    break
                out[i][j] = 1
                residual[j] -= 1
                need -= 1
            if not need:
                break
        if counter:
            counter.tick(n + m + 1)
        if need:
            return None  # unreachable when the Gale-Ryser test passed
    return out


def _bar_width(inst: Instance) -> int:
    if len(inst.tileset) != 1:
        raise WrongTileSet("bar_solve takes exactly one tile")
    tile = inst.tileset[0]
    if tile.height != 1 or tile != Tile.rect(1, tile.width):
        raise WrongTileSet("the tile is not a horizontal bar")
    return tile.width


def bar_solve(inst: Instance, cfg: SolverConfig = SolverConfig()) -> SolveOutcome:
    """Reconstruction for one horizontal bar; width 1 goes through Ryser."""
    w = _bar_width(inst)
    if w > 1 or inst.kind is not Kind.CENTER:
        return solve(inst, cfg)
    r = [row[0] for row in inst.projections.r]
    c = [row[0] for row in inst.projections.c]
    try:
        matrix = ryser_solve(r, c)
    except OutOfRange:
        return SolveOutcome(Status.UNSAT, reason="out_of_range")
    if matrix is None:
        return SolveOutcome(Status.UNSAT, reason="gale_ryser")
    placements = frozenset(
        Placement(i, j, 0) for i, row in enumerate(matrix) for j, x in enumerate(row) if x
    )
    return SolveOutcome(Status.SAT, Tiling(inst.n, inst.tileset, placements))
