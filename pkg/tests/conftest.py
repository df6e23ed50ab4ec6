"""Shared fixtures and brute-force oracles.

The oracles here deliberately avoid the package's search code: they walk
plain Python sets so a bug in the solver's bitmask bookkeeping cannot hide
in both places at once.
"""

from __future__ import annotations

import functools
import itertools
from collections import defaultdict

import pytest
from hypothesis import settings

from tomotile.core import CELL, Placement, Tile, Tiling, center_projections

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

H = Tile.rect(1, 2)
V = Tile.rect(2, 1)
SQ = Tile.rect(2, 2)
L = Tile(frozenset({(0, 0), (1, 0), (1, 1)}))
# the L-tromino pointing left, whose cells sit left of its center
J = Tile(frozenset({(0, 0), (1, -1), (1, 0)}))

ACCEPTANCE_LINES: list[str] = []


def report(criterion: int, ok: bool, detail: str) -> str:
    line = f"[acceptance {criterion}] {'PASS' if ok else 'FAIL'}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def _in_grid_placements(n, tileset):
    rows, cols = (n, n) if isinstance(n, int) else n
    out = []
    for i in range(rows):
        for j in range(cols):
            for k, t in enumerate(tileset):
                cells = {(i + a, j + b) for a, b in t.cells}
                if all(0 <= a < rows and 0 <= b < cols for a, b in cells):
                    out.append((Placement(i, j, k), frozenset(cells)))
    return out


@functools.lru_cache(maxsize=None)
def brute_tilings(n, tileset: tuple) -> tuple[Tiling, ...]:
    """Every valid tiling, by include/exclude over all in-grid placements."""
    cands = _in_grid_placements(n, tileset)
    found = []

    def walk(idx, used, chosen):
        if idx == len(cands):
            found.append(Tiling(n, tileset, frozenset(chosen)))
            return
        walk(idx + 1, used, chosen)
        p, cells = cands[idx]
        if not cells & used:
            walk(idx + 1, used | cells, chosen + [p])

    walk(0, frozenset(), [])
    return tuple(found)


@functools.lru_cache(maxsize=None)
def brute_by_projection(n, tileset: tuple) -> dict:
    groups = defaultdict(list)
    for t in brute_tilings(n, tileset):
        groups[center_projections(t)].append(t)
    return {k: sorted(v, key=Tiling.key) for k, v in groups.items()}


def brute_matrix_exists(r, c) -> bool:
    """Exhaustive 0-1 matrix search, row by row, checking column sums at the end."""
    m, n = len(r), len(c)
    rows_by_sum = defaultdict(list)
    for bits in itertools.product((0, 1), repeat=n):
        rows_by_sum[sum(bits)].append(bits)
    target = tuple(c)

    def walk(i, col):
        if any(x > y for x, y in zip(col, target)):
            return False
        if i == m:
            return col == target
        return any(walk(i + 1, tuple(a + b for a, b in zip(col, row))) for row in rows_by_sum[r[i]])

    if any(x > n for x in r):
        return False
    return walk(0, (0,) * n)


@pytest.fixture(scope="session")
def gadgets():
    from tomotile.io import BUILTIN_GADGETS, load_gadget

    return {name: load_gadget(name) for name in BUILTIN_GADGETS}


TILESETS_SMALL = {
    "cell": (CELL,),
    "two-cells": (CELL, CELL),
    "dominoes": (H, V),
    "square": (SQ,),
    "L": (L,),
    "J": (J,),
    "square+cell": (SQ, CELL),
    "H+cell": (H, CELL),
    "L+J": (L, J),
}
