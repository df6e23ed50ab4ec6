"""Seeded random tilings, instances and atom grids for tests and the CLI."""

from __future__ import annotations

import random
from typing import Sequence

from .core import Instance, Placement, Tile, Tiling, footprint, projections


def random_tiling(n, tileset: Sequence[Tile], rng: random.Random, density: float = 0.7) -> Tiling:
    """Visit every placement in random order and keep each that fits with
    probability ``density``.  ``density=1`` gives a maximal tiling."""
    tileset = tuple(tileset)
    rows, cols = (n, n) if isinstance(n, int) else n
    candidates = [Placement(i, j, k) for i in range(rows) for j in range(cols) for k in range(len(tileset))]
    rng.shuffle(candidates)
    used: set = set()
    chosen = []
    for p in candidates:
        cells = footprint(p, tileset)
        if any(not (0 <= a < rows and 0 <= b < cols) for a, b in cells) or cells & used:
            continue
        if rng.random() < density:
            used |= cells
            chosen.append(p)
    return Tiling(n, tileset, frozenset(chosen))


def random_instance(n, tileset: Sequence[Tile], seed: int, kind: str = "center", density: float = 0.7):
    """A satisfiable instance together with the tiling it was built from."""
    t = random_tiling(n, tileset, random.Random(seed), density)
    return Instance(t.tileset, projections(t, kind)), t


def random_atom_grid(n: int, rng: random.Random, atoms: int = 4, exclude: Sequence[int] = ()) -> tuple[tuple[int, ...], ...]:
    pool = [a for a in range(atoms) if a not in exclude]
    return tuple(tuple(rng.choice(pool) for _ in range(n)) for _ in range(n))
