"""JSON file formats.

Tile types are 1-based in every file and 0-based in memory.  Indices into
lists (``atom_map`` entries) stay 0-based.  Placements are always written
sorted, so serializing a parsed canonical file reproduces it byte for byte.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .core import Instance, Kind, Placement, ProjectionPair, Tile, Tiling, make_tileset, normalize_tile
from .errors import MalformedInstance, UnverifiedGadget
from .gadgets import ATOMS, BlockConstraint, Gadget, RequiredSignature, verify_gadget
from .reduce import AtomInstance

BUILTIN_GADGETS = ("dominoes3", "twosquares4", "cellsquare4", "square4", "lshape6", "shape7")


def dumps(obj: dict) -> str:
    """One top-level key per line, values compact."""
    body = ",\n".join(
        f"  {json.dumps(k)}: {json.dumps(v, separators=(', ', ': '))}" for k, v in obj.items()
    )
    return "{\n" + body + "\n}\n"


def _n_out(n):
    return list(n) if isinstance(n, tuple) else n


def _n_in(n):
    return tuple(n) if isinstance(n, list) else int(n)


def tiles_to_json(tileset) -> list:
    return [[list(c) for c in t.sorted_cells()] for t in tileset]


def tiles_from_json(data) -> tuple[Tile, ...]:
    return make_tileset(normalize_tile(tuple(c) for c in cells) for cells in data)


def placements_to_json(placements) -> list:
    return [[p.row, p.col, p.k + 1] for p in sorted(placements)]


def placements_from_json(data) -> frozenset[Placement]:
    return frozenset(Placement(int(i), int(j), int(k) - 1) for i, j, k in data)


def tiling_to_dict(t: Tiling) -> dict:
    return {"n": _n_out(t.n), "tiles": tiles_to_json(t.tileset), "placements": placements_to_json(t.placements)}


def tiling_from_dict(d: dict) -> Tiling:
    try:
        return Tiling(_n_in(d["n"]), tiles_from_json(d["tiles"]), placements_from_json(d["placements"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInstance(f"bad tiling file: {exc}") from exc


def instance_to_dict(inst: Instance) -> dict:
    p = inst.projections
    return {
        "n": _n_out(inst.n),
        "tiles": tiles_to_json(inst.tileset),
        "kind": p.kind.value,
        "r": [list(row) for row in p.r],
        "c": [list(row) for row in p.c],
    }


def instance_from_dict(d: dict) -> Instance:
    try:
        tiles = tiles_from_json(d["tiles"])
        rows, cols = (d["n"], d["n"]) if isinstance(d["n"], int) else d["n"]
        p = ProjectionPair(d["r"], d["c"], Kind(d.get("kind", "center")), len(tiles))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInstance(f"bad instance file: {exc}") from exc
    if p.shape != (rows, cols):
        raise MalformedInstance(f"projection sizes {p.shape} do not match n={d['n']}")
    return Instance(tiles, p)


def atom_instance_to_dict(a: AtomInstance) -> dict:
    return {"n": a.n, "atoms": list(a.atoms), "r": [list(x) for x in a.r], "c": [list(x) for x in a.c]}


def atom_instance_from_dict(d: dict) -> AtomInstance:
    try:
        return AtomInstance(int(d["n"]), d["r"], d["c"], tuple(d.get("atoms", ATOMS)))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInstance(f"bad atom instance file: {exc}") from exc


def atom_grid_to_dict(grid, atoms) -> dict:
    return {"n": len(grid), "atoms": list(atoms), "grid": [[atoms[k] for k in row] for row in grid]}


def atom_grid_from_dict(d: dict) -> tuple[tuple[tuple[int, ...], ...], tuple[str, ...]]:
    atoms = tuple(d.get("atoms", ATOMS))
    try:
        grid = tuple(tuple(atoms.index(a) for a in row) for row in d["grid"])
    except (KeyError, ValueError) as exc:
        raise MalformedInstance(f"bad atom tiling file: {exc}") from exc
    return grid, atoms


def _cells_out(cells) -> list:
    return [list(c) for c in sorted(cells)]


def _cells_in(data) -> frozenset:
    return frozenset(tuple(c) for c in data)


def constraint_to_dict(c: BlockConstraint) -> dict:
    out: dict[str, Any] = {}
    if c.count is not None:
        out["count"] = sorted(c.count)
    if c.region is not None:
        out["region"] = _cells_out(c.region)
    if c.centers:
        out["centers"] = {str(k + 1): _cells_out(v) for k, v in c.centers}
    if c.covered:
        out["covered"] = _cells_out(c.covered)
    if c.covered_by:
        out["covered_by"] = {str(k + 1): _cells_out(v) for k, v in c.covered_by}
    if c.required:
        out["required"] = _cells_out(c.required)
    if c.exactly_one:
        out["exactly_one"] = [[list(a), list(b)] for a, b in c.exactly_one]
    return out


def constraint_from_dict(d: dict) -> BlockConstraint:
    return BlockConstraint(
        count=frozenset(d["count"]) if "count" in d else None,
        region=_cells_in(d["region"]) if "region" in d else None,
        centers=tuple(sorted((int(k) - 1, _cells_in(v)) for k, v in d.get("centers", {}).items())),
        covered=_cells_in(d.get("covered", [])),
        covered_by=tuple(sorted((int(k) - 1, _cells_in(v)) for k, v in d.get("covered_by", {}).items())),
        required=_cells_in(d.get("required", [])),
        exactly_one=tuple((tuple(a), tuple(b)) for a, b in d.get("exactly_one", [])),
    )


def gadget_to_dict(g: Gadget) -> dict:
    out = {
        "name": g.name,
        "d": g.d,
        "tiles": tiles_to_json(g.tileset),
        "atoms": list(g.atoms),
        "admissible": [placements_to_json(t.placements) for t in g.admissible],
        "atom_map": {a: list(g.atom_map[a]) for a in g.atoms},
    }
    if g.bad:
        out["bad"] = [placements_to_json(t.placements) for t in g.bad]
    if g.closure is not None:
        out["closure"] = constraint_to_dict(g.closure)
    return out


def gadget_from_dict(d: dict) -> Gadget:
    tiles = tiles_from_json(d["tiles"])
    size = int(d["d"])
    block = lambda ps: Tiling(size, tiles, placements_from_json(ps))
    return Gadget(
        name=d.get("name", "gadget"),
        d=size,
        tileset=tiles,
        admissible=tuple(block(ps) for ps in d["admissible"]),
        atom_map={a: tuple(v) for a, v in d["atom_map"].items()},
        atoms=tuple(d.get("atoms", ATOMS)),
        bad=tuple(block(ps) for ps in d.get("bad", [])),
        closure=constraint_from_dict(d["closure"]) if "closure" in d else None,
    )


def search_from_dict(d: dict) -> dict:
    """Keyword arguments for :func:`tomotile.gadgets.discover_gadgets`."""
    atoms = tuple(d.get("atoms", ATOMS))
    kwargs: dict[str, Any] = {
        "d": int(d["d"]),
        "count": [int(x) for x in d["count"]],
        "atoms": atoms,
        "name": d.get("name", "discovered"),
        "required": [
            RequiredSignature(x["atom"], x.get("rows"), x.get("cols")) for x in d["required"]
        ],
    }
    if "bbox" in d:
        kwargs["bbox"] = tuple(d["bbox"])
    if "tilesets" in d:
        kwargs["tilesets"] = [tiles_from_json(ts) for ts in d["tilesets"]]
    if "closure" in d:
        kwargs["constraint"] = constraint_from_dict(d["closure"])
    return kwargs


def read_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_json(path, obj: dict) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def load_gadget(name_or_path: str, verify: bool = True) -> Gadget:
    """Load a built-in gadget by name or a gadget file, verifying it."""
    if name_or_path in BUILTIN_GADGETS:
        text = resources.files("tomotile.data").joinpath(f"{name_or_path}.json").read_text("utf-8")
        g = gadget_from_dict(json.loads(text))
    else:
        g = gadget_from_dict(read_json(name_or_path))
    if verify:
        report = verify_gadget(g)
        if not report.passed:
            raise UnverifiedGadget("\n".join(report.lines()))
    return g
