"""Command-line front end.

Data goes to stdout (or ``-o``), diagnostics to stderr.  Exit codes:
0 satisfiable / ok, 1 unsatisfiable / failed check, 2 parse or validation
error, 3 node limit reached, 4 pull-back failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .core import CELL, Kind, Tile, convert_projections, projections, validate_tiling
from .errors import LimitExceeded, TomoTileError
from .gadgets import discover_gadgets, verify_gadget
from .generate import random_instance
from .reduce import NotBlockAdmissible, atom_grid_projections, pull_back, push_forward, reduce_instance
from .render import RenderSpec, render
from .solver import SolverConfig, Status, enumerate_solutions, solve

EXIT_OK, EXIT_UNSAT, EXIT_INPUT, EXIT_LIMIT, EXIT_PULLBACK = 0, 1, 2, 3, 4

NAMED_TILESETS = {
    "cell": (CELL,),
    "dominoes": (Tile.rect(1, 2), Tile.rect(2, 1)),
    "square": (Tile.rect(2, 2),),
    "ltromino": (Tile(frozenset({(0, 0), (1, 0), (1, 1)})),),
    "square+cell": (Tile.rect(2, 2), CELL),
}


class InputError(Exception):
    """Bad input file or arguments; maps to exit code 2."""


def _load(path: str) -> dict:
    try:
        return io.read_json(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _emit(args, obj: dict) -> None:
    text = io.dumps(obj)
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _tiling(path: str):
    t = io.tiling_from_dict(_load(path))
    violation = validate_tiling(t)
    if violation is not None:
        raise InputError(f"invalid tiling: {violation}")
    return t


def cmd_project(args) -> int:
    t = _tiling(args.tiling)
    p = projections(t, args.kind)
    _emit(args, {"n": io._n_out(t.n), "tiles": io.tiles_to_json(t.tileset), "kind": p.kind.value,
                 "r": [list(x) for x in p.r], "c": [list(x) for x in p.c]})
    return EXIT_OK


def cmd_convert(args) -> int:
    inst = io.instance_from_dict(_load(args.instance))
    p = convert_projections(inst.projections, inst.tileset, Kind(args.to))
    _emit(args, {"n": io._n_out(inst.n), "tiles": io.tiles_to_json(inst.tileset), "kind": p.kind.value,
                 "r": [list(x) for x in p.r], "c": [list(x) for x in p.c]})
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = io.instance_from_dict(_load(args.instance))
    cfg = SolverConfig(node_limit=args.node_limit, solution_limit=args.enumerate or 0, enable_fact1=not args.no_fact1)
    if args.enumerate:
        try:
            found = enumerate_solutions(inst, cfg)
        except LimitExceeded as exc:
            print("LIMIT")
            print(str(exc), file=sys.stderr)
            return EXIT_LIMIT
        if not found:
            print("UNSAT")
            return EXIT_UNSAT
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for idx, t in enumerate(found, 1):
            path = out / f"{args.prefix}{idx}.json"
            io.write_json(path, io.tiling_to_dict(t))
            print(path)
        print(f"{len(found)} tiling(s) written", file=sys.stderr)
        return EXIT_OK
    outcome = solve(inst, cfg)
    print(f"{outcome.status.value} after {outcome.nodes} nodes {outcome.reason}".rstrip(), file=sys.stderr)
    if outcome.status is Status.SAT:
        _emit(args, io.tiling_to_dict(outcome.witness))
        return EXIT_OK
    if outcome.status is Status.LIMIT:
        print("LIMIT")
        return EXIT_LIMIT
    print("UNSAT")
    return EXIT_UNSAT


def cmd_reduce(args) -> int:
    g = io.load_gadget(args.gadget)
    a = io.atom_instance_from_dict(_load(args.atoms))
    _emit(args, io.instance_to_dict(reduce_instance(a, g)))
    return EXIT_OK


def cmd_atoms(args) -> int:
    grid, atoms = io.atom_grid_from_dict(_load(args.grid))
    _emit(args, io.atom_instance_to_dict(atom_grid_projections(grid, atoms)))
    return EXIT_OK


def cmd_pushforward(args) -> int:
    g = io.load_gadget(args.gadget)
    grid, atoms = io.atom_grid_from_dict(_load(args.grid))
    if tuple(atoms) != g.atoms:
        raise InputError(f"atom grid uses {list(atoms)}, gadget expects {list(g.atoms)}")
    _emit(args, io.tiling_to_dict(push_forward(grid, g)))
    return EXIT_OK


def cmd_pullback(args) -> int:
    g = io.load_gadget(args.gadget)
    t = io.tiling_from_dict(_load(args.tiling))
    try:
        grid = pull_back(t, g)
    except NotBlockAdmissible as exc:
        print(f"not block-admissible: block {list(exc.block)}: {exc.reason}", file=sys.stderr)
        return EXIT_PULLBACK
    _emit(args, io.atom_grid_to_dict(grid, g.atoms))
    return EXIT_OK


def cmd_verify_gadget(args) -> int:
    g = io.load_gadget(args.gadget, verify=False)
    report = verify_gadget(g, node_limit=args.node_limit)
    print("\n".join(report.lines()))
    return EXIT_OK if report.passed else EXIT_UNSAT


def cmd_discover(args) -> int:
    search = io.search_from_dict(_load(args.search))
    found = discover_gadgets(**search)
    out = Path(args.out_dir)
    passed = 0
    for idx, g in enumerate(found, 1):
        report = verify_gadget(g)
        status = "PASS" if report.passed else "FAIL"
        passed += report.passed
        path = out / f"{g.name}_{idx}.json"
        if report.passed:
            out.mkdir(parents=True, exist_ok=True)
            io.write_json(path, io.gadget_to_dict(g))
            print(path)
        print(f"candidate {idx}: tile {g.tileset[0].sorted_cells()} {status}", file=sys.stderr)
    print(f"{len(found)} candidate(s), {passed} passing verification", file=sys.stderr)
    return EXIT_OK if passed else EXIT_UNSAT


def _tileset_arg(value: str):
    if value in NAMED_TILESETS:
        return NAMED_TILESETS[value]
    data = _load(value)
    return io.tiles_from_json(data["tiles"] if isinstance(data, dict) else data)


def cmd_gen(args) -> int:
    tileset = _tileset_arg(args.tileset)
    inst, witness = random_instance(args.n, tileset, args.seed, args.kind, args.density)
    _emit(args, io.instance_to_dict(inst))
    if args.witness:
        io.write_json(args.witness, io.tiling_to_dict(witness))
    return EXIT_OK


def cmd_render(args) -> int:
    t = _tiling(args.tiling)
    palette = tuple(args.palette.split(",")) if args.palette else None
    spec = RenderSpec(args.format, args.cell_size, palette)
    text = render(t, spec)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tomotile", description="Tiling reconstruction from projections.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("project", cmd_project, "projections of a tiling")
    p.add_argument("tiling")
    p.add_argument("--kind", choices=["center", "cell"], default="center")
    p.add_argument("-o", "--output")

    p = add("convert", cmd_convert, "convert an instance between center and cell projections")
    p.add_argument("instance")
    p.add_argument("--to", choices=["center", "cell"], required=True)
    p.add_argument("-o", "--output")

    p = add("solve", cmd_solve, "reconstruct a tiling from projections")
    p.add_argument("instance")
    p.add_argument("--enumerate", type=int, metavar="N", help="write up to N solutions as files")
    p.add_argument("--node-limit", type=int, default=0)
    p.add_argument("--no-fact1", action="store_true", help="disable the forced-cell preprocessing")
    p.add_argument("--out-dir", default=".", help="directory for --enumerate output")
    p.add_argument("--prefix", default="solution_")
    p.add_argument("-o", "--output")

    p = add("reduce", cmd_reduce, "reduce an atom instance through a gadget")
    p.add_argument("atoms")
    p.add_argument("--gadget", required=True, help="built-in name or gadget file")
    p.add_argument("-o", "--output")

    p = add("atoms", cmd_atoms, "atom projections of an atom grid")
    p.add_argument("grid")
    p.add_argument("-o", "--output")

    p = add("pushforward", cmd_pushforward, "replace each atom of a grid by its block")
    p.add_argument("grid")
    p.add_argument("--gadget", required=True)
    p.add_argument("-o", "--output")

    p = add("pullback", cmd_pullback, "read a block tiling back as an atom grid")
    p.add_argument("tiling")
    p.add_argument("--gadget", required=True)
    p.add_argument("-o", "--output")

    p = add("verify-gadget", cmd_verify_gadget, "check a gadget's closure and independence")
    p.add_argument("gadget")
    p.add_argument("--node-limit", type=int, default=0)

    p = add("discover", cmd_discover, "search tile shapes for a gadget")
    p.add_argument("search")
    p.add_argument("--out-dir", default=".")

    p = add("gen", cmd_gen, "random satisfiable instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tileset", default="dominoes", help=f"{', '.join(NAMED_TILESETS)} or a JSON file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind", choices=["center", "cell"], default="center")
    p.add_argument("--density", type=float, default=0.7)
    p.add_argument("--witness", help="also write the generating tiling here")
    p.add_argument("-o", "--output")

    p = add("render", cmd_render, "draw a tiling")
    p.add_argument("tiling")
    p.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    p.add_argument("--cell-size", type=int, default=24)
    p.add_argument("--palette", help="comma-separated glyphs or colors, one per type")
    p.add_argument("-o", "--output")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, TomoTileError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
