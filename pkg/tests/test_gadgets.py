import random

import pytest

from conftest import H, SQ, V
from tomotile.core import CELL, Placement, Tile, Tiling, center_projections, footprint
from tomotile.derivations import DERIVATIONS, SHAPE7_ROWS, dominoes3
from tomotile.errors import InvalidGadget, SearchSpaceTooLarge
from tomotile.gadgets import (
    BlockConstraint,
    Gadget,
    RequiredSignature,
    block_signatures,
    center_residue,
    discover_gadgets,
    enumerate_block_tilings,
    independence_of,
    polyominoes_in_box,
    representative_signatures,
    signature,
    verify_gadget,
    verify_independence,
)
from tomotile.io import BUILTIN_GADGETS, gadget_to_dict
from tomotile.rational import rank
from tomotile.reduce import push_forward

ROW0_COL0 = BlockConstraint(
    region=frozenset({(0, 0), (0, 1), (0, 2), (1, 0), (2, 0)}), covered=frozenset({(0, 0)})
)


# fixtures


@pytest.mark.parametrize("name", BUILTIN_GADGETS)
def test_fixture_passes_verification(gadgets, name):
    report = verify_gadget(gadgets[name])
    assert report.passed, report.lines()


@pytest.mark.parametrize("name", BUILTIN_GADGETS)
def test_fixture_equals_derivation(gadgets, name):
    assert gadget_to_dict(DERIVATIONS[name]()) == gadget_to_dict(gadgets[name])


@pytest.mark.parametrize("name", BUILTIN_GADGETS)
def test_signatures_end_in_one_and_match_projections(gadgets, name):
    g = gadgets[name]
    for t, sig in zip(g.admissible, block_signatures(g)):
        p = center_projections(t)
        assert sig.row_extended[-1] == 1 and sig.col_extended[-1] == 1
        assert sig.row_vector == tuple(x for row in p.r for x in row)
        assert sig.vector == sig.row_vector + sig.col_vector + (1,)


# dominoes


def test_dominoes_constrained_enumeration():
    tilings = enumerate_block_tilings(3, (H, V), ROW0_COL0)
    got = sorted(sorted((p.row, p.col, "HV"[p.k]) for p in t.placements) for t in tilings)
    assert got == sorted([
        [(0, 0, "H")],
        [(0, 0, "H"), (1, 0, "V")],
        [(0, 0, "V")],
        [(0, 0, "V"), (0, 1, "H")],
    ])


def test_dominoes_clear_cell_pattern(gadgets):
    g = gadgets["dominoes3"]
    rows, col0 = {}, {}
    for atom in g.atoms:
        covered = g.representative(atom).covered()
        rows[atom] = sum((i, j) not in covered for i in (1, 2) for j in range(3))
        col0[atom] = sum((i, 0) not in covered for i in range(3))
    # coefficients of 5Y+5B+4R+6C and of Y+B+2C
    assert rows == {"yellow": 5, "blue": 5, "red": 4, "clear": 6}
    assert col0 == {"yellow": 1, "blue": 1, "red": 0, "clear": 2}


def test_dominoes_independence(gadgets):
    ind = verify_independence(gadgets["dominoes3"])
    assert not ind.plain and ind.affine


def test_dominoes_missing_tiling_is_reported():
    g = dominoes3()
    keep = g.admissible[:3]
    broken = Gadget("broken", 3, g.tileset, keep, {"yellow": (0,), "blue": (1,), "red": (2,)},
                    ("yellow", "blue", "red"), closure=g.closure)
    report = verify_gadget(broken)
    assert not report.passed
    assert report.unexpected == [g.admissible[3]]
    dropped = Gadget("broken", 3, g.tileset, g.admissible, g.atom_map, closure=BlockConstraint(
        region=ROW0_COL0.region, covered=ROW0_COL0.covered, count=frozenset({1})))
    report = verify_gadget(dropped)
    assert len(report.missing) == 2
    assert any("missing admissible tiling" in line for line in report.lines())


def test_square_block_without_constraint():
    assert len(enumerate_block_tilings(2, (SQ,))) == 2


def test_identical_signatures_are_dependent():
    t = Tiling(3, (H,), {Placement(0, 0, 0)})
    ind = independence_of([signature(t)] * 4)
    assert not ind.plain and not ind.affine


# the 7x7 gadget


def formula_rows(r, n):
    """Block-row center counts as stated for the 7x7 reduction."""
    y, b, red, c = r
    return (y + n, b, red, c + n, 0, 0, 0)


def test_shape7_vectors_follow_from_formula():
    units = [tuple(int(i == k) for i in range(4)) for k in range(4)]
    e = [formula_rows(u, 1) for u in units]
    assert [v[:4] for v in e] == [(2, 0, 0, 1), (1, 1, 0, 1), (1, 0, 1, 1), (1, 0, 0, 2)]
    assert all(sum(v) == 3 for v in e)
    assert rank(e) == 4
    # linear in r once n is replaced by the row total
    rng = random.Random(0)
    for _ in range(50):
        n = rng.randint(1, 9)
        cuts = sorted(rng.randint(0, n) for _ in range(3))
        r = (cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], n - cuts[2])
        combo = tuple(sum(q * v[i] for q, v in zip(r, e)) for i in range(7))
        assert combo == formula_rows(r, n)
    assert tuple(SHAPE7_ROWS.values()) == tuple(e)


def test_shape7_fixture_signatures(gadgets):
    g = gadgets["shape7"]
    for atom, sig in zip(g.atoms, representative_signatures(g)):
        assert tuple(x for (x,) in sig.rows) == SHAPE7_ROWS[atom]
        assert tuple(x for (x,) in sig.cols) == SHAPE7_ROWS[atom]
    assert verify_independence(g).plain


def test_shape7_tile_fits_its_box_and_has_no_denser_tiling(gadgets):
    g = gadgets["shape7"]
    (tile,) = g.tileset
    assert tile.height <= 4 and tile.width <= 4
    assert enumerate_block_tilings(7, g.tileset, BlockConstraint(count=frozenset({4}))) == []


def test_discover_rejects_impossible_signature():
    rows = ((2,), (1,), (0,), (1,), (0,), (0,), (0,))  # four centers, three tiles
    found = discover_gadgets(7, [RequiredSignature("yellow", rows)], count=[3], bbox=(2, 2), atoms=("yellow",))
    assert found == []


def test_discover_finds_the_dominoes_gadget():
    ref = dominoes3()
    required = [RequiredSignature(a, signature(ref.representative(a)).rows, signature(ref.representative(a)).cols)
                for a in ref.atoms]
    found = discover_gadgets(3, required, count=[1, 2], tilesets=[(H, V), (V, H), (SQ,)], constraint=ROW0_COL0)
    assert len(found) == 1
    assert found[0].admissible == ref.admissible and found[0].atom_map == ref.atom_map
    assert verify_gadget(found[0]).passed


def test_polyomino_box_enumeration():
    shapes = polyominoes_in_box(2, 2)
    assert len(shapes) == 8  # monomino, 2 dominoes, 4 L-trominoes, square
    assert len(polyominoes_in_box(1, 3)) == 3
    with pytest.raises(SearchSpaceTooLarge):
        polyominoes_in_box(5, 5)


# squares


def test_two_squares_bad_tiling(gadgets):
    g = gadgets["twosquares4"]
    assert len(g.bad) == 1
    bad = signature(g.bad[0])
    assert bad.rows == signature(g.representative("yellow")).rows
    assert bad.cols == signature(g.representative("blue")).cols
    assert verify_gadget(g).enumerated == 5


def test_light_squares_cover_row_and_column_one(gadgets):
    g = gadgets["twosquares4"]
    for t in g.admissible:
        owner = t.covered()
        for cell in [(1, j) for j in range(4)] + [(i, 1) for i in range(4)]:
            assert owner[cell].k == 0


def test_cell_replaces_dark_square_without_changing_projections(gadgets):
    two, cs = gadgets["twosquares4"], gadgets["cellsquare4"]
    for atom in two.atoms:
        assert signature(two.representative(atom)) == signature(cs.representative(atom))
    dark = [p for p in two.representative("clear").placements if p.k == 1]
    cell = [p for p in cs.representative("clear").placements if p.k == 1]
    assert [(p.row, p.col) for p in dark] == [(p.row, p.col) for p in cell] == [(2, 2)]


def test_single_square_uses_first_three_blocks(gadgets):
    two, one = gadgets["twosquares4"], gadgets["square4"]
    assert one.atoms == ("yellow", "blue", "clear")
    first_three = [sorted((p.row, p.col) for p in t.placements) for t in two.admissible[:3]]
    assert [sorted((p.row, p.col) for p in t.placements) for t in one.admissible] == first_three
    assert sorted((p.row, p.col) for p in one.bad[0].placements) == sorted((p.row, p.col) for p in two.bad[0].placements)


# the L-shape gadget


def test_lshape_overlap_pattern(gadgets):
    """Centers at (i,j) and (i-1,j-1) overlap, and both meet (i-1,j) or (i,j-1)."""
    ts = gadgets["lshape6"].tileset
    a = footprint(Placement(5, 5, 0), ts)
    b = footprint(Placement(4, 4, 0), ts)
    assert a & b
    for other in (Placement(4, 5, 0), Placement(5, 4, 0)):
        o = footprint(other, ts)
        if o & a and o & b:
            break
    else:
        pytest.fail("no third tile meets both")


def test_lshape_blocks(gadgets):
    g = gadgets["lshape6"]
    for t in g.admissible:
        centers = [(p.row, p.col) for p in t.placements]
        assert sum(r == 4 for r, _ in centers) == 2
        assert all(r <= 4 and c <= 4 for r, c in centers)
        assert sum(r == 3 for r, _ in centers) <= 1
    clear = [signature(g.admissible[i]) for i in g.atom_map["clear"]]
    assert len(clear) == 2 and clear[0] == clear[1]


def test_lshape_residue_matrix_sums(gadgets):
    g = gadgets["lshape6"]
    rng = random.Random(6)
    for n in (1, 2, 3, 4):
        for _ in range(10):
            grid = [[rng.randrange(4) for _ in range(n)] for _ in range(n)]
            Y, B, R, C = (sum(row.count(k) for row in grid) for k in range(4))
            m = center_residue(push_forward(grid, g), 6)
            assert [sum(row) for row in m] == [R, Y + C, n * n + B + R, C, 2 * n * n, 0]
            assert [sum(col) for col in zip(*m)] == [2 * n * n + R, Y + C, n * n + B + R, C, 0, 0]
            assert m[3][0] == m[3][2] == 0 and m[4][0] == n * n


def test_larger_l_does_not_give_five_blocks(gadgets):
    closure = gadgets["lshape6"].closure
    tetromino = Tile(frozenset({(0, 0), (1, 0), (2, 0), (2, 1)}))
    assert len(enumerate_block_tilings(6, (tetromino,), closure)) != 5


# residue and misc


def test_center_residue_examples():
    assert center_residue(Tiling(6, (CELL,)), 6) == [[0] * 6 for _ in range(6)]
    m = center_residue(Tiling(12, (CELL,), {Placement(7, 9, 0)}), 6)
    assert m[1][3] == 1 and sum(map(sum, m)) == 1
    with pytest.raises(ValueError):
        center_residue(Tiling(2, (CELL,)), 0)


@pytest.mark.parametrize("name", BUILTIN_GADGETS)
def test_residue_support_within_admissible_centers(gadgets, name):
    g = gadgets[name]
    support = {(p.row, p.col) for t in g.admissible for p in t.placements}
    rng = random.Random(name)
    grid = [[rng.randrange(len(g.atoms)) for _ in range(3)] for _ in range(3)]
    m = center_residue(push_forward(grid, g), g.d)
    assert {(i, j) for i in range(g.d) for j in range(g.d) if m[i][j]} <= support
    assert sum(map(sum, m)) == len(push_forward(grid, g).placements)


def test_gadget_invariants():
    t = Tiling(3, (H,), {Placement(0, 0, 0)})
    with pytest.raises(InvalidGadget):
        Gadget("x", 3, (H,), (t, t), {"yellow": (0,)}, ("yellow",))
    with pytest.raises(InvalidGadget):
        Gadget("x", 3, (H,), (t,), {"yellow": (0,), "blue": ()}, ("yellow", "blue"))
    with pytest.raises(InvalidGadget):
        verify_gadget(Gadget("x", 3, (H,), (t,), {"yellow": (0,)}, ("yellow",)))


def test_inconsistent_multi_tiling_atom_is_flagged():
    a = Tiling(2, (CELL,), {Placement(0, 0, 0)})
    b = Tiling(2, (CELL,), {Placement(1, 1, 0)})
    g = Gadget("x", 2, (CELL,), (a, b), {"yellow": (0, 1)}, ("yellow",),
               closure=BlockConstraint(count=frozenset({1}), centers=((0, frozenset({(0, 0), (1, 1)})),)))
    assert verify_gadget(g).inconsistent_atoms == ["yellow"]
