import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tomotile.core import CELL, Placement, Tiling, center_projections
from tomotile.derivations import dominoes3
from tomotile.errors import UnverifiedGadget
from tomotile.gadgets import Gadget
from tomotile.io import BUILTIN_GADGETS
from tomotile.rational import rank, solve_combination
from tomotile.reduce import (
    NEGATIVE_INSTANCE,
    AtomInstance,
    NotBlockAdmissible,
    atom_grid_from_tiling,
    atom_grid_projections,
    atom_grid_to_tiling,
    block_line,
    decode_block_row,
    pull_back,
    push_forward,
    reduce_instance,
)
from tomotile.solver import check, enumerate_solutions, solve


# rational helpers


def test_rank_and_solve():
    assert rank([[1, 0], [0, 1], [1, 1]]) == 2
    assert rank([]) == 0
    assert solve_combination([[1, 0], [0, 1]], [3, 4]) == [3, 4]
    assert solve_combination([[2, 0], [0, 2]], [1, 1]) == [Fraction(1, 2)] * 2
    assert solve_combination([[1, 0], [2, 0]], [1, 1]) is None
    assert solve_combination([[1, 0], [2, 0]], [2, 0]) == "ambiguous"


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=4),
       st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_combination_against_sympy(vectors, q):
    sympy = pytest.importorskip("sympy")
    target = [sum(a * v[i] for a, v in zip(q, vectors)) for i in range(4)]
    m = sympy.Matrix(vectors).T
    assert rank(vectors) == m.rank()
    got = solve_combination(vectors, target)
    if m.rank() == len(vectors):
        assert got == [Fraction(x) for x in q[: len(vectors)]]
    else:
        assert got == "ambiguous"


# reduce_instance


def test_shape7_reduction_example(gadgets):
    g = gadgets["shape7"]
    a = AtomInstance(2, [[1, 1, 0, 0], [0, 0, 0, 2]], [[1, 0, 0, 1], [0, 1, 0, 1]])
    inst = reduce_instance(a, g)
    assert inst.shape == (14, 14)
    assert [row[0] for row in block_line(inst, 0, 7)] == [3, 1, 0, 2, 0, 0, 0]
    assert decode_block_row(block_line(inst, 0, 7), g, 2).q == (1, 1, 0, 0)


def test_all_clear_row_is_n_times_clear_block(gadgets):
    g = gadgets["shape7"]
    n = 3
    r = [[0, 0, 0, n]] * n
    inst = reduce_instance(AtomInstance(n, r, r), g)
    assert [x[0] for x in block_line(inst, 1, 7)] == [n, 0, 0, 2 * n, 0, 0, 0]


def test_unbalanced_gives_negative_instance(gadgets):
    a = AtomInstance(2, [[2, 0, 0, 0], [0, 0, 0, 2]], [[1, 0, 0, 1], [0, 0, 0, 2]])
    assert reduce_instance(a, gadgets["dominoes3"]) is NEGATIVE_INSTANCE
    assert not solve(NEGATIVE_INSTANCE).satisfiable


def test_unverified_gadget_is_refused():
    g = dominoes3()
    wrong = Gadget("wrong", 3, g.tileset, g.admissible[:1], {"yellow": (0,)}, ("yellow",), closure=g.closure)
    a = AtomInstance(1, [[1]], [[1]], ("yellow",))
    with pytest.raises(UnverifiedGadget):
        reduce_instance(a, wrong)
    with pytest.raises(UnverifiedGadget):
        decode_block_row([0] * 6, wrong, 1)


def test_non_standard_instances_are_flagged(gadgets):
    a = AtomInstance(2, [[1, 0, 0, 0], [0, 0, 0, 2]], [[1, 0, 0, 0], [0, 0, 0, 2]])
    assert not a.standard
    assert reduce_instance(a, gadgets["dominoes3"]).shape == (6, 6)


# decoding


def test_decode_examples(gadgets):
    g = gadgets["shape7"]
    n = 4
    e1 = [2, 0, 0, 1, 0, 0, 0]
    assert decode_block_row([n * x for x in e1], g, n).q == (n, 0, 0, 0)
    b = [3, 1, 0, 2, 0, 0, 0]
    b[5] += 1
    assert decode_block_row(b, g, 2).status == "no_solution"


@pytest.mark.parametrize("name", BUILTIN_GADGETS)
def test_decode_matches_reduction(gadgets, name):
    g = gadgets[name]
    rng = random.Random(name)
    k = len(g.atoms)
    for _ in range(20):
        n = rng.randint(1, 4)
        grid = [[rng.randrange(k) for _ in range(n)] for _ in range(n)]
        a = atom_grid_projections(grid, g.atoms)
        inst = reduce_instance(a, g)
        for i in range(n):
            assert decode_block_row(block_line(inst, i, g.d, 0), g, n, axis=0).q == a.r[i]
            assert decode_block_row(block_line(inst, i, g.d, 1), g, n, axis=1).q == a.c[i]


# push forward / pull back


@pytest.mark.parametrize("name", BUILTIN_GADGETS)
def test_push_forward_is_sound_and_pulls_back(gadgets, name):
    g = gadgets[name]
    rng = random.Random(name)
    for n in (1, 2, 3):
        for _ in range(5):
            grid = tuple(tuple(rng.randrange(len(g.atoms)) for _ in range(n)) for _ in range(n))
            t = push_forward(grid, g)
            assert check(reduce_instance(atom_grid_projections(grid, g.atoms), g), t)
            assert pull_back(t, g) == grid


def test_single_clear_block(gadgets):
    g = gadgets["dominoes3"]
    assert push_forward([[3]], g).placements == g.representative("clear").placements
    t = push_forward([[3, 3], [3, 3]], g)
    assert len(t.placements) == 4


def test_straddling_tile_is_not_block_admissible(gadgets):
    g = gadgets["dominoes3"]
    t = Tiling(6, g.tileset, {Placement(0, 2, 0)})
    with pytest.raises(NotBlockAdmissible) as exc:
        pull_back(t, g)
    assert exc.value.block == (0, 0)


def test_bad_block_is_not_admissible(gadgets):
    g = gadgets["twosquares4"]
    good = push_forward([[0, 1], [2, 3]], g)
    bad = Tiling(8, g.tileset, (good.placements - {p for p in good.placements if p.row >= 4 and p.col >= 4})
                 | {Placement(p.row + 4, p.col + 4, p.k) for p in g.bad[0].placements})
    with pytest.raises(NotBlockAdmissible) as exc:
        pull_back(bad, g)
    assert exc.value.block == (1, 1)


def test_atom_grid_tiling_round_trip():
    grid = ((0, 1), (3, 2))
    t = atom_grid_to_tiling(grid, ("y", "b", "r", "c"))
    assert atom_grid_from_tiling(t) == grid
    with pytest.raises(ValueError):
        atom_grid_from_tiling(Tiling(2, (CELL,) * 4, {Placement(0, 0, 0)}))


def test_atom_instance_matches_cell_instance():
    grid = ((0, 1), (3, 2))
    a = atom_grid_projections(grid, ("y", "b", "r", "c"))
    assert a.to_instance().projections == center_projections(atom_grid_to_tiling(grid, a.atoms))
    assert a.standard and a.totals() == {"y": 1, "b": 1, "r": 1, "c": 1}


def test_every_reduced_solution_pulls_back_small(gadgets):
    """All 2x2 atom grids through the dominoes gadget, every solution."""
    g = gadgets["dominoes3"]
    seen = set()
    for cells in itertools.product(range(4), repeat=4):
        grid = (cells[:2], cells[2:])
        a = atom_grid_projections(grid, g.atoms)
        if a in seen:
            continue
        seen.add(a)
        sols = enumerate_solutions(reduce_instance(a, g))
        assert sols
        for s in sols:
            assert atom_grid_projections(pull_back(s, g), g.atoms) == a


def test_multi_tile_atoms_use_first_tiling(gadgets):
    g = gadgets["lshape6"]
    t = push_forward([[3]], g)
    assert t.placements == g.admissible[g.atom_map["clear"][0]].placements
    other = Tiling(6, g.tileset, g.admissible[g.atom_map["clear"][1]].placements)
    assert pull_back(other, g) == ((3,),)


@pytest.mark.parametrize("name", BUILTIN_GADGETS)
def test_reduced_solutions_pull_back_for_every_gadget(gadgets, name):
    """Every solution of a reduced 2x2 instance consists of admissible blocks."""
    g = gadgets[name]
    rng = random.Random(name)
    for _ in range(6):
        grid = [[rng.randrange(len(g.atoms)) for _ in range(2)] for _ in range(2)]
        a = atom_grid_projections(grid, g.atoms)
        sols = enumerate_solutions(reduce_instance(a, g))
        assert sols
        for s in sols:
            assert atom_grid_projections(pull_back(s, g), g.atoms) == a
