from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import hochster_betti
from symspread import CapExceeded, ConfigurationError, MonomialIdeal, Ring, parse_ideal
from symspread.resolution import (
    SimplicialComplexSnapshot,
    betti_numbers,
    depth_quotient,
    koszul_complex_at,
    lcm_lattice,
    matrix_rank,
    projective_dimension,
    reduced_homology,
)
from symspread.symbolic import symbolic_power

RP2 = "x1*x2*x3, x1*x2*x4, x1*x3*x5, x2*x4*x5, x3*x4*x5, x2*x3*x6, x1*x4*x6, x3*x4*x6, x1*x5*x6, x2*x5*x6"


def polarize(gens):
    """Squarefree ideal with the same Betti numbers: x_i^e becomes x_{i,1}...x_{i,e}."""
    d = len(gens[0])
    tops = [max(g[i] for g in gens) for i in range(d)]
    offsets = np.cumsum([0] + tops[:-1])
    out = []
    for g in gens:
        row = [0] * sum(tops)
        for i, e in enumerate(g):
            for k in range(e):
                row[offsets[i] + k] = 1
        out.append(tuple(row))
    return out, sum(tops)


# -- koszul snapshots ---------------------------------------------------------


def test_koszul_at_regular_sequence_corner(xy):
    snap = koszul_complex_at(parse_ideal("x, y", xy), (1, 1))
    assert snap.faces == ((), (0,), (1,))
    assert reduced_homology(snap) == {0: 1}


def test_koszul_of_principal_ideal(xy):
    snap = koszul_complex_at(parse_ideal("x^2", xy), (2, 0))
    assert snap.faces == ((),)
    assert reduced_homology(snap) == {-1: 1}


def test_koszul_at_one_is_void_and_flagged(xy):
    snap = koszul_complex_at(parse_ideal("x, y", xy), (0, 0))
    assert snap.is_void and not snap.in_lcm_lattice
    assert reduced_homology(snap) == {}


def test_koszul_off_lattice_is_acyclic(xy):
    snap = koszul_complex_at(parse_ideal("x, y", xy), (2, 1))
    assert not snap.in_lcm_lattice
    assert reduced_homology(snap) == {}


def test_snapshot_requires_closure():
    with pytest.raises(ValueError):
        SimplicialComplexSnapshot((0, 1), ((), (0, 1)))


def test_lcm_lattice_of_triangle(triangle):
    lattice = {tuple(r) for r in lcm_lattice(triangle)}
    assert lattice == {(1, 1, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)}


def test_lcm_lattice_cap():
    ring = Ring.of_dim(10)
    gens = [tuple(1 if j in (i, (i + 1) % 10) else 0 for j in range(10)) for i in range(10)]
    with pytest.raises(CapExceeded):
        lcm_lattice(MonomialIdeal(ring, gens), cap=50)


# -- ranks ---------------------------------------------------------------------


@pytest.mark.parametrize("field_char, expected", [(0, 2), (2, 1), (3, 2)])
def test_matrix_rank_depends_on_field(field_char, expected):
    mat = np.array([[1, 1], [1, -1]], dtype=np.int64)
    assert matrix_rank(mat, field_char) == expected


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5))
@settings(max_examples=60)
def test_rational_rank_matches_numpy(rows):
    mat = np.array(rows, dtype=np.int64)
    assert matrix_rank(mat, 0) == np.linalg.matrix_rank(mat.astype(float))


# -- Betti tables --------------------------------------------------------------


@pytest.mark.parametrize("text, betti, pd", [
    ("x, y, z", (1, 3, 3, 1), 3),
    ("x*y, y*z, z*x", (1, 3, 2), 2),
    ("x^2", (1, 1), 1),
])
def test_betti_examples(xyz, text, betti, pd):
    table = betti_numbers(parse_ideal(text, xyz))
    assert table.totals == betti
    assert table.pd == pd == projective_dimension(parse_ideal(text, xyz))


@pytest.mark.parametrize("k", range(1, 6))
def test_regular_sequence_of_variables(k):
    ring = Ring.of_dim(6)
    ideal = MonomialIdeal.prime(ring, tuple(range(k)))
    assert betti_numbers(ideal).totals == tuple(comb(k, i) for i in range(k + 1))


def test_pure_powers_are_a_regular_sequence(xyz):
    table = betti_numbers(parse_ideal("x^2, y^3, z^4", xyz))
    assert table.totals == (1, 3, 3, 1)
    assert table.graded[(3, 9)] == 1


def test_symbolic_square_of_triangle(triangle):
    assert projective_dimension(symbolic_power(triangle, 2)) == 2
    assert betti_numbers(symbolic_power(triangle, 2)).totals == (1, 4, 3)


@pytest.mark.parametrize("text, expected", [("x, y, z", 0), ("x*y, y*z, z*x", 1), ("x", 2)])
def test_depth_examples(xyz, text, expected):
    assert depth_quotient(parse_ideal(text, xyz)) == expected


def test_bad_characteristic_rejected(triangle):
    for p in (4, -1, 1):
        with pytest.raises(ConfigurationError):
            betti_numbers(triangle, p)


def test_projective_plane_depends_on_characteristic():
    ring = Ring.of_dim(6)
    ideal = parse_ideal(RP2, ring)
    assert betti_numbers(ideal, 0).totals == (1, 10, 15, 6)
    assert betti_numbers(ideal, 3).totals == (1, 10, 15, 6)
    assert betti_numbers(ideal, 2).totals == (1, 10, 15, 7, 1)
    assert depth_quotient(ideal, 0) == 3 and depth_quotient(ideal, 2) == 2
    assert hochster_betti(ideal.gens, 6, 2) == (1, 10, 15, 7, 1)


def test_json_fields(triangle):
    data = betti_numbers(triangle).to_json(triangle.ring)
    assert data["betti"] == [1, 3, 2] and data["pd"] == 2 and data["depth"] == 1
    assert {"i": 2, "multidegree": "x*y*z", "rank": 2} in data["multigraded"]
    assert data["field_char"] == 0


squarefree = st.integers(2, 5).flatmap(
    lambda d: st.lists(st.lists(st.integers(0, 1), min_size=d, max_size=d).filter(any), min_size=1, max_size=6)
    .map(lambda g: MonomialIdeal(Ring.of_dim(d), [tuple(r) for r in g])))


@given(squarefree, st.sampled_from([0, 2]))
@settings(max_examples=60, deadline=None)
def test_matches_hochster(ideal, p):
    assert betti_numbers(ideal, p).totals == hochster_betti(ideal.gens, ideal.dim, p)


monomial = st.integers(2, 3).flatmap(
    lambda d: st.lists(st.tuples(*[st.integers(0, 2)] * d).filter(any), min_size=1, max_size=4)
    .map(lambda g: MonomialIdeal(Ring.of_dim(d), g)))


@given(monomial)
@settings(max_examples=40, deadline=None)
def test_matches_polarization(ideal):
    gens, width = polarize(ideal.gens)
    assert betti_numbers(ideal).totals == hochster_betti(gens, width)


@given(monomial)
@settings(max_examples=40, deadline=None)
def test_table_sanity(ideal):
    table = betti_numbers(ideal)
    assert table.totals[0] == 1 and table.totals[1] == ideal.mu
    assert table.pd <= min(ideal.dim, ideal.mu)
    assert table.pd + table.depth == ideal.dim
    assert sum((-1) ** i * v for i, v in enumerate(table.totals)) == 0
