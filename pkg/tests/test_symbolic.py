import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import prime_power_intersection_brute, symbolic_power_brute, vertex_covers
from symspread import ConfigurationError, MonomialIdeal, Ring, parse_ideal, power, radical
from symspread.decomposition import minimal_primes
from symspread.symbolic import (
    ORDINARY,
    SATURATED,
    SYMBOLIC,
    PowerFlavor,
    saturated_power,
    symbolic_power,
    symbolic_power_from_components,
    symbolic_power_wrt,
    system,
)


def ideals(d=3, max_exp=2, max_gens=4):
    mono = st.tuples(*[st.integers(0, max_exp)] * d).filter(any)
    return st.lists(mono, min_size=1, max_size=max_gens).map(lambda g: MonomialIdeal(Ring.of_dim(d), g))


def xyzw():
    return Ring.from_names("x,y,z,w")


# -- spec examples --------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 6))
def test_embedded_prime_is_dropped(embedded, n):
    expected = MonomialIdeal(embedded.ring, [(n, 0)])
    assert symbolic_power(embedded, n) == expected
    # independent route: localizing at (x) is saturating by y
    assert symbolic_power_wrt(embedded, n, parse_ideal("y", embedded.ring)) == expected


def test_triangle_second_symbolic_power(triangle):
    result = symbolic_power(triangle, 2)
    assert result == parse_ideal("x^2*y^2, y^2*z^2, x^2*z^2, x*y*z", triangle.ring)
    assert result.mu == 4
    brute = prime_power_intersection_brute([{0, 1}, {1, 2}, {0, 2}], 3, 2)
    assert sorted(result.gens) == brute


def test_disjoint_product_has_no_extra_elements():
    ideal = parse_ideal("x*z, x*w, y*z, y*w", xyzw())
    assert symbolic_power(ideal, 2) == power(ideal, 2)


def test_zero_exponent_gives_unit(triangle):
    assert symbolic_power(triangle, 0).is_unit
    assert system(triangle, SATURATED, 0).is_unit


def test_wrt_examples(embedded, xyz):
    assert symbolic_power_wrt(embedded, 2, MonomialIdeal.maximal(embedded.ring)) == parse_ideal("x^2", embedded.ring)
    with pytest.raises(ConfigurationError):
        symbolic_power_wrt(embedded, 2, MonomialIdeal.unit_ideal(embedded.ring))
    with pytest.raises(ConfigurationError):
        PowerFlavor("wrt-J", MonomialIdeal.unit_ideal(embedded.ring))
    # J ⊇ I saturates everything away
    assert symbolic_power_wrt(embedded, 2, parse_ideal("x", embedded.ring)).is_unit
    prime = parse_ideal("x, y", xyz)
    for n in range(1, 4):
        assert symbolic_power_wrt(prime, n, parse_ideal("z", xyz)) == power(prime, n)


def test_saturated_examples(xy, xyz, triangle):
    assert saturated_power(parse_ideal("x^2, y^2", xy), 1).is_unit
    for n in range(1, 4):
        assert saturated_power(parse_ideal("x", xyz), n) == parse_ideal(f"x^{n}", xyz)
    assert saturated_power(triangle, 2) == symbolic_power(triangle, 2)


def test_system_dispatch(triangle, embedded):
    assert system(triangle, ORDINARY, 3) == power(triangle, 3)
    assert system(embedded, SYMBOLIC, 1) == parse_ideal("x", embedded.ring)
    assert system(embedded, PowerFlavor("wrt-J", parse_ideal("y", embedded.ring)), 2) == parse_ideal("x^2", embedded.ring)


def test_flavor_validation(triangle):
    with pytest.raises(ConfigurationError):
        PowerFlavor("wrt-J")
    with pytest.raises(ConfigurationError):
        PowerFlavor("symbolic", triangle)
    with pytest.raises(ConfigurationError):
        PowerFlavor("frobenius")


def test_improper_input_rejected(xyz):
    with pytest.raises(ValueError):
        symbolic_power(MonomialIdeal.zero(xyz), 2)
    with pytest.raises(ValueError):
        symbolic_power(MonomialIdeal.unit_ideal(xyz), 2)


def test_maximal_ideal_symbolic_equals_ordinary(xyz):
    ideal = parse_ideal("x^2, y^3, z, x*y", xyz)
    for n in range(1, 4):
        assert symbolic_power(ideal, n) == power(ideal, n)


# -- routes against each other and against brute force -------------------------


@given(ideals(d=3, max_exp=2, max_gens=4), st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_routes_agree(ideal, n):
    a = symbolic_power(ideal, n)
    assert a == symbolic_power(ideal, n, method="direct")
    assert a == symbolic_power_from_components(ideal, n)


@given(ideals(d=3, max_exp=2, max_gens=3), st.integers(1, 2))
@settings(max_examples=25, deadline=None)
def test_matches_box_enumeration(ideal, n):
    assert sorted(symbolic_power(ideal, n).gens) == symbolic_power_brute(ideal.gens, ideal.dim, n)


@given(st.integers(2, 5), st.data())
@settings(max_examples=30, deadline=None)
def test_squarefree_fast_path(d, data):
    gens = data.draw(st.lists(st.lists(st.integers(0, 1), min_size=d, max_size=d).filter(lambda r: sum(r) >= 2),
                              min_size=1, max_size=5))
    ideal = MonomialIdeal(Ring.of_dim(d), [tuple(g) for g in gens])
    n = data.draw(st.integers(1, 3))
    covers = vertex_covers(ideal.gens, d)
    assert sorted(symbolic_power(ideal, n).gens) == prime_power_intersection_brute(covers, d, n)
    assert symbolic_power(ideal, n) == symbolic_power(ideal, n, method="direct")


def test_large_squarefree_power_matches_direct_route():
    ring = Ring.of_dim(5)
    ideal = parse_ideal("x1*x2*x3, x2*x4, x3*x4*x5, x1*x5", ring)
    for n in (2, 5):
        assert symbolic_power(ideal, n) == symbolic_power(ideal, n, method="direct")


# -- structural properties -----------------------------------------------------


@given(ideals(d=3, max_exp=2, max_gens=3), st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_containment_chain(ideal, n):
    ordinary, symb = power(ideal, n), symbolic_power(ideal, n)
    assert ordinary <= symb
    if MonomialIdeal.maximal(ideal.ring) not in {p.ideal(ideal.ring) for p in minimal_primes(ideal)}:
        # saturating by m keeps every non-maximal embedded component, so the
        # inclusion runs this way round
        assert saturated_power(ideal, n) <= symb
    j = parse_ideal("x1*x2", ideal.ring)
    assert ordinary <= symbolic_power_wrt(ideal, n, j)


def test_saturation_can_miss_embedded_components():
    ring = Ring.of_dim(3)
    ideal = parse_ideal("x2*x3, x3^2", ring)
    assert symbolic_power(ideal, 1) == parse_ideal("x3", ring)
    assert saturated_power(ideal, 1) == ideal


@given(ideals(d=3, max_exp=2, max_gens=3), st.integers(1, 2), st.integers(1, 2))
@settings(max_examples=30, deadline=None)
def test_semigroup(ideal, a, b):
    assert symbolic_power(ideal, a) * symbolic_power(ideal, b) <= symbolic_power(ideal, a + b)


@given(ideals(d=3, max_exp=3, max_gens=4), st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_radical_preserved(ideal, n):
    assert radical(symbolic_power(ideal, n)) == radical(ideal)


@given(ideals(d=4, max_exp=1, max_gens=5))
@settings(max_examples=40, deadline=None)
def test_squarefree_first_power_is_itself(ideal):
    assert symbolic_power(ideal, 1) == ideal
