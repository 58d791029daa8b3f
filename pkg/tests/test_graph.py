from fractions import Fraction

import pytest
from hypothesis import given

from circolor.errors import InputError, UndefinedBoundError
from circolor.graph import (
    Breaker,
    Dicycle,
    WeightedSymmetricDigraph,
    breaker_complement,
    breaker_from_orientation,
    derive_symmetric,
    max_pair_weight,
    parse_rational,
)
from circolor.cycles import cycle_breaks, enumerate_dicycles

from _instances import C5, TRIANGLE, graphs_with_breaker, unit_graphs


def test_derive_triangle():
    assert len(TRIANGLE.arcs) == 6
    assert set(TRIANGLE.weights.values()) == {1}


def test_derive_empty():
    g = derive_symmetric([], 4)
    assert g.arcs == ()
    assert len(g.components()) == 4


def test_derive_path():
    g = derive_symmetric([(1, 2), (2, 3)], 3)
    assert sorted(g.arcs) == [(1, 2), (2, 1), (2, 3), (3, 2)]
    assert all(c == 1 for c in g.weights.values())


@pytest.mark.parametrize("edges", [[(1, 1)], [(1, 2), (2, 1)], [(1, 2), (1, 2)]])
def test_derive_rejects_loops_and_duplicates(edges):
    with pytest.raises(InputError):
        derive_symmetric(edges, 3)


@pytest.mark.parametrize(
    "weights",
    [{(1, 2): 0, (2, 1): 1}, {(1, 2): Fraction(-1), (2, 1): 1}, {(1, 2): 1}, {(1, 3): 1, (3, 1): 1}],
)
def test_digraph_invariants(weights):
    with pytest.raises(InputError):
        WeightedSymmetricDigraph(2, weights)


def test_parse_rational():
    assert parse_rational("2.5") == Fraction(5, 2)
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational(" 7 ") == 7
    for bad in ("", "x", "1/0", "inf", 2.5):
        with pytest.raises(InputError):
            parse_rational(bad)


def test_max_pair_weight():
    assert max_pair_weight(TRIANGLE) == 2
    g = WeightedSymmetricDigraph.from_pairs(2, [(1, 2, Fraction(3, 2), Fraction(1, 2))])
    assert max_pair_weight(g) == 2
    g = WeightedSymmetricDigraph.from_pairs(
        4, [(1, 2, 1, 1), (2, 3, Fraction(4, 3), 1), (3, 4, 2, Fraction(1, 2))]
    )
    assert max_pair_weight(g) == Fraction(5, 2)


def test_max_pair_weight_arcless():
    with pytest.raises(UndefinedBoundError, match="L undefined"):
        max_pair_weight(derive_symmetric([], 3))


def test_breaker_from_orientation_triangle():
    t = breaker_from_orientation(TRIANGLE, [(1, 2), (2, 3), (1, 3)])
    assert t[(1, 2)] == t[(2, 3)] == t[(1, 3)] == 1
    assert t[(2, 1)] == t[(3, 2)] == t[(3, 1)] == 0


def test_breaker_from_orientation_single_edge():
    g = derive_symmetric([(1, 2)], 2)
    t = breaker_from_orientation(g, [(2, 1)])
    assert (t[(2, 1)], t[(1, 2)]) == (1, 0)


def test_complement_orientation_gives_complement_breaker():
    t = breaker_from_orientation(TRIANGLE, [(1, 2), (2, 3), (1, 3)])
    rev = breaker_from_orientation(TRIANGLE, [(2, 1), (3, 2), (3, 1)])
    assert rev == breaker_complement(t)


@pytest.mark.parametrize("orientation", [[(1, 2), (2, 3)], [(1, 2), (2, 1), (2, 3), (1, 3)], [(1, 2), (2, 3), (1, 4)]])
def test_orientation_domain_mismatch(orientation):
    with pytest.raises(InputError):
        breaker_from_orientation(TRIANGLE, orientation)


def test_breaker_invariant_enforced():
    with pytest.raises(InputError):
        Breaker({(1, 2): 1, (2, 1): 1})
    with pytest.raises(InputError):
        Breaker({(1, 2): 1})


def test_complement_on_path():
    g = derive_symmetric([(1, 2), (2, 3)], 3)
    fwd = breaker_from_orientation(g, [(1, 2), (2, 3)])
    assert breaker_complement(fwd).forward_arcs == ((2, 1), (3, 2))


def test_bits_round_trip():
    t = Breaker.from_bits(C5, [1, 0, 1, 1, 0])
    assert t.bits() == (1, 0, 1, 1, 0)
    assert Breaker.from_bits(C5, t.bits()) == t


def test_dicycle_canonical():
    assert Dicycle((3, 1, 2)).vertices == (1, 2, 3)
    assert Dicycle((3, 1, 2)) == Dicycle((1, 2, 3))
    assert Dicycle((1, 2, 3)) != Dicycle((1, 3, 2))
    assert Dicycle((1, 2, 3)).reversed() == Dicycle((1, 3, 2))
    assert str(Dicycle((2, 1))) == "(1,2,1)"
    with pytest.raises(InputError):
        Dicycle((1,))
    with pytest.raises(InputError):
        Dicycle((1, 2, 1))


def test_components():
    g = derive_symmetric([(1, 2), (4, 5)], 5)
    assert g.components() == [(1, 2), (3,), (4, 5)]


@given(graphs_with_breaker())
def test_breaker_pair_sums(case):
    g, t = case
    assert all(t[(u, v)] + t[(v, u)] == 1 for u, v in g.arcs)


@given(graphs_with_breaker())
def test_complement_involution_and_breaks(case):
    g, t = case
    tc = breaker_complement(t)
    assert breaker_complement(tc) == t
    for c in enumerate_dicycles(g):
        assert cycle_breaks(c, t) + cycle_breaks(c, tc) == len(c)


@given(unit_graphs())
def test_derive_round_trip(g):
    again = derive_symmetric([tuple(e) for e in g.underlying_edges()], g.n)
    assert again == g
    assert g.underlying_edges() == {frozenset(p) for p in g.edge_pairs}


@given(unit_graphs())
def test_unit_pair_weight_is_two(g):
    assert max_pair_weight(g) == 2
