import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circolor.chromatic import (
    arc_inequality_check,
    chi_c_exact,
    corollary2_color,
    corollary3_kd_color,
    corollary4_check,
    cycle_bound_check,
    decide_r,
    extract_breaker,
    kd_coloring_from_circular,
)
from circolor.coloring import CircularColoring, circular_distance, unit_gap_check, verify_coloring
from circolor.cycles import (
    INF,
    cycle_breaks,
    cycle_cost,
    danger_filter,
    enumerate_dicycles,
    max_ratio_exhaustive,
    mod_r,
    tau,
    undirected_cycles,
)
from circolor.errors import CapExceeded, InputError
from circolor.graph import Breaker, WeightedSymmetricDigraph, breaker_from_orientation, derive_symmetric, max_pair_weight

from _instances import (
    C5,
    C5_CYCLIC,
    C5_SPLIT,
    TRIANGLE,
    digraphs,
    positive_rationals,
    unit_complete,
    unit_cycle,
    unit_graphs,
)

C5_PHI = CircularColoring(Fraction(5, 2), {1: 0, 2: 1, 3: 2, 4: Fraction(1, 2), 5: Fraction(3, 2)})


def brute_min_max(g):
    """min over all breakers of max over all dicycles, with plain loops."""
    cycles = list(enumerate_dicycles(g))
    best = None
    for bits in itertools.product((0, 1), repeat=len(g.edge_pairs)):
        t = Breaker.from_bits(g, bits)
        worst = max(
            INF if cycle_breaks(c, t) == 0 else Fraction(cycle_cost(c, g), cycle_breaks(c, t)) for c in cycles
        )
        if best is None or worst < best:
            best = worst
    return best


def test_circular_distance_examples():
    assert circular_distance(5, 1, 3) == 2
    assert circular_distance(5, 3, 1) == 3
    assert circular_distance(Fraction(7, 3), Fraction(1, 3), Fraction(1, 3)) == 0
    assert circular_distance(Fraction(5, 2), 2, Fraction(1, 2)) == 1
    with pytest.raises(InputError):
        circular_distance(2, 0, 2)


@given(positive_rationals, st.fractions(0, 1), st.fractions(0, 1))
def test_circular_distance_complement(p, a, b):
    x, y = mod_r(a * p, p), mod_r(b * p, p)
    if x == y:
        assert circular_distance(p, x, y) == 0
    else:
        assert circular_distance(p, x, y) + circular_distance(p, y, x) == p


def test_verify_c5():
    assert verify_coloring(C5, C5_PHI).valid


def test_verify_triangle_invalid():
    phi = CircularColoring(Fraction(29, 10), {1: 0, 2: 1, 3: 2})
    rep = verify_coloring(TRIANGLE, phi)
    assert not rep.valid
    assert [(v.arc, v.actual) for v in rep.violations] == [((3, 1), Fraction(9, 10))]


def test_verify_equal_adjacent_colors():
    phi = CircularColoring(Fraction(5), {1: 1, 2: 1, 3: 3})
    assert not verify_coloring(TRIANGLE, phi).valid


def test_coloring_range_checked():
    with pytest.raises(InputError):
        CircularColoring(Fraction(3), {1: 3})
    with pytest.raises(InputError):
        verify_coloring(TRIANGLE, CircularColoring(Fraction(3), {1: 0, 2: 1}))


@settings(max_examples=80, deadline=None)
@given(unit_graphs(max_n=5), st.integers(4, 20), st.integers(1, 5), st.randoms(use_true_random=False))
def test_unit_gap_equivalence(g, num, den, rnd):
    r = Fraction(num, den)
    if r < 1:
        return
    phi = CircularColoring(r, {v: mod_r(Fraction(rnd.randint(0, 60), 6), r) for v in g.vertices})
    assert verify_coloring(g, phi).valid == unit_gap_check(g, phi)


def test_extract_breaker_triangle():
    phi = CircularColoring(Fraction(3), {1: 0, 2: 1, 3: 2})
    t = extract_breaker(TRIANGLE, phi)
    assert t.forward_arcs == ((2, 1), (3, 1), (3, 2))
    ratios = {c.vertices: Fraction(cycle_cost(c, TRIANGLE), cycle_breaks(c, t)) for c in enumerate_dicycles(TRIANGLE)}
    assert ratios[(1, 2, 3)] == 3 and ratios[(1, 3, 2)] == Fraction(3, 2)
    assert max_ratio_exhaustive(TRIANGLE, t).value == 3


def test_arc_inequality_triangle():
    phi = CircularColoring(Fraction(3), {1: 0, 2: 1, 3: 2})
    t = extract_breaker(TRIANGLE, phi)
    # Arc 1->2: 0 + 1 <= 1 + 0; arc 3->1: 2 + 1 <= 0 + 3.
    assert phi[1] + 1 <= phi[2] + 3 * t[(1, 2)]
    assert phi[3] + 1 <= phi[1] + 3 * t[(3, 1)]
    assert arc_inequality_check(TRIANGLE, phi, t) == ()
    assert cycle_bound_check(TRIANGLE, 3, t, enumerate_dicycles(TRIANGLE)) == ()


def test_extract_breaker_rejects_invalid():
    with pytest.raises(InputError):
        extract_breaker(TRIANGLE, CircularColoring(Fraction(29, 10), {1: 0, 2: 1, 3: 2}))


def test_chi_single_pair():
    g = WeightedSymmetricDigraph.from_pairs(2, [(1, 2, Fraction(3, 2), Fraction(1, 2))])
    res = chi_c_exact(g)
    assert res.value == 2
    assert res.cycle.vertices == (1, 2)


@pytest.mark.parametrize("g, expected", [(C5, Fraction(5, 2)), (unit_complete(4), 4)])
def test_chi_examples_match_brute_min_max(g, expected):
    assert brute_min_max(g) == expected
    res = chi_c_exact(g)
    assert res.value == expected
    assert max_ratio_exhaustive(g, res.breaker).value == expected
    c = res.cycle
    assert Fraction(cycle_cost(c, g), cycle_breaks(c, res.breaker)) == expected


def test_chi_tie_break_is_lexicographic():
    res = chi_c_exact(C5)
    cycles = list(enumerate_dicycles(C5))
    for bits in itertools.product((0, 1), repeat=5):
        if bits == res.breaker.bits():
            break
        assert max_ratio_exhaustive(C5, Breaker.from_bits(C5, bits), cycles=cycles).value > res.value


def test_chi_arcless_degenerate():
    res = chi_c_exact(derive_symmetric([], 3))
    assert res.degenerate and res.value == 0


def test_chi_breaker_cap():
    with pytest.raises(CapExceeded):
        chi_c_exact(unit_complete(5), max_breakers=512)


@settings(max_examples=40, deadline=None)
@given(digraphs(max_n=5, max_pairs=6))
def test_chi_matches_brute_min_max(g):
    assert chi_c_exact(g).value == brute_min_max(g)


@settings(max_examples=25, deadline=None)
@given(digraphs(max_n=5, max_pairs=6), st.sampled_from([Fraction(1, 2), Fraction(3), Fraction(7, 5)]))
def test_chi_rescaling(g, alpha):
    assert chi_c_exact(g.scaled(alpha)).value == alpha * chi_c_exact(g).value


def test_decide_c5_feasible():
    d = decide_r(C5, Fraction(5, 2))
    assert d.feasible and d.reason == "filter empty"
    assert verify_coloring(C5, d.coloring).valid
    assert d.breakers_checked == 1


def test_decide_c5_infeasible():
    r = Fraction(12, 5)
    d = decide_r(C5, r)
    assert not d.feasible
    assert d.evidence_total == 32 and len(d.evidence) == 32
    seen = set()
    for t, res in d.evidence:
        seen.add(t.bits())
        assert len(res.witness) == 5
        assert danger_filter(C5, r)(res.witness)
        b = cycle_breaks(res.witness, t)
        assert res.value > r
        assert res.value == (INF if b == 0 else Fraction(5, b))
    assert len(seen) == 32


def test_decide_below_L():
    for g in (C5, WeightedSymmetricDigraph.from_pairs(2, [(1, 2, Fraction(3, 2), Fraction(1, 2))])):
        d = decide_r(g, max_pair_weight(g) - Fraction(1, 10))
        assert not d.feasible and d.reason == "r below L"


def test_decide_evidence_cap():
    d = decide_r(C5, Fraction(12, 5), max_evidence=3)
    assert len(d.evidence) == 3 and d.evidence_total == 32


def test_decide_arcless():
    d = decide_r(derive_symmetric([], 2), Fraction(1, 2))
    assert d.feasible


def _candidate_ratios(g):
    cycles = list(enumerate_dicycles(g))
    return sorted({Fraction(cycle_cost(c, g), b) for c in cycles for b in range(1, len(c) + 1)})


@settings(max_examples=25, deadline=None)
@given(digraphs(max_n=5, max_pairs=6))
def test_min_max_consistency(g):
    chi = chi_c_exact(g).value
    candidates = [q for q in _candidate_ratios(g) if q >= max_pair_weight(g)]
    assert chi in candidates
    feasible = [q for q in candidates if decide_r(g, q).feasible]
    assert feasible[0] == chi
    # Everything at or above the value is feasible; anything below is not.
    assert all((q >= chi) == decide_r(g, q).feasible for q in candidates)


@settings(max_examples=25, deadline=None)
@given(digraphs(max_n=5, max_pairs=6), positive_rationals, st.fractions(0, 3, max_denominator=7))
def test_monotonicity(g, r, bump):
    if decide_r(g, r).feasible:
        assert decide_r(g, r + bump).feasible


@settings(max_examples=60, deadline=None)
@given(digraphs(max_n=5, max_pairs=7), st.integers(0, 40))
def test_only_if_soundness(g, extra):
    r = chi_c_exact(g).value + Fraction(extra, 7)
    d = decide_r(g, r)
    assert d.feasible
    t = extract_breaker(g, d.coloring)
    assert arc_inequality_check(g, d.coloring, t) == ()
    assert cycle_bound_check(g, r, t, enumerate_dicycles(g)) == ()


def test_corollary2_c5():
    res = corollary2_color(C5, C5_SPLIT, Fraction(5, 2))
    assert res.ok
    assert verify_coloring(C5, res.coloring).valid


def test_corollary2_c4_any_orientation():
    c4 = unit_cycle(4)
    for bits in itertools.product((0, 1), repeat=4):
        orientation = [(u, v) if b else (v, u) for (u, v), b in zip(c4.edge_pairs, bits)]
        res = corollary2_color(c4, orientation, 2)
        assert res.ok and verify_coloring(c4, res.coloring).valid


def test_corollary2_c5_cyclic_fails():
    res = corollary2_color(C5, C5_CYCLIC, Fraction(12, 5))
    assert not res.ok
    assert res.witness == (1, 2, 3, 4, 5)
    assert res.witness_residue == Fraction(1, 5)
    assert res.witness_tau == INF


def test_corollary2_small_r():
    res = corollary2_color(C5, C5_SPLIT, Fraction(19, 10))
    assert not res.ok and res.reason == "r below 2"


def test_corollary2_needs_unit_weights():
    g = WeightedSymmetricDigraph.from_pairs(2, [(1, 2, 2, 1)])
    with pytest.raises(InputError):
        corollary2_color(g, [(1, 2)], 3)


@settings(max_examples=40, deadline=None)
@given(unit_graphs(max_n=6), st.integers(2, 9), st.integers(1, 4), st.randoms(use_true_random=False))
def test_corollary2_soundness(g, k, d, rnd):
    if k < 2 * d:
        return
    orientation = [(u, v) if rnd.random() < 0.5 else (v, u) for u, v in g.edge_pairs]
    res = corollary2_color(g, orientation, Fraction(k, d))
    if res.ok:
        assert verify_coloring(g, res.coloring).valid
    else:
        assert 0 < res.witness_residue < 2 and res.witness_tau > Fraction(k, d)


def test_kd_from_circular_c5():
    assert kd_coloring_from_circular(C5, C5_PHI, 5, 2) == {1: 0, 2: 2, 3: 4, 4: 1, 5: 3}


def test_kd_from_circular_triangle():
    phi = CircularColoring(Fraction(3), {1: 0, 2: 1, 3: 2})
    assert kd_coloring_from_circular(TRIANGLE, phi, 3, 1) == {1: 0, 2: 1, 3: 2}


def test_kd_from_circular_edgeless_collapses():
    g = derive_symmetric([], 3)
    phi = CircularColoring(Fraction(2), {1: 0, 2: Fraction(1, 3), 3: Fraction(9, 10)})
    assert set(kd_coloring_from_circular(g, phi, 2, 1).values()) == {0}


def test_kd_from_circular_errors():
    with pytest.raises(InputError):
        kd_coloring_from_circular(C5, C5_PHI, 10, 3)
    with pytest.raises(InputError):
        kd_coloring_from_circular(C5, C5_PHI, 3, 2)


def test_corollary3_c5():
    res, kd = corollary3_kd_color(C5, C5_SPLIT, 5, 2)
    assert res.ok and kd is not None
    assert all(2 <= abs(kd[u] - kd[v]) <= 3 for u, v in C5.edge_pairs)
    res, kd = corollary3_kd_color(C5, C5_CYCLIC, 12, 5)
    assert not res.ok and kd is None


@given(st.integers(3, 30), st.integers(1, 6), st.integers(1, 6))
def test_corollary3_window_matches_rational_window(length, d, extra):
    k = 2 * d + extra
    assert (1 <= (d * length) % k <= 2 * d - 1) == (0 < mod_r(length, Fraction(k, d)) < 2)


def test_corollary4_examples():
    c4 = unit_cycle(4)
    res = corollary4_check(c4, 2)
    assert res.ok and verify_coloring(c4, res.coloring).valid
    assert set(res.coloring.colors.values()) == {0, 1}
    assert corollary4_check(C5, Fraction(5, 2)).ok
    res = corollary4_check(C5, Fraction(12, 5))
    assert not res.ok and res.witness == (1, 2, 3, 4, 5) and res.witness_residue == Fraction(1, 5)


def test_corollary4_small_r():
    with pytest.raises(InputError):
        corollary4_check(C5, Fraction(3, 2))


@settings(max_examples=40, deadline=None)
@given(unit_graphs(max_n=6), st.integers(2, 12), st.integers(1, 4))
def test_corollary4_soundness(g, num, den):
    r = Fraction(num, den)
    if r < 2:
        return
    res = corollary4_check(g, r)
    if res.ok:
        assert verify_coloring(g, res.coloring).valid
        assert all(not 0 < mod_r(len(c), r) < 2 for c in undirected_cycles(g))
    else:
        assert 0 < mod_r(len(res.witness), r) < 2
