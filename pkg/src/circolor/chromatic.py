"""Breaker certificates, exact circular chromatic numbers and r-feasibility.

The circular chromatic number of a weighted symmetric digraph equals
``min_T max_C |C|_c / |C|_T`` (minimum over breakers, maximum over all
dicycles). For feasibility at a fixed ``r >= L`` it suffices to find a
breaker whose maximum, restricted to dicycles with ``0 < |C|_c mod r < L``,
is at most ``r``; the potential construction then produces the colouring.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .coloring import CircularColoring, VerificationReport, circular_distance, verify_coloring
from .cycles import (
    INF,
    MaxRatio,
    RatioValue,
    cycle_breaks,
    cycle_cost,
    enumerate_dicycles,
    mod_r,
    ratio,
    tau,
    undirected_cycles,
)
from .errors import CapExceeded, InputError
from .graph import (
    Arc,
    Breaker,
    Dicycle,
    WeightedSymmetricDigraph,
    breaker_from_orientation,
    max_pair_weight,
    parse_rational,
)
from .potential import Construction, construct_coloring

DEFAULT_MAX_CYCLES = 10**6
DEFAULT_MAX_BREAKERS = 2**20

__all__ = [
    "CircularColoring",
    "VerificationReport",
    "circular_distance",
    "verify_coloring",
    "extract_breaker",
    "arc_inequality_check",
    "cycle_bound_check",
    "ChiResult",
    "chi_c_exact",
    "Decision",
    "decide_r",
    "CorollaryResult",
    "corollary2_color",
    "corollary3_kd_color",
    "kd_coloring_from_circular",
    "corollary4_check",
]


def extract_breaker(g: WeightedSymmetricDigraph, coloring: CircularColoring) -> Breaker:
    """``T(xy) = 1`` iff ``phi(x) > phi(y)``; requires a valid colouring."""
    if not verify_coloring(g, coloring).valid:
        raise InputError("cannot extract a breaker from an invalid colouring")
    return Breaker({(u, v): int(coloring[u] > coloring[v]) for u, v in g.weights})


def arc_inequality_check(
    g: WeightedSymmetricDigraph, coloring: CircularColoring, t: Breaker
) -> tuple[Arc, ...]:
    """Arcs violating ``phi(x) + c_xy <= phi(y) + r*T_xy`` (empty when all hold)."""
    r = coloring.r
    return tuple(
        (u, v) for (u, v), c in g.weights.items() if coloring[u] + c > coloring[v] + r * t[(u, v)]
    )


def cycle_bound_check(
    g: WeightedSymmetricDigraph, r: Fraction, t: Breaker, cycles: Iterable[Dicycle]
) -> tuple[Dicycle, ...]:
    """Dicycles with ``|C|_c > r*|C|_T``; the per-arc inequality summed around a cycle rules these out."""
    return tuple(c for c in cycles if cycle_cost(c, g) > r * cycle_breaks(c, t))


class _CycleTable:
    """Dicycles precompiled to bitmasks so breakers can be scanned as integers.

    A breaker is encoded as an ``m``-bit integer ``k``; edge pair ``i`` (in
    sorted order) contributes bit ``m-1-i`` = ``T(u -> v)`` for ``u < v``, so
    ascending ``k`` is lexicographic order of the bit tuple.
    """

    def __init__(self, g: WeightedSymmetricDigraph, cycles: Sequence[Dicycle]):
        self.g = g
        self.m = len(g.edge_pairs)
        index = {pair: self.m - 1 - i for i, pair in enumerate(g.edge_pairs)}
        self.cycles = list(cycles)
        self.costs = [cycle_cost(c, g) for c in self.cycles]
        self.fmask = []
        self.bmask = []
        for c in self.cycles:
            f = b = 0
            for u, v in c.arcs:
                if u < v:
                    f |= 1 << index[(u, v)]
                else:
                    b |= 1 << index[(v, u)]
            self.fmask.append(f)
            self.bmask.append(b)

    def breaks(self, i: int, k: int) -> int:
        b = self.bmask[i]
        return (k & self.fmask[i]).bit_count() + b.bit_count() - (k & b).bit_count()

    def breaker(self, k: int) -> Breaker:
        return Breaker.from_bits(self.g, ((k >> (self.m - 1 - i)) & 1 for i in range(self.m)))

    def max_ratio(self, k: int, indices: Iterable[int], stop_at: RatioValue | None = None) -> MaxRatio:
        """Max ratio over ``indices`` under breaker ``k``; bails out once ``>= stop_at``."""
        best: RatioValue | None = None
        arg = None
        seen = 0
        for i in indices:
            seen += 1
            q = ratio(self.costs[i], self.breaks(i, k))
            if best is None or q > best:
                best, arg = q, i
                if stop_at is not None and best >= stop_at:
                    break
        return MaxRatio(best, None if arg is None else self.cycles[arg], seen)


def _breaker_count(g: WeightedSymmetricDigraph, max_breakers: int) -> int:
    total = 1 << len(g.edge_pairs)
    if total > max_breakers:
        raise CapExceeded("breaker", max_breakers)
    return total


@dataclass(frozen=True)
class ChiResult:
    value: Fraction
    breaker: Breaker
    cycle: Dicycle | None
    degenerate: bool = False


def chi_c_exact(
    g: WeightedSymmetricDigraph,
    *,
    max_breakers: int = DEFAULT_MAX_BREAKERS,
    max_cycles: int = DEFAULT_MAX_CYCLES,
) -> ChiResult:
    """Exact ``min_T max_C |C|_c/|C|_T`` by exhaustion over all ``2^m`` breakers.

    Among minimising breakers the lexicographically smallest bit encoding
    wins. The reported critical dicycle is the least (by vertex tuple) of
    those attaining the value. An arcless digraph gives value 0 with
    ``degenerate=True``.
    """
    if not g.weights:
        return ChiResult(Fraction(0), Breaker({}), None, degenerate=True)
    total = _breaker_count(g, max_breakers)
    bound = max_pair_weight(g)
    table = _CycleTable(g, list(enumerate_dicycles(g, max_cycles)))
    # Every 2-dicycle has ratio c_xy + c_yx, so the max is at least L; only
    # cycles costing more than L can raise it.
    heavy = sorted((i for i, c in enumerate(table.costs) if c > bound), key=lambda i: -table.costs[i])
    best: RatioValue = INF
    best_k = None
    for k in range(total):
        res = table.max_ratio(k, heavy, stop_at=best)
        value = bound if res.value is None or res.value < bound else res.value
        if value < best:
            best, best_k = value, k
            if best == bound:
                break
    if best == INF:
        raise AssertionError("every breaker has an all-zero cycle")
    t = table.breaker(best_k)
    critical = min(c for i, c in enumerate(table.cycles) if ratio(table.costs[i], table.breaks(i, best_k)) == best)
    return ChiResult(best, t, critical)


@dataclass
class Decision:
    """Verdict of :func:`decide_r`.

    Feasible: ``breaker`` and ``construction`` (with the verified colouring).
    Infeasible: ``evidence`` pairs each examined breaker with a filtered
    witness dicycle whose ratio exceeds ``r``; ``evidence_total`` counts all
    of them even when the stored list is capped.
    """

    feasible: bool
    r: Fraction
    reason: str
    breaker: Breaker | None = None
    construction: Construction | None = None
    evidence: list[tuple[Breaker, MaxRatio]] = field(default_factory=list)
    evidence_total: int = 0
    breakers_checked: int = 0

    @property
    def coloring(self) -> CircularColoring | None:
        return None if self.construction is None else self.construction.coloring


def decide_r(
    g: WeightedSymmetricDigraph,
    r: Fraction,
    *,
    max_breakers: int = DEFAULT_MAX_BREAKERS,
    max_cycles: int = DEFAULT_MAX_CYCLES,
    max_evidence: int | None = 1024,
) -> Decision:
    """Decide whether ``g`` has a circular ``r``-colouring, with a certificate either way."""
    r = parse_rational(r)
    if r <= 0:
        raise InputError(f"r must be positive, got {r}")
    if not g.weights:
        t = Breaker({})
        return Decision(True, r, "no arcs", t, construct_coloring(g, t, r), breakers_checked=0)
    bound = max_pair_weight(g)
    if r < bound:
        u, v = max(g.edge_pairs, key=lambda a: g.weights[a] + g.weights[(a[1], a[0])])
        pair = Dicycle((u, v))
        t = Breaker.from_bits(g, [0] * len(g.edge_pairs))
        return Decision(
            False, r, "r below L", evidence=[(t, MaxRatio(bound, pair, 1))], evidence_total=1
        )
    total = _breaker_count(g, max_breakers)
    cycles = [c for c in enumerate_dicycles(g, max_cycles) if 0 < mod_r(cycle_cost(c, g), r) < bound]
    table = _CycleTable(g, cycles)
    order = sorted(range(len(cycles)), key=lambda i: -table.costs[i])
    evidence: list[tuple[Breaker, MaxRatio]] = []
    for k in range(total):
        res = table.max_ratio(k, order)
        if res.at_most(r):
            t = table.breaker(k)
            construction = construct_coloring(g, t, r)
            if not construction.valid:
                raise AssertionError(f"construction failed under a qualifying breaker: {construction.report}")
            reason = "filter empty" if res.empty else "filtered max ratio <= r"
            return Decision(True, r, reason, t, construction, evidence, k, k + 1)
        if max_evidence is None or len(evidence) < max_evidence:
            evidence.append((table.breaker(k), res))
    return Decision(False, r, "every breaker has a filtered cycle above r", None, None, evidence, total, total)


@dataclass
class CorollaryResult:
    """Outcome of the orientation corollaries.

    ``ok`` with a ``construction`` when the hypothesis holds, otherwise a
    ``witness`` cycle (vertex sequence of the underlying graph) and, where
    relevant, its ``tau`` value.
    """

    ok: bool
    r: Fraction
    construction: Construction | None = None
    witness: tuple[int, ...] | None = None
    witness_tau: RatioValue | None = None
    witness_residue: Fraction | None = None
    reason: str = ""

    @property
    def coloring(self) -> CircularColoring | None:
        return None if self.construction is None else self.construction.coloring


def _require_unit(g: WeightedSymmetricDigraph) -> None:
    if not g.is_unit:
        raise InputError("this operation needs a unit-weight (undirected) graph")


def corollary2_color(
    g: WeightedSymmetricDigraph,
    orientation: Iterable[Arc],
    r: Fraction,
    *,
    max_cycles: int = DEFAULT_MAX_CYCLES,
) -> CorollaryResult:
    """Colour a graph from an orientation whose short-residue cycles have ``tau <= r``.

    Only cycles with ``0 < |C| mod r < 2`` are inspected. On success the
    orientation becomes a breaker of the unit-weight digraph and the
    potential construction runs; otherwise the offending cycle is returned.
    """
    _require_unit(g)
    r = parse_rational(r)
    orientation = tuple(orientation)
    t = breaker_from_orientation(g, orientation)
    if g.weights and r < 2:
        return CorollaryResult(False, r, reason="r below 2")
    for cyc in undirected_cycles(g, max_cycles):
        residue = mod_r(len(cyc), r)
        if 0 < residue < 2:
            value = tau(cyc, orientation)
            if value > r:
                return CorollaryResult(False, r, witness=cyc, witness_tau=value, witness_residue=residue,
                                       reason="tau exceeds r")
    construction = construct_coloring(g, t, r)
    if not construction.valid:
        raise AssertionError("orientation satisfied the hypothesis but the colouring failed")
    return CorollaryResult(True, r, construction, reason="hypothesis holds")


def kd_coloring_from_circular(
    g: WeightedSymmetricDigraph, coloring: CircularColoring, k: int, d: int
) -> dict[int, int]:
    """Turn a circular ``k/d``-colouring into a ``(k, d)``-colouring via ``floor(d * phi)``."""
    _require_unit(g)
    if not (isinstance(k, int) and isinstance(d, int) and k >= 2 * d >= 1):
        raise InputError(f"need integers k >= 2d >= 1, got k={k}, d={d}")
    if coloring.r != Fraction(k, d):
        raise InputError(f"colouring modulus {coloring.r} is not k/d = {Fraction(k, d)}")
    if not verify_coloring(g, coloring).valid:
        raise InputError("colouring is not a valid circular colouring")
    out = {v: math.floor(d * x) for v, x in coloring.colors.items()}
    for u, v in g.edge_pairs:
        if not d <= abs(out[u] - out[v]) <= k - d:
            raise AssertionError(f"(k,d) conversion broke edge {{{u},{v}}}")
    return out


def corollary3_kd_color(
    g: WeightedSymmetricDigraph,
    orientation: Iterable[Arc],
    k: int,
    d: int,
    *,
    max_cycles: int = DEFAULT_MAX_CYCLES,
) -> tuple[CorollaryResult, dict[int, int] | None]:
    """(k, d)-colour from an orientation, inspecting cycles with ``1 <= d|C| mod k <= 2d-1``.

    That integer window selects the same cycles as ``0 < |C| mod (k/d) < 2``,
    so the work is delegated to :func:`corollary2_color`.
    """
    _require_unit(g)
    if not (isinstance(k, int) and isinstance(d, int) and k >= 2 * d >= 1):
        raise InputError(f"need integers k >= 2d >= 1, got k={k}, d={d}")
    orientation = tuple(orientation)
    r = Fraction(k, d)
    for cyc in undirected_cycles(g, max_cycles):
        if 1 <= (d * len(cyc)) % k <= 2 * d - 1:
            value = tau(cyc, orientation)
            if value > r:
                return CorollaryResult(False, r, witness=cyc, witness_tau=value,
                                       witness_residue=mod_r(len(cyc), r), reason="tau exceeds k/d"), None
    result = corollary2_color(g, orientation, r, max_cycles=max_cycles)
    if not result.ok:
        raise AssertionError("integer and rational residue windows disagree")
    return result, kd_coloring_from_circular(g, result.coloring, k, d)


def corollary4_check(
    g: WeightedSymmetricDigraph, r: Fraction, *, max_cycles: int = DEFAULT_MAX_CYCLES
) -> CorollaryResult:
    """Colour ``g`` when no cycle length has residue mod ``r`` in ``(0, 2)``.

    The filter is then vacuous for every breaker; the one used orients each
    edge from its smaller to its larger end.
    """
    _require_unit(g)
    r = parse_rational(r)
    if g.weights and r < 2:
        raise InputError(f"r must be at least 2 for a graph with edges, got {r}")
    for cyc in undirected_cycles(g, max_cycles):
        residue = mod_r(len(cyc), r)
        if 0 < residue < 2:
            return CorollaryResult(False, r, witness=cyc, witness_residue=residue, reason="cycle residue in (0,2)")
    t = breaker_from_orientation(g, g.edge_pairs)
    construction = construct_coloring(g, t, r)
    if not construction.valid:
        raise AssertionError("vacuous filter but the colouring failed")
    return CorollaryResult(True, r, construction, reason="no cycle residue in (0,2)")
