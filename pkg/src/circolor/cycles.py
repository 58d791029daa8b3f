"""Dicycle enumeration, cycle functionals and maximum cycle ratios."""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from .errors import CapExceeded, InputError
from .graph import Arc, Breaker, Dicycle, WeightedSymmetricDigraph, max_pair_weight, parse_rational

INF = math.inf

# A finite exact ratio or ``math.inf`` (zero denominator).
RatioValue = Union[Fraction, float]


def ratio(num: Fraction | int, den: int) -> RatioValue:
    """``num / den`` with a zero denominator read as infinity."""
    if den == 0:
        return INF
    return Fraction(num) / den


def mod_r(x: Fraction | int, r: Fraction | int) -> Fraction:
    """The unique ``t`` in ``[0, r)`` congruent to ``x`` modulo ``r``."""
    r = Fraction(r)
    if r <= 0:
        raise InputError(f"modulus must be positive, got {r}")
    x = Fraction(x)
    return x - r * math.floor(x / r)


def enumerate_dicycles(g: WeightedSymmetricDigraph, limit: int | None = None) -> Iterator[Dicycle]:
    """Yield every simple dicycle of ``g`` once, in canonical form.

    Johnson's elementary-circuit algorithm: for each start vertex ``s`` in
    increasing order, search circuits through ``s`` that use only vertices
    greater than ``s``. Each circuit therefore starts at its least vertex.

    Raises :class:`CapExceeded` instead of yielding a cycle past ``limit``.
    """
    produced = 0
    for s in g.vertices:
        for cyc in _circuits_from(g, s):
            if limit is not None and produced >= limit:
                raise CapExceeded("cycle", limit)
            produced += 1
            yield Dicycle(tuple(cyc))


def _circuits_from(g: WeightedSymmetricDigraph, s: int) -> Iterator[list[int]]:
    # Iterative Johnson search restricted to vertices >= s.
    reach = _reachable_above(g, s)
    if len(reach) < 2:
        return
    blocked = {s}
    bmap: dict[int, set[int]] = {v: set() for v in reach}
    path = [s]
    stack = [(s, iter([w for w in g.out_neighbors(s) if w in reach]))]
    closed = [False]

    def unblock(v: int) -> None:
        todo = [v]
        while todo:
            u = todo.pop()
            if u in blocked:
                blocked.discard(u)
                todo.extend(bmap[u])
                bmap[u].clear()

    while stack:
        v, nbrs = stack[-1]
        for w in nbrs:
            if w == s:
                yield list(path)
                closed[-1] = True
            elif w not in blocked:
                path.append(w)
                blocked.add(w)
                closed.append(False)
                stack.append((w, iter([x for x in g.out_neighbors(w) if x in reach])))
                break
        else:
            stack.pop()
            path.pop()
            was_closed = closed.pop()
            if was_closed:
                unblock(v)
                if closed:
                    closed[-1] = True
            else:
                for w in g.out_neighbors(v):
                    if w in reach:
                        bmap[w].add(v)


def _reachable_above(g: WeightedSymmetricDigraph, s: int) -> set[int]:
    # Underlying graph is symmetric, so reachability within {v >= s} is the SCC of s.
    seen = {s}
    todo = [s]
    while todo:
        u = todo.pop()
        for v in g.out_neighbors(u):
            if v > s and v not in seen:
                seen.add(v)
                todo.append(v)
    return seen


def cycle_cost(c: Dicycle, g: WeightedSymmetricDigraph) -> Fraction:
    return sum((g.weight(u, v) for u, v in c.arcs), Fraction(0))


def cycle_breaks(c: Dicycle, t: Breaker) -> int:
    return sum(t[a] for a in c.arcs)


def danger_filter(g: WeightedSymmetricDigraph, r: Fraction) -> Callable[[Dicycle], bool]:
    """Predicate: ``0 < |C|_c mod r < L`` with both inequalities strict."""
    r = parse_rational(r)
    if r <= 0:
        raise InputError(f"r must be positive, got {r}")
    bound = max_pair_weight(g)

    def passes(c: Dicycle) -> bool:
        return 0 < mod_r(cycle_cost(c, g), r) < bound

    return passes


class TraversalSplit(NamedTuple):
    forward: int
    backward: int


def _cycle_edges(cycle: Sequence[int]) -> list[Arc]:
    vs = list(cycle)
    if len(vs) > 1 and vs[0] == vs[-1]:
        vs = vs[:-1]
    if len(vs) < 3 or len(set(vs)) != len(vs):
        raise InputError(f"not a simple undirected cycle: {tuple(cycle)}")
    return list(zip(vs, vs[1:] + vs[:1]))


def traversal_split(cycle: Sequence[int], orientation: Iterable[Arc]) -> TraversalSplit:
    """Count cycle edges whose orientation agrees / disagrees with the traversal.

    ``cycle`` is the vertex sequence in traversal order (closing vertex optional).
    """
    directed = set(orientation)
    fwd = bwd = 0
    for u, v in _cycle_edges(cycle):
        if (u, v) in directed:
            fwd += 1
        elif (v, u) in directed:
            bwd += 1
        else:
            raise InputError(f"edge {{{u},{v}}} is not oriented")
    return TraversalSplit(fwd, bwd)


def tau(cycle: Sequence[int], orientation: Iterable[Arc]) -> RatioValue:
    fwd, bwd = traversal_split(cycle, orientation)
    length = fwd + bwd
    return max(ratio(length, fwd), ratio(length, bwd))


def undirected_cycles(g: WeightedSymmetricDigraph, limit: int | None = None) -> Iterator[tuple[int, ...]]:
    """Simple cycles (length >= 3) of the underlying graph, one traversal each.

    Chosen representative: starts at the least vertex, second vertex smaller
    than the last.
    """
    count = 0
    for c in enumerate_dicycles(g):
        vs = c.vertices
        if len(vs) >= 3 and vs[1] < vs[-1]:
            if limit is not None and count >= limit:
                raise CapExceeded("cycle", limit)
            count += 1
            yield vs


@dataclass(frozen=True)
class MaxRatio:
    """Result of a (possibly filtered) maximum cycle-ratio evaluation.

    ``value is None`` marks the empty maximum: no dicycle passed the filter,
    so any "max <= r" condition holds vacuously.
    """

    value: RatioValue | None
    witness: Dicycle | None = None
    examined: int = 0

    @property
    def empty(self) -> bool:
        return self.value is None

    @property
    def infinite(self) -> bool:
        return self.value == INF

    def at_most(self, r: Fraction) -> bool:
        return self.value is None or self.value <= r


def max_ratio_exhaustive(
    g: WeightedSymmetricDigraph,
    t: Breaker,
    filter: Callable[[Dicycle], bool] | None = None,
    *,
    cycles: Iterable[Dicycle] | None = None,
    limit: int | None = None,
) -> MaxRatio:
    """Maximum of ``|C|_c / |C|_T`` over all dicycles passing ``filter``.

    Ties keep the first witness in enumeration order. ``cycles`` may supply a
    pre-enumerated cycle list.
    """
    t.check_domain(g)
    best: RatioValue | None = None
    witness = None
    examined = 0
    source = enumerate_dicycles(g, limit) if cycles is None else cycles
    for c in source:
        if filter is not None and not filter(c):
            continue
        examined += 1
        q = ratio(cycle_cost(c, g), cycle_breaks(c, t))
        if best is None or q > best:
            best, witness = q, c
    return MaxRatio(best, witness, examined)


def _zero_break_cycle(g: WeightedSymmetricDigraph, t: Breaker) -> Dicycle | None:
    # Directed cycle in the subgraph of arcs with T = 0, found by DFS colouring.
    succ = {v: [w for w in g.out_neighbors(v) if t[(v, w)] == 0] for v in g.vertices}
    state = dict.fromkeys(g.vertices, 0)
    for root in g.vertices:
        if state[root]:
            continue
        path = [root]
        iters = [iter(succ[root])]
        state[root] = 1
        while iters:
            for w in iters[-1]:
                if state[w] == 1:
                    return Dicycle(tuple(path[path.index(w):]))
                if state[w] == 0:
                    state[w] = 1
                    path.append(w)
                    iters.append(iter(succ[w]))
                    break
            else:
                state[path.pop()] = 2
                iters.pop()
    return None


def positive_cycle(g: WeightedSymmetricDigraph, t: Breaker, lam: Fraction) -> Dicycle | None:
    """A dicycle of positive weight under ``c_uv - lam * T_uv``, or None.

    Longest-path Bellman-Ford from a virtual source joined to every vertex; a
    relaxation in round ``n`` exposes a positive cycle in the parent graph.
    """
    w = {a: c - lam * t[a] for a, c in g.weights.items()}
    dist = dict.fromkeys(g.vertices, Fraction(0))
    parent: dict[int, int] = {}
    last = None
    for _ in range(g.n):
        last = None
        for (u, v), wt in w.items():
            if dist[u] + wt > dist[v]:
                dist[v] = dist[u] + wt
                parent[v] = u
                last = v
        if last is None:
            return None
    # Walk back n steps to land on the cycle, then collect it.
    v = last
    for _ in range(g.n):
        v = parent[v]
    cyc = [v]
    u = parent[v]
    while u != v:
        cyc.append(u)
        u = parent[u]
    cyc.reverse()
    found = Dicycle(tuple(cyc))
    if sum(w[a] for a in found.arcs) <= 0:
        raise AssertionError("parent-graph cycle is not positive")
    return found


def max_ratio_parametric(
    g: WeightedSymmetricDigraph, t: Breaker, tolerance: Fraction = Fraction(1, 1000)
) -> MaxRatio:
    """Unfiltered maximum cycle ratio by bisection on ``lam``, snapped to an exact witness.

    ``max_C |C|_c/|C|_T > lam`` iff some dicycle is positive under
    ``c - lam*T``. Bisection narrows the bracket to ``tolerance``; the snap
    then repeatedly jumps ``lam`` to the ratio of the positive cycle found
    until none remains, which leaves ``lam`` equal to the exact maximum.
    """
    tolerance = parse_rational(tolerance)
    if tolerance <= 0:
        raise InputError("tolerance must be positive")
    t.check_domain(g)
    if not g.weights:
        return MaxRatio(None)
    zero = _zero_break_cycle(g, t)
    if zero is not None:
        return MaxRatio(INF, zero)
    lo = max_pair_weight(g)
    hi = sum(g.weights.values(), Fraction(0))
    # lo is attained by a 2-dicycle; hi exceeds every cycle's cost, hence every ratio.
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        if positive_cycle(g, t, mid) is not None:
            lo = mid
        else:
            hi = mid
    witness = _heaviest_two_cycle(g)
    best = ratio(cycle_cost(witness, g), cycle_breaks(witness, t))
    lam = lo
    while (c := positive_cycle(g, t, lam)) is not None:
        witness = c
        best = lam = ratio(cycle_cost(c, g), cycle_breaks(c, t))
    if lam != best:
        raise AssertionError("snapping ended without an exact witness")
    return MaxRatio(best, witness)


def _heaviest_two_cycle(g: WeightedSymmetricDigraph) -> Dicycle:
    u, v = max(g.edge_pairs, key=lambda a: g.weights[a] + g.weights[(a[1], a[0])])
    return Dicycle((u, v))
