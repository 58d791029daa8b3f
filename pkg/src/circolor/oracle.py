"""Brute-force references for small unit-weight graphs.

Nothing here touches breakers, cycles or potentials: (k, d)-colourings are
found by plain backtracking, and the circular chromatic number is the
least feasible ``k/d``.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from .chromatic import chi_c_exact
from .errors import CapExceeded, InputError
from .graph import derive_symmetric

Edge = tuple[int, int]

DEFAULT_MAX_VERTICES = 10


def _adjacency(n: int, edges: Iterable[Edge]) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {v: set() for v in range(1, n + 1)}
    for u, v in edges:
        if u == v or not (1 <= u <= n and 1 <= v <= n):
            raise InputError(f"bad edge ({u},{v})")
        adj[u].add(v)
        adj[v].add(u)
    return adj


def is_kd_coloring(n: int, edges: Iterable[Edge], k: int, d: int, g: dict[int, int]) -> bool:
    """Definition check, written independently of the search below."""
    if any(not (0 <= g.get(v, -1) < k) for v in range(1, n + 1)):
        return False
    return all(d <= abs(g[u] - g[v]) <= k - d for u, v in edges)


def brute_kd(
    n: int, edges: Iterable[Edge], k: int, d: int, *, max_vertices: int = DEFAULT_MAX_VERTICES
) -> dict[int, int] | None:
    """Some ``(k, d)``-colouring of the graph, or None if there is none.

    Vertices are tried by descending degree (ties by id), values ascending.
    """
    if not (k >= 2 * d >= 1):
        raise InputError(f"need k >= 2d >= 1, got k={k}, d={d}")
    if n > max_vertices:
        raise CapExceeded("vertex", max_vertices)
    edges = list(edges)
    adj = _adjacency(n, edges)
    order = sorted(adj, key=lambda v: (-len(adj[v]), v))
    color: dict[int, int] = {}

    def fits(v: int, x: int) -> bool:
        for w in adj[v]:
            if w in color and not d <= abs(color[w] - x) <= k - d:
                return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for x in range(k):
            if fits(v, x):
                color[v] = x
                if search(i + 1):
                    return True
                del color[v]
        return False

    if not search(0):
        return None
    return dict(sorted(color.items()))


def chi_c_bruteforce_unit(n: int, edges: Iterable[Edge], *, max_vertices: int = DEFAULT_MAX_VERTICES) -> Fraction:
    """Least ``k/d`` admitting a ``(k, d)``-colouring, searching ``k <= n``.

    Candidates with ``n < k <= n + 2`` are searched as well; if one of them
    beats the ``k <= n`` optimum an AssertionError is raised.
    """
    edges = list(edges)
    if not edges:
        raise InputError("graph has no edges")
    if n > max_vertices:
        raise CapExceeded("vertex", max_vertices)
    candidates = sorted({Fraction(k, d) for k in range(2, n + 3) for d in range(1, k // 2 + 1)})
    for q in candidates:
        if brute_kd(n, edges, q.numerator, q.denominator, max_vertices=max_vertices) is not None:
            if q.numerator > n:
                raise AssertionError(f"k/d = {q} with k > n beats every k <= n")
            return q
    raise AssertionError("no (k,d)-colouring with k <= n + 2")


@dataclass(frozen=True)
class CrossCheck:
    n: int
    edges: tuple[Edge, ...]
    exact: Fraction
    brute: Fraction
    breaker_bits: tuple[int, ...]
    critical_cycle: tuple[int, ...] | None
    kd_witness: dict[int, int] | None

    @property
    def agree(self) -> bool:
        return self.exact == self.brute


def cross_check(n: int, edges: Iterable[Edge]) -> CrossCheck:
    """Compare the min-max value with the backtracking value on one graph."""
    edges = tuple(edges)
    res = chi_c_exact(derive_symmetric(edges, n))
    brute = chi_c_bruteforce_unit(n, edges)
    return CrossCheck(
        n,
        edges,
        res.value,
        brute,
        res.breaker.bits(),
        None if res.cycle is None else res.cycle.vertices,
        brute_kd(n, edges, brute.numerator, brute.denominator),
    )
