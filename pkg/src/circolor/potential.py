"""Circular colourings from breakers via rooted tree potentials.

Given a breaker ``T`` and modulus ``r``, arcs get reduced weights
``w(xy) = c_xy - r*T(xy)``. A rooted spanning tree assigns each vertex the
``w``-length of its tree path from the root. Reparenting a vertex ``x`` under
an in-neighbour ``y`` outside its subtree raises every potential in the
subtree by ``f(y) + w(yx) - f(x)``; local search applies such moves while
the gain is positive. At a local optimum the potentials taken modulo ``r``
form a circular ``r``-colouring whenever every dicycle with
``0 < |C|_c mod r < L`` has ``|C|_c / |C|_T <= r``.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType

from .errors import InputError
from .graph import Arc, Breaker, WeightedSymmetricDigraph, max_pair_weight, parse_rational
from .coloring import CircularColoring, VerificationReport, verify_coloring
from .cycles import mod_r


@dataclass(frozen=True)
class ReducedWeights:
    w: Mapping[Arc, Fraction]
    r: Fraction
    breaker: Breaker


def reduced_weights(g: WeightedSymmetricDigraph, t: Breaker, r: Fraction) -> ReducedWeights:
    r = parse_rational(r)
    t.check_domain(g)
    if g.weights and r < max_pair_weight(g):
        raise InputError(f"r = {r} is below L = {max_pair_weight(g)}")
    w = {a: c - r * t[a] for a, c in g.weights.items()}
    return ReducedWeights(MappingProxyType(w), r, t)


@dataclass(frozen=True)
class ExchangeMove:
    x: int
    y: int
    gain: Fraction


@dataclass
class PotentialTree:
    """Rooted spanning tree of one component with per-vertex potentials.

    ``tin``/``tout`` are DFS entry/exit stamps used for subtree membership;
    they are refreshed after every reparenting.
    """

    g: WeightedSymmetricDigraph
    vertices: tuple[int, ...]
    root: int
    parent: dict[int, int]
    f: dict[int, Fraction]
    children: dict[int, list[int]] = field(default_factory=dict)
    tin: dict[int, int] = field(default_factory=dict)
    tout: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.children:
            self.children = {v: [] for v in self.vertices}
            for v, p in self.parent.items():
                self.children[p].append(v)
        self.reindex()

    def reindex(self) -> None:
        clock = 0
        stack = [(self.root, False)]
        while stack:
            v, leaving = stack.pop()
            if leaving:
                self.tout[v] = clock
                continue
            self.tin[v] = clock
            clock += 1
            stack.append((v, True))
            for c in sorted(self.children[v], reverse=True):
                stack.append((c, False))

    def in_subtree(self, y: int, x: int) -> bool:
        """True if ``y`` lies in the subtree rooted at ``x`` (``x`` included)."""
        return self.tin[x] <= self.tin[y] < self.tout[x]

    def in_subtree_naive(self, y: int, x: int) -> bool:
        while True:
            if y == x:
                return True
            if y == self.root:
                return False
            y = self.parent[y]

    def subtree(self, x: int) -> list[int]:
        out = []
        stack = [x]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(self.children[v])
        return out

    def recomputed_potentials(self, w: Mapping[Arc, Fraction]) -> dict[int, Fraction]:
        """Potentials rebuilt from scratch along tree paths (for consistency checks)."""
        f = {self.root: Fraction(0)}
        queue = deque([self.root])
        while queue:
            u = queue.popleft()
            for c in self.children[u]:
                f[c] = f[u] + w[(u, c)]
                queue.append(c)
        return f


def init_tree(g: WeightedSymmetricDigraph, component, s: int, weights: ReducedWeights) -> PotentialTree:
    """Breadth-first spanning tree of ``component`` rooted at ``s``."""
    comp = tuple(sorted(component))
    members = set(comp)
    if s not in members:
        raise InputError(f"root {s} is not in the component")
    w = weights.w
    parent: dict[int, int] = {}
    f = {s: Fraction(0)}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v in g.out_neighbors(u):
            if v not in f:
                if v not in members:
                    raise InputError(f"vertex {v} is adjacent to the component but not in it")
                parent[v] = u
                f[v] = f[u] + w[(u, v)]
                queue.append(v)
    if len(f) != len(comp):
        raise InputError("component is not connected")
    return PotentialTree(g, comp, s, parent, f)


def tree_weight(tree: PotentialTree) -> Fraction:
    return sum(tree.f.values(), Fraction(0))


def find_improving_move(tree: PotentialTree, weights: ReducedWeights) -> ExchangeMove | None:
    """First arc ``yx`` in ascending ``(y, x)`` order with ``f(y) + w(yx) > f(x)``.

    Only non-root ``x`` and ``y`` outside the subtree of ``x`` qualify.
    """
    w = weights.w
    f = tree.f
    for y in tree.vertices:
        fy = f[y]
        for x in tree.g.out_neighbors(y):
            if x == tree.root:
                continue
            gain = fy + w[(y, x)] - f[x]
            if gain > 0 and not tree.in_subtree(y, x):
                return ExchangeMove(x, y, gain)
    return None


def apply_move(tree: PotentialTree, move: ExchangeMove) -> int:
    """Reparent ``move.x`` under ``move.y``; returns the size of the moved subtree."""
    x, y = move.x, move.y
    old = tree.parent[x]
    tree.children[old].remove(x)
    tree.children[y].append(x)
    tree.parent[x] = y
    moved = tree.subtree(x)
    for v in moved:
        tree.f[v] += move.gain
    tree.reindex()
    return len(moved)


# Called as hook(tree, move, subtree_size, weight_before, weight_after).
MoveHook = Callable[[PotentialTree, ExchangeMove, int, Fraction, Fraction], None]


def local_search(tree: PotentialTree, weights: ReducedWeights, on_move: MoveHook | None = None) -> int:
    """Apply improving moves until none remains. Mutates ``tree``; returns the move count.

    Terminates because the tree weight strictly increases and there are
    finitely many spanning trees.
    """
    moves = 0
    while (move := find_improving_move(tree, weights)) is not None:
        before = tree_weight(tree) if on_move is not None else None
        size = apply_move(tree, move)
        moves += 1
        if on_move is not None:
            on_move(tree, move, size, before, tree_weight(tree))
    return moves


def is_locally_optimal(tree: PotentialTree, weights: ReducedWeights) -> bool:
    """Exhaustive check of ``f(y) + w(yx) <= f(x)`` for every eligible arc."""
    for y in tree.vertices:
        for x in tree.g.out_neighbors(y):
            if x == tree.root or tree.in_subtree_naive(y, x):
                continue
            if tree.f[y] + weights.w[(y, x)] > tree.f[x]:
                return False
    return True


def coloring_from_tree(tree: PotentialTree, r: Fraction) -> dict[int, Fraction]:
    return {v: mod_r(tree.f[v], r) for v in tree.vertices}


@dataclass
class Construction:
    """Outcome of :func:`construct_coloring`: the colouring, its audit and the search record."""

    coloring: CircularColoring
    report: VerificationReport
    trees: list[PotentialTree]
    moves: int

    @property
    def valid(self) -> bool:
        return self.report.valid


def construct_coloring(
    g: WeightedSymmetricDigraph, t: Breaker, r: Fraction, on_move: MoveHook | None = None
) -> Construction:
    """Run the potential construction per component and verify the result.

    The verification is unconditional: a breaker that fails the cycle-ratio
    hypothesis still yields a colouring, and the report lists violated arcs.
    """
    weights = reduced_weights(g, t, r)
    colors: dict[int, Fraction] = {}
    trees = []
    moves = 0
    for comp in g.components():
        tree = init_tree(g, comp, comp[0], weights)
        moves += local_search(tree, weights, on_move)
        colors.update(coloring_from_tree(tree, weights.r))
        trees.append(tree)
    coloring = CircularColoring(weights.r, colors)
    return Construction(coloring, verify_coloring(g, coloring), trees, moves)
