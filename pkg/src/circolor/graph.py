"""Exact-rational weighted symmetric digraphs, breakers and dicycles.

Every scalar in this package is a :class:`fractions.Fraction`. Vertices are
integers ``1..n``. An *arc* is an ordered pair ``(u, v)``; an *edge pair* is
the unordered pair ``{u, v}``, always written with ``u < v``.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType

from .errors import InputError, UndefinedBoundError

Arc = tuple[int, int]

ONE = Fraction(1)


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"3/2"``, ``"7"`` or an exact decimal such as ``"2.5"``.

    Floats are rejected outright; they cannot carry an exact value.
    """
    if isinstance(text, bool) or isinstance(text, float):
        raise InputError(f"not an exact rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = str(text).strip()
    if not s or any(tok in s.lower() for tok in ("inf", "nan")):
        raise InputError(f"not a rational number: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {text!r}") from exc


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class WeightedSymmetricDigraph:
    """A digraph where ``uv`` is an arc iff ``vu`` is, each arc carrying a positive weight."""

    n: int
    weights: Mapping[Arc, Fraction]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InputError(f"vertex count must be a positive integer, got {self.n!r}")
        clean: dict[Arc, Fraction] = {}
        for (u, v), c in self.weights.items():
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InputError(f"arc ({u},{v}) has a vertex outside 1..{self.n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            c = parse_rational(c)
            if c <= 0:
                raise InputError(f"nonpositive weight {c} on arc ({u},{v})")
            clean[(u, v)] = c
        for u, v in clean:
            if (v, u) not in clean:
                raise InputError(f"arc ({u},{v}) has no reverse arc")
        object.__setattr__(self, "weights", MappingProxyType(dict(sorted(clean.items()))))
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for u, v in self.weights:
            adj[u].append(v)
        object.__setattr__(self, "_adj", {v: tuple(sorted(ws)) for v, ws in adj.items()})

    @classmethod
    def from_pairs(
        cls, n: int, pairs: Iterable[tuple[int, int, Fraction | int | str, Fraction | int | str]]
    ) -> WeightedSymmetricDigraph:
        """Build from ``(u, v, c_uv, c_vu)`` tuples, one per edge pair."""
        weights: dict[Arc, Fraction] = {}
        for u, v, cuv, cvu in pairs:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if (u, v) in weights:
                raise InputError(f"duplicate edge pair {{{u},{v}}}")
            weights[(u, v)] = parse_rational(cuv)
            weights[(v, u)] = parse_rational(cvu)
        return cls(n, weights)

    @property
    def arcs(self) -> tuple[Arc, ...]:
        return tuple(self.weights)

    @property
    def edge_pairs(self) -> tuple[Arc, ...]:
        return tuple(a for a in self.weights if a[0] < a[1])

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def weight(self, u: int, v: int) -> Fraction:
        try:
            return self.weights[(u, v)]
        except KeyError:
            raise InputError(f"({u},{v}) is not an arc") from None

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.weights

    @property
    def is_unit(self) -> bool:
        return all(c == 1 for c in self.weights.values())

    def underlying_edges(self) -> set[frozenset[int]]:
        return {frozenset(a) for a in self.edge_pairs}

    def components(self) -> list[tuple[int, ...]]:
        """Connected components of the underlying graph, each sorted, ordered by least vertex."""
        seen: set[int] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for v in self._adj[u]:
                    if v not in seen:
                        seen.add(v)
                        comp.append(v)
                        queue.append(v)
            comps.append(tuple(sorted(comp)))
        return comps

    def scaled(self, alpha: Fraction) -> WeightedSymmetricDigraph:
        alpha = parse_rational(alpha)
        return WeightedSymmetricDigraph(self.n, {a: alpha * c for a, c in self.weights.items()})


def derive_symmetric(edges: Iterable[tuple[int, int]], n: int) -> WeightedSymmetricDigraph:
    """Unit-weight symmetric digraph derived from an undirected simple graph."""
    pairs = []
    seen: set[frozenset[int]] = set()
    for u, v in edges:
        if u == v:
            raise InputError(f"self-loop at vertex {u}")
        key = frozenset((u, v))
        if key in seen:
            raise InputError(f"duplicate edge {{{u},{v}}}")
        seen.add(key)
        pairs.append((u, v, ONE, ONE))
    return WeightedSymmetricDigraph.from_pairs(n, pairs)


def max_pair_weight(g: WeightedSymmetricDigraph) -> Fraction:
    """L: the largest ``c_uv + c_vu`` over edge pairs."""
    if not g.weights:
        raise UndefinedBoundError()
    return max(g.weights[(u, v)] + g.weights[(v, u)] for u, v in g.edge_pairs)


@dataclass(frozen=True)
class Breaker:
    """A 0/1 labelling of arcs with ``T(xy) + T(yx) = 1`` on every edge pair."""

    values: Mapping[Arc, int]

    def __post_init__(self):
        vals = {}
        for (u, v), t in self.values.items():
            if t not in (0, 1):
                raise InputError(f"breaker value on ({u},{v}) must be 0 or 1, got {t!r}")
            vals[(u, v)] = int(t)
        for (u, v), t in vals.items():
            if (v, u) not in vals or vals[(v, u)] + t != 1:
                raise InputError(f"breaker violates T(xy)+T(yx)=1 on {{{u},{v}}}")
        object.__setattr__(self, "values", MappingProxyType(dict(sorted(vals.items()))))

    def __getitem__(self, arc: Arc) -> int:
        try:
            return self.values[arc]
        except KeyError:
            raise InputError(f"breaker undefined on arc {arc}") from None

    def __iter__(self) -> Iterator[Arc]:
        return iter(self.values)

    @property
    def forward_arcs(self) -> tuple[Arc, ...]:
        """Arcs with T = 1, i.e. the orientation this breaker encodes."""
        return tuple(a for a, t in self.values.items() if t == 1)

    def check_domain(self, g: WeightedSymmetricDigraph) -> None:
        if set(self.values) != set(g.weights):
            raise InputError("breaker domain does not match the digraph's arc set")

    @classmethod
    def from_bits(cls, g: WeightedSymmetricDigraph, bits: Iterable[int]) -> Breaker:
        """``bits[i]`` is ``T(u -> v)`` for the i-th edge pair ``u < v``."""
        bits = tuple(bits)
        pairs = g.edge_pairs
        if len(bits) != len(pairs):
            raise InputError(f"expected {len(pairs)} bits, got {len(bits)}")
        vals = {}
        for (u, v), b in zip(pairs, bits):
            vals[(u, v)] = b
            vals[(v, u)] = 1 - b
        return cls(vals)

    def bits(self) -> tuple[int, ...]:
        return tuple(t for (u, v), t in self.values.items() if u < v)


def breaker_from_orientation(g: WeightedSymmetricDigraph, orientation: Iterable[Arc]) -> Breaker:
    """T(xy) = 1 exactly when the orientation directs ``{x, y}`` as ``x -> y``."""
    vals: dict[Arc, int] = {}
    for u, v in orientation:
        if not g.has_arc(u, v):
            raise InputError(f"oriented edge ({u},{v}) is not an edge of the graph")
        if (u, v) in vals:
            raise InputError(f"edge {{{u},{v}}} oriented twice")
        vals[(u, v)] = 1
        vals[(v, u)] = 0
    if len(vals) != len(g.weights):
        raise InputError("orientation does not cover every edge pair")
    return Breaker(vals)


def breaker_complement(t: Breaker) -> Breaker:
    return Breaker({a: 1 - v for a, v in t.values.items()})


@dataclass(frozen=True, order=True)
class Dicycle:
    """A simple closed directed walk, stored without the repeated end vertex.

    Canonical form starts at the least vertex and keeps the traversal
    direction, so a cycle and its reversal are different objects.
    """

    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        if len(vs) < 2 or len(set(vs)) != len(vs):
            raise InputError(f"not a simple dicycle: {vs}")
        i = vs.index(min(vs))
        vs = vs[i:] + vs[:i]
        object.__setattr__(self, "vertices", vs)

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def arcs(self) -> tuple[Arc, ...]:
        vs = self.vertices
        return tuple(zip(vs, vs[1:] + vs[:1]))

    def reversed(self) -> Dicycle:
        return Dicycle(tuple(reversed(self.vertices)))

    def check_in(self, g: WeightedSymmetricDigraph) -> None:
        for u, v in self.arcs:
            if not g.has_arc(u, v):
                raise InputError(f"({u},{v}) is not an arc of the digraph")

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.vertices + self.vertices[:1])) + ")"
