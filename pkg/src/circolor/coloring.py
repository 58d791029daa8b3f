"""Circular colourings of weighted symmetric digraphs and their verification."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType

from .cycles import mod_r
from .errors import InputError
from .graph import Arc, WeightedSymmetricDigraph, parse_rational


@dataclass(frozen=True)
class CircularColoring:
    """Colours on the circle of perimeter ``r``, identified with ``[0, r)``."""

    r: Fraction
    colors: Mapping[int, Fraction]

    def __post_init__(self):
        r = parse_rational(self.r)
        if r <= 0:
            raise InputError(f"modulus must be positive, got {r}")
        colors = {}
        for v, x in self.colors.items():
            x = parse_rational(x)
            if not 0 <= x < r:
                raise InputError(f"colour {x} of vertex {v} is outside [0, {r})")
            colors[int(v)] = x
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "colors", MappingProxyType(dict(sorted(colors.items()))))

    def __getitem__(self, v: int) -> Fraction:
        return self.colors[v]


def circular_distance(p: Fraction, x: Fraction, y: Fraction) -> Fraction:
    """Clockwise arc length from ``x`` to ``y`` on the circle of perimeter ``p``.

    Clockwise is taken as the direction of increasing value: ``(y - x) mod p``.
    """
    p = Fraction(p)
    for z in (x, y):
        if not 0 <= z < p:
            raise InputError(f"point {z} is outside [0, {p})")
    if x == y:
        return Fraction(0)
    return mod_r(Fraction(y) - Fraction(x), p)


@dataclass(frozen=True)
class Violation:
    arc: Arc
    required: Fraction
    actual: Fraction


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    violations: tuple[Violation, ...] = field(default=())


def verify_coloring(g: WeightedSymmetricDigraph, coloring: CircularColoring) -> VerificationReport:
    """Check ``d_r(phi(u), phi(v)) >= c_uv`` on every arc."""
    missing = [v for v in g.vertices if v not in coloring.colors]
    if missing:
        raise InputError(f"no colour for vertices {missing}")
    r = coloring.r
    bad = []
    for (u, v), c in g.weights.items():
        d = circular_distance(r, coloring[u], coloring[v])
        if d < c:
            bad.append(Violation((u, v), c, d))
    return VerificationReport(not bad, tuple(bad))


def unit_gap_check(g: WeightedSymmetricDigraph, coloring: CircularColoring) -> bool:
    """Graph form of the condition: ``1 <= |phi(x) - phi(y)| <= r - 1`` on each edge."""
    r = coloring.r
    return all(1 <= abs(coloring[u] - coloring[v]) <= r - 1 for u, v in g.edge_pairs)
