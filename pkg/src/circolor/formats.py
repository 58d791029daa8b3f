"""Text formats: instances, breaker/orientation files and colouring documents.

Instance files are line oriented, DIMACS style::

    c optional comment
    p cwsd <n> <m>          weighted symmetric digraph, or
    p cg <n> <m>            unit-weight undirected graph
    e <u> <v> [<c_uv> <c_vu>]

Breaker files hold one ``t <u> <v>`` line per edge pair, meaning
``T(u -> v) = 1``. Orientation files use the same layout (``o`` is accepted
as the line tag too). Colourings are JSON: ``{"r": "5/2", "colors": {"1": "0", ...}}``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .coloring import CircularColoring
from .cycles import INF
from .errors import InputError
from .graph import (
    ONE,
    Arc,
    Breaker,
    WeightedSymmetricDigraph,
    breaker_from_orientation,
    format_rational,
    parse_rational,
)

KINDS = ("cwsd", "cg")


@dataclass(frozen=True)
class Instance:
    graph: WeightedSymmetricDigraph
    kind: str = "cwsd"
    comments: tuple[str, ...] = field(default=())

    @property
    def digest(self) -> str:
        return hashlib.sha256(serialize_instance(self).encode()).hexdigest()[:16]


def _int(tok: str, what: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"{what} must be an integer, got {tok!r}", line) from None


def parse_instance(text: str) -> Instance:
    kind = None
    n = m = 0
    comments: list[str] = []
    pairs: dict[frozenset[int], tuple[int, int, Fraction, Fraction]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        tag, *rest = line.split()
        if tag == "c":
            comments.append(line[1:].strip())
        elif tag == "p":
            if kind is not None:
                raise InputError("second problem line", lineno)
            if len(rest) != 3 or rest[0] not in KINDS:
                raise InputError("expected 'p cwsd <n> <m>' or 'p cg <n> <m>'", lineno)
            kind = rest[0]
            n = _int(rest[1], "vertex count", lineno)
            m = _int(rest[2], "edge count", lineno)
            if n < 1 or m < 0:
                raise InputError("vertex count must be >= 1 and edge count >= 0", lineno)
        elif tag == "e":
            if kind is None:
                raise InputError("edge line before problem line", lineno)
            if len(rest) not in (2, 4):
                raise InputError("expected 'e <u> <v> [<c_uv> <c_vu>]'", lineno)
            if kind == "cg" and len(rest) == 4:
                raise InputError("weights are not allowed in a 'cg' instance", lineno)
            u = _int(rest[0], "vertex", lineno)
            v = _int(rest[1], "vertex", lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise InputError(f"vertex out of range 1..{n}", lineno)
            if u == v:
                raise InputError("self-loop", lineno)
            key = frozenset((u, v))
            if key in pairs:
                raise InputError(f"duplicate edge pair {{{u},{v}}}", lineno)
            if len(rest) == 4:
                try:
                    cuv, cvu = parse_rational(rest[2]), parse_rational(rest[3])
                except InputError as exc:
                    raise InputError(str(exc), lineno) from None
                if cuv <= 0 or cvu <= 0:
                    raise InputError("nonpositive weight", lineno)
            else:
                cuv = cvu = ONE
            pairs[key] = (u, v, cuv, cvu)
        else:
            raise InputError(f"unknown line tag {tag!r}", lineno)
    if kind is None:
        raise InputError("missing problem line")
    if len(pairs) != m:
        raise InputError(f"problem line announces {m} edges, found {len(pairs)}")
    graph = WeightedSymmetricDigraph.from_pairs(n, pairs.values())
    return Instance(graph, kind, tuple(comments))


def serialize_instance(inst: Instance) -> str:
    g = inst.graph
    lines = [f"c {c}".rstrip() for c in inst.comments]
    lines.append(f"p {inst.kind} {g.n} {len(g.edge_pairs)}")
    for u, v in g.edge_pairs:
        if inst.kind == "cg":
            lines.append(f"e {u} {v}")
        else:
            lines.append(f"e {u} {v} {format_rational(g.weights[(u, v)])} {format_rational(g.weights[(v, u)])}")
    return "\n".join(lines) + "\n"


def _parse_arcs(text: str, tags: tuple[str, ...]) -> list[Arc]:
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] not in tags or len(parts) != 3:
            raise InputError(f"expected '{tags[0]} <u> <v>'", lineno)
        arcs.append((_int(parts[1], "vertex", lineno), _int(parts[2], "vertex", lineno)))
    return arcs


def parse_orientation(text: str) -> list[Arc]:
    return _parse_arcs(text, ("o", "t"))


def parse_breaker(text: str, g: WeightedSymmetricDigraph) -> Breaker:
    return breaker_from_orientation(g, _parse_arcs(text, ("t",)))


def serialize_breaker(t: Breaker) -> str:
    return "".join(f"t {u} {v}\n" for u, v in t.forward_arcs)


def rational_str(x) -> str:
    if x is None:
        return None
    if x == INF:
        return "inf"
    return format_rational(x)


def coloring_to_doc(c: CircularColoring) -> dict:
    return {"r": format_rational(c.r), "colors": {str(v): format_rational(x) for v, x in c.colors.items()}}


def dump_coloring(c: CircularColoring) -> str:
    return json.dumps(coloring_to_doc(c), indent=2, sort_keys=True) + "\n"


def parse_coloring(text: str) -> CircularColoring:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"colouring document is not JSON: {exc}") from None
    if not isinstance(doc, dict) or "r" not in doc or not isinstance(doc.get("colors"), dict):
        raise InputError("colouring document needs fields 'r' and 'colors'")
    try:
        colors = {int(v): parse_rational(x) for v, x in doc["colors"].items()}
    except ValueError as exc:
        raise InputError(f"bad colour entry: {exc}") from None
    return CircularColoring(parse_rational(doc["r"]), colors)
