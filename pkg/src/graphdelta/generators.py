"""Constructors for the named graph families and exhaustive census streams.

Wheel indexing counts *all* vertices: ``wheel(n)`` is a hub joined to every
vertex of a cycle on ``n - 1`` vertices, so ``wheel(4)`` is ``K4``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .canonical import canonical_code, graph_from_code
from .errors import InvalidSpec, SimpleModeViolation
from .metric_graph import MetricGraph, Mode


def path(n: int, mode: Mode | str = Mode.SIMPLE) -> MetricGraph:
    """Path on ``n`` vertices ``0-1-...-(n-1)``."""
    if n < 1:
        raise InvalidSpec("path needs n >= 1")
    return MetricGraph(n, [(i, i + 1) for i in range(n - 1)], mode)


def cycle(n: int, mode: Mode | str = Mode.SIMPLE) -> MetricGraph:
    """Cycle on ``n`` vertices; in multi mode ``n`` may be 1 (a loop) or 2."""
    mode = Mode(mode)
    if n < (1 if mode is Mode.MULTI else 3):
        raise InvalidSpec(f"cycle needs n >= 3 in simple mode, got {n}")
    return MetricGraph(n, [(i, (i + 1) % n) for i in range(n)], mode)


def complete(n: int, mode: Mode | str = Mode.SIMPLE) -> MetricGraph:
    if n < 1:
        raise InvalidSpec("complete graph needs n >= 1")
    return MetricGraph(n, list(itertools.combinations(range(n), 2)), mode)


def wheel(n: int, mode: Mode | str = Mode.SIMPLE) -> MetricGraph:
    """Wheel with ``n`` vertices in total: hub 0 and rim ``1..n-1``.

    Spokes come first (edge ``i - 1`` joins the hub to rim vertex ``i``), then
    the rim edges ``[i, i+1]`` in order, closing with ``[n-1, 1]``.
    """
    if n < 4:
        raise InvalidSpec(f"wheel needs n >= 4, got {n}")
    spokes = [(0, i) for i in range(1, n)]
    rim = [(i, i + 1) for i in range(1, n - 1)] + [(n - 1, 1)]
    return MetricGraph(n, spokes + rim, mode)


def theta(a: int, b: int, c: int, mode: Mode | str = Mode.SIMPLE) -> MetricGraph:
    """Poles 0 and 1 joined by internally disjoint paths of lengths a, b, c.

    Edges of the length-``a`` path come first, then ``b``, then ``c``.
    ``a == b == 1`` needs multi mode because it creates a double edge.
    """
    mode = Mode(mode)
    if not 1 <= a <= b <= c:
        raise InvalidSpec(f"theta needs 1 <= a <= b <= c, got ({a}, {b}, {c})")
    if a == b == 1 and mode is Mode.SIMPLE:
        raise InvalidSpec("theta(1, 1, c) has a double edge; use multi mode")
    edges = []
    nxt = 2
    for length in (a, b, c):
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return MetricGraph(nxt, edges, mode)


def diamond(mode: Mode | str = Mode.SIMPLE) -> MetricGraph:
    """``K4`` minus an edge; edge 0 joins the two degree-3 vertices."""
    return MetricGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)], mode)


def random_connected(n: int, m: int, seed: int, mode: Mode | str = Mode.SIMPLE) -> MetricGraph:
    """Seeded random connected simple graph with ``n`` vertices and ``m`` edges."""
    if n < 1 or not n - 1 <= m <= n * (n - 1) // 2:
        raise InvalidSpec(f"need n >= 1 and n-1 <= m <= n(n-1)/2, got n={n}, m={m}")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    rest = [p for p in itertools.combinations(range(n), 2) if p not in edges]
    rng.shuffle(rest)
    edges.update(rest[: m - len(edges)])
    return MetricGraph(n, sorted(edges), mode)


# -- exhaustive census -------------------------------------------------------

def _extend(codes, n_old, choices, loops, mode):
    """Add one vertex to every graph in ``codes`` with each neighbourhood choice."""
    out = set()
    for code in codes:
        base = graph_from_code(code, mode)
        for mults in choices:
            for lp in loops:
                edges = list(base.edges)
                for v, k in enumerate(mults):
                    edges.extend([(v, n_old)] * k)
                edges.extend([(n_old, n_old)] * lp)
                out.add(canonical_code(MetricGraph(n_old + 1, edges, mode)))
    return out


def _census(n: int, multi: bool) -> list:
    mode = Mode.MULTI if multi else Mode.SIMPLE
    top = 2 if multi else 1
    loops = (0, 1) if multi else (0,)
    level = {canonical_code(MetricGraph(1, [(0, 0)] * lp, mode)) for lp in loops}
    for k in range(1, n):
        choices = [c for c in itertools.product(range(top + 1), repeat=k) if any(c)]
        level = _extend(level, k, choices, loops, mode)
    return sorted(level)


def all_connected(n: int) -> Iterator[MetricGraph]:
    """One representative per isomorphism class of connected simple graphs on n vertices.

    Every connected graph has a vertex whose removal leaves it connected, so
    extending the connected graphs on ``n - 1`` vertices by one vertex with
    each non-empty neighbourhood reaches every class.  Output is sorted by
    canonical code and each graph is the canonical representative.

    Examples
    --------
    >>> sum(1 for _ in all_connected(4))
    6
    """
    if n < 1:
        raise InvalidSpec("n must be at least 1")
    for code in _census(n, multi=False):
        yield graph_from_code(code, Mode.SIMPLE)


def all_connected_multigraphs(n: int) -> Iterator[MetricGraph]:
    """Connected multigraphs on n vertices, edge multiplicity <= 2, <= 1 loop per vertex."""
    if n < 1:
        raise InvalidSpec("n must be at least 1")
    for code in _census(n, multi=True):
        yield graph_from_code(code, Mode.MULTI)


# -- family specs ------------------------------------------------------------

_ARITY = {
    "path": 1, "cycle": 1, "complete": 1, "wheel": 1, "theta": 3,
    "diamond": 0, "random": 3, "all": 1, "all-multi": 1,
}


@dataclass(frozen=True)
class FamilySpec:
    """A named family with integer parameters, e.g. ``FamilySpec("theta", (1, 4, 4))``."""

    kind: str
    args: tuple = ()
    mode: Mode = Mode.SIMPLE

    def __post_init__(self):
        if self.kind not in _ARITY:
            raise InvalidSpec(f"unknown family {self.kind!r}; choose from {', '.join(_ARITY)}")
        if len(self.args) != _ARITY[self.kind]:
            raise InvalidSpec(f"{self.kind} takes {_ARITY[self.kind]} integer argument(s)")

    @property
    def is_stream(self) -> bool:
        return self.kind in ("all", "all-multi")

    def __str__(self):
        return " ".join([self.kind, *map(str, self.args)])


def parse_family(words, mode: Mode | str = Mode.SIMPLE) -> FamilySpec:
    if not words:
        raise InvalidSpec("missing family name")
    try:
        args = tuple(int(w) for w in words[1:])
    except ValueError:
        raise InvalidSpec(f"family arguments must be integers: {' '.join(words[1:])}") from None
    return FamilySpec(words[0], args, Mode(mode))


def generate(spec: FamilySpec):
    """Build the graph (or stream of graphs) described by ``spec``."""
    k, a, mode = spec.kind, spec.args, spec.mode
    try:
        if k == "path":
            return path(*a, mode=mode)
        if k == "cycle":
            return cycle(*a, mode=mode)
        if k == "complete":
            return complete(*a, mode=mode)
        if k == "wheel":
            return wheel(*a, mode=mode)
        if k == "theta":
            return theta(*a, mode=mode)
        if k == "diamond":
            return diamond(mode)
        if k == "random":
            return random_connected(*a, mode=mode)
        if k == "all":
            return all_connected(*a)
        return all_connected_multigraphs(*a)
    except SimpleModeViolation as exc:
        raise InvalidSpec(str(exc)) from exc
