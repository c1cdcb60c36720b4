"""Finite metric multigraphs with unit-length edges.

Every length in this module is an integer number of *eighth-units*: one edge
has length ``UNIT == 8``.  Points of the graph are either vertices or interior
points of an edge at an integral eighth offset, so all distances between such
points are integers and no floating point is involved anywhere.
"""

from __future__ import annotations

import heapq
import itertools
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import (
    Disconnected,
    EmptyGraph,
    InvalidPoint,
    ParseError,
    SimpleModeViolation,
)

UNIT = 8

Segment = tuple  # (edge id, from offset, to offset), offsets in eighths


class Mode(str, Enum):
    SIMPLE = "simple"
    MULTI = "multi"

    def __str__(self):
        return self.value


class GraphPoint(NamedTuple):
    """A vertex (``edge == -1``, ``pos`` is the vertex id) or an interior point.

    Interior points carry the edge id and an offset in eighths, strictly
    between 0 and 8, measured from the edge's first endpoint.  Tuple ordering
    puts all vertices first, then interior points by edge id and offset.
    """

    edge: int
    pos: int

    @classmethod
    def vertex(cls, v: int) -> "GraphPoint":
        return cls(-1, v)

    @classmethod
    def interior(cls, e: int, offset: int) -> "GraphPoint":
        if not 0 < offset < UNIT:
            raise InvalidPoint(f"interior offset {offset} outside (0, {UNIT})")
        return cls(e, offset)

    @property
    def is_vertex(self) -> bool:
        return self.edge < 0

    def __str__(self):
        if self.edge < 0:
            return f"v{self.pos}"
        return f"e{self.edge}@{_fmt_eighths(self.pos)}"


def _fmt_eighths(x) -> str:
    f = Fraction(x, UNIT)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class GridSpec:
    """Corner grid: all vertices plus offsets that are multiples of 8/resolution."""

    resolution: int = 2

    def __post_init__(self):
        if self.resolution not in (1, 2, 4, 8):
            raise ValueError(f"resolution must divide 8, got {self.resolution}")

    @property
    def step(self) -> int:
        return UNIT // self.resolution


@dataclass(frozen=True)
class GeodesicPath:
    start: GraphPoint
    end: GraphPoint
    segments: tuple
    total_length: int

    def reversed(self) -> "GeodesicPath":
        segs = tuple((e, b, a) for e, a, b in reversed(self.segments))
        return GeodesicPath(self.end, self.start, segs, self.total_length)

    def __len__(self):
        return len(self.segments)


class GeodesicSet(NamedTuple):
    paths: list
    truncated: bool


class MetricGraph:
    """Connected multigraph whose edges are isometric copies of [0, 1].

    Use :func:`build_graph` to construct one from an arbitrary edge list; the
    constructor expects vertex ids already compacted to ``0..n-1``.
    Instances are immutable and safe to share between threads and processes.
    """

    def __init__(self, n: int, edges: Iterable[tuple], mode: Mode | str = Mode.SIMPLE):
        mode = Mode(mode)
        edges = tuple((int(a), int(b)) for a, b in edges)
        if n < 1:
            raise EmptyGraph("a metric graph needs at least one vertex")
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a}, {b}) references a vertex outside 0..{n - 1}")
        if mode is Mode.SIMPLE:
            seen = set()
            for a, b in edges:
                if a == b:
                    raise SimpleModeViolation((a, b), "loop")
                key = (min(a, b), max(a, b))
                if key in seen:
                    raise SimpleModeViolation((a, b), "parallel edge")
                seen.add(key)
        self._n = n
        self._edges = edges
        self._mode = mode
        comps = self.components()
        if len(comps) > 1:
            raise Disconnected(comps)

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> tuple:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def mode(self) -> Mode:
        return self._mode

    @property
    def vertices(self) -> range:
        return range(self._n)

    def __repr__(self):
        return f"MetricGraph(n={self._n}, edges={list(self._edges)}, mode={self._mode.value!r})"

    def __eq__(self, other):
        if not isinstance(other, MetricGraph):
            return NotImplemented
        return (self._n, self._edges, self._mode) == (other._n, other._edges, other._mode)

    def __hash__(self):
        return hash((self._n, self._edges, self._mode))

    def __reduce__(self):
        return (MetricGraph, (self._n, self._edges, self._mode))

    def components(self, skip_edge: int | None = None, skip_vertex: int | None = None):
        adj = [[] for _ in range(self._n)]
        for i, (a, b) in enumerate(self._edges):
            if i == skip_edge or skip_vertex in (a, b):
                continue
            adj[a].append(b)
            adj[b].append(a)
        seen = [False] * self._n
        comps = []
        for s in range(self._n):
            if seen[s] or s == skip_vertex:
                continue
            comp = [s]
            seen[s] = True
            stack = [s]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        stack.append(y)
            comps.append(comp)
        return comps

    @cached_property
    def incidence(self) -> tuple:
        """Per vertex, the (edge id, other endpoint) pairs of non-loop edges."""
        inc = [[] for _ in range(self._n)]
        for i, (a, b) in enumerate(self._edges):
            if a == b:
                continue
            inc[a].append((i, b))
            inc[b].append((i, a))
        return tuple(tuple(x) for x in inc)

    @cached_property
    def dist(self) -> tuple:
        """All-pairs vertex distances in eighth-units (BFS on unit edges)."""
        rows = []
        inc = self.incidence
        for s in range(self._n):
            d = [-1] * self._n
            d[s] = 0
            q = deque([s])
            while q:
                x = q.popleft()
                for _, y in inc[x]:
                    if d[y] < 0:
                        d[y] = d[x] + 1
                        q.append(y)
            rows.append(tuple(UNIT * v for v in d))
        return tuple(rows)

    @cached_property
    def dist_array(self) -> np.ndarray:
        arr = np.array(self.dist, dtype=np.int64).reshape(self._n, self._n)
        arr.setflags(write=False)
        return arr

    def point(self, e: int, offset: int) -> GraphPoint:
        """Canonical point at ``offset`` eighths along edge ``e``."""
        a, b = self._edges[e]
        if offset == 0:
            return GraphPoint.vertex(a)
        if offset == UNIT:
            return GraphPoint.vertex(b)
        return GraphPoint.interior(e, offset)

    def check_point(self, p: GraphPoint) -> None:
        if p.edge < 0:
            if not 0 <= p.pos < self._n:
                raise InvalidPoint(f"vertex {p.pos} not in graph")
        elif not (0 <= p.edge < self.m and 0 < p.pos < UNIT):
            raise InvalidPoint(f"invalid interior point {p}")

    def exits(self, p: GraphPoint) -> tuple:
        """(vertex, cost) pairs for leaving ``p`` towards the vertex set."""
        if p.edge < 0:
            return ((p.pos, 0),)
        a, b = self._edges[p.edge]
        return ((a, p.pos), (b, UNIT - p.pos))

    def vertex_point_distance(self, v: int, p: GraphPoint) -> int:
        row = self.dist[v]
        if p.edge < 0:
            return row[p.pos]
        a, b = self._edges[p.edge]
        return min(row[a] + p.pos, row[b] + UNIT - p.pos)

    def vertex_routes(self, u: int, w: int) -> Iterator[tuple]:
        """All vertex-to-vertex geodesics as segment tuples, lexicographic by edge id."""
        dw = [row[w] for row in self.dist]
        inc = self.incidence
        edges = self._edges

        def walk(x, acc):
            if x == w:
                yield tuple(acc)
                return
            target = dw[x] - UNIT
            for eid, y in inc[x]:
                if dw[y] == target:
                    acc.append((eid, 0, UNIT) if edges[eid][0] == x else (eid, UNIT, 0))
                    yield from walk(y, acc)
                    acc.pop()

        return walk(u, [])


def build_graph(
    edge_list: Sequence[tuple],
    mode: Mode | str = Mode.SIMPLE,
    vertices: Iterable[int] = (),
) -> MetricGraph:
    """Validate an edge list and return the corresponding :class:`MetricGraph`.

    Vertex ids may be arbitrary non-negative integers; they are compacted to
    ``0..n-1`` preserving their relative order.  ``vertices`` declares extra
    ids, which is how the single-vertex graph is built.

    >>> g = build_graph([(0, 1), (1, 2), (2, 0)])
    >>> g.n, g.m
    (3, 3)
    """
    mode = Mode(mode)
    ids = set(vertices)
    for a, b in edge_list:
        if a < 0 or b < 0:
            raise ValueError(f"vertex ids must be non-negative, got ({a}, {b})")
        ids.update((a, b))
    if not ids:
        raise EmptyGraph("no edges and no vertices given")
    order = {v: i for i, v in enumerate(sorted(ids))}
    if mode is Mode.SIMPLE:
        seen = set()
        for a, b in edge_list:
            if a == b:
                raise SimpleModeViolation((a, b), "loop")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise SimpleModeViolation((a, b), "parallel edge")
            seen.add(key)
    edges = [(order[a], order[b]) for a, b in edge_list]
    try:
        return MetricGraph(len(order), edges, mode)
    except Disconnected as exc:
        back = sorted(ids)
        raise Disconnected([[back[i] for i in c] for c in exc.components]) from None


def vertex_distance_matrix(g: MetricGraph) -> np.ndarray:
    """Vertex distances in eighth-units as a read-only integer matrix."""
    return g.dist_array


def point_distance(g: MetricGraph, p: GraphPoint, q: GraphPoint) -> int:
    """Exact geodesic distance between two points, in eighth-units."""
    if p == q:
        return 0
    best = None
    if p.edge >= 0 and p.edge == q.edge:
        a, b = g.edges[p.edge]
        gap = abs(p.pos - q.pos)
        best = min(gap, UNIT - gap) if a == b else gap
    dist = g.dist
    for u, c1 in g.exits(p):
        row = dist[u]
        for w, c2 in g.exits(q):
            d = c1 + row[w] + c2
            if best is None or d < best:
                best = d
    return best


def grid_points(g: MetricGraph, spec: GridSpec | int = GridSpec()) -> list:
    if isinstance(spec, int):
        spec = GridSpec(spec)
    pts = [GraphPoint.vertex(v) for v in range(g.n)]
    for e in range(g.m):
        pts.extend(GraphPoint(e, t) for t in range(spec.step, UNIT, spec.step))
    return pts


def point_vertex_distances(g: MetricGraph, points: Sequence[GraphPoint]) -> np.ndarray:
    """Matrix whose row i holds the distances from ``points[i]`` to every vertex."""
    D = g.dist_array
    out = np.empty((len(points), g.n), dtype=np.int64)
    for i, p in enumerate(points):
        if p.edge < 0:
            out[i] = D[p.pos]
        else:
            a, b = g.edges[p.edge]
            out[i] = np.minimum(D[a] + p.pos, D[b] + (UNIT - p.pos))
    return out


def pairwise_distances(g: MetricGraph, points: Sequence[GraphPoint]) -> np.ndarray:
    """All distances between ``points`` (eighth-units), vectorised."""
    P = point_vertex_distances(g, points)
    N = len(points)
    out = np.empty((N, N), dtype=np.int64)
    edge_of = np.array([p.edge for p in points], dtype=np.int64)
    pos = np.array([p.pos for p in points], dtype=np.int64)
    for j, q in enumerate(points):
        if q.edge < 0:
            out[:, j] = P[:, q.pos]
            continue
        a, b = g.edges[q.edge]
        col = np.minimum(P[:, a] + q.pos, P[:, b] + (UNIT - q.pos))
        same = edge_of == q.edge
        if same.any():
            gap = np.abs(pos[same] - q.pos)
            if a == b:
                gap = np.minimum(gap, UNIT - gap)
            col[same] = np.minimum(col[same], gap)
        out[:, j] = col
    return out


def _departures(g: MetricGraph, p: GraphPoint):
    if p.edge < 0:
        return [(p.pos, (), 0)]
    a, b = g.edges[p.edge]
    return [(a, ((p.edge, p.pos, 0),), p.pos), (b, ((p.edge, p.pos, UNIT),), UNIT - p.pos)]


def _arrivals(g: MetricGraph, q: GraphPoint):
    if q.edge < 0:
        return [(q.pos, (), 0)]
    a, b = g.edges[q.edge]
    return [(a, ((q.edge, 0, q.pos),), q.pos), (b, ((q.edge, UNIT, q.pos),), UNIT - q.pos)]


def _wrap(pre, mids, suf):
    for mid in mids:
        yield pre + mid + suf


def iter_geodesic_segments(g: MetricGraph, p: GraphPoint, q: GraphPoint, d: int | None = None):
    """Segment tuples of every geodesic from p to q, in lexicographic order."""
    if p == q:
        return iter([()])
    if d is None:
        d = point_distance(g, p, q)
    streams = []
    if p.edge >= 0 and p.edge == q.edge and abs(p.pos - q.pos) == d:
        streams.append(iter([((p.edge, p.pos, q.pos),)]))
    dist = g.dist
    for u, pre, c1 in _departures(g, p):
        for w, suf, c2 in _arrivals(g, q):
            if c1 + dist[u][w] + c2 != d:
                continue
            if u == w and not pre and not suf:
                continue
            streams.append(_wrap(pre, g.vertex_routes(u, w), suf))
    if len(streams) == 1:
        return streams[0]
    return heapq.merge(*streams)


def enumerate_geodesics(g: MetricGraph, p: GraphPoint, q: GraphPoint, cap: int = 256) -> GeodesicSet:
    """All geodesics from ``p`` to ``q`` up to ``cap``, lexicographically ordered.

    ``truncated`` is set when more than ``cap`` geodesics exist.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    g.check_point(p)
    g.check_point(q)
    d = point_distance(g, p, q)
    segs = list(itertools.islice(iter_geodesic_segments(g, p, q, d), cap + 1))
    truncated = len(segs) > cap
    paths = [GeodesicPath(p, q, s, d) for s in segs[:cap]]
    return GeodesicSet(paths, truncated)


def path_length(segments) -> int:
    return sum(abs(b - a) for _, a, b in segments)


def is_tree(g: MetricGraph) -> bool:
    return g.m == g.n - 1


# -- graph text format -------------------------------------------------------

def parse_graph_text(text: str) -> MetricGraph:
    """Parse the line-oriented graph format.

    ``#`` starts a comment, an optional ``mode simple|multi`` directive may
    precede the edges, and each remaining line is ``u v``.  A line holding a
    single integer declares a vertex, which is needed for the one-vertex graph.
    """
    return read_graph(text)[0]


def read_graph(text: str, mode: Mode | str | None = None) -> tuple:
    """Like :func:`parse_graph_text` but also return the input vertex labels.

    ``labels[i]`` is the id used in the text for compacted vertex ``i``.  A
    non-``None`` ``mode`` overrides any ``mode`` directive in the text.
    """
    override = None if mode is None else Mode(mode)
    mode = Mode.SIMPLE
    edges = []
    extra = []
    seen_edge = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "mode":
            if seen_edge or len(parts) != 2 or parts[1] not in ("simple", "multi"):
                raise ParseError(f"line {lineno}: bad mode directive {raw!r}")
            mode = Mode(parts[1])
            continue
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise ParseError(f"line {lineno}: expected integers, got {raw!r}") from None
        if any(x < 0 for x in nums) or len(nums) not in (1, 2):
            raise ParseError(f"line {lineno}: expected 'u v', got {raw!r}")
        seen_edge = True
        if len(nums) == 1:
            extra.append(nums[0])
        else:
            edges.append((nums[0], nums[1]))
    if not edges and not extra:
        raise ParseError("graph text contains no edges")
    labels = tuple(sorted(set(extra).union(*edges)))
    return build_graph(edges, override or mode, extra), labels


def split_documents(text: str) -> list:
    """Split a multi-graph stream on ``---`` separator lines."""
    docs, cur = [], []
    for line in text.splitlines():
        if line.strip() == "---":
            docs.append("\n".join(cur))
            cur = []
        else:
            cur.append(line)
    docs.append("\n".join(cur))
    return [d for d in docs if any(ln.split("#", 1)[0].strip() for ln in d.splitlines())]


def format_graph(g: MetricGraph, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" if c else "#" for c in comments]
    lines.append(f"mode {g.mode.value}")
    if g.m == 0:
        lines.extend(str(v) for v in range(g.n))
    lines.extend(f"{a} {b}" for a, b in g.edges)
    return "\n".join(lines) + "\n"


def parse_point(text: str) -> GraphPoint:
    """Inverse of ``str(GraphPoint)``: ``v3`` or ``e2@3/8`` (offset in units)."""
    text = text.strip()
    try:
        if text.startswith("v"):
            return GraphPoint.vertex(int(text[1:]))
        if text.startswith("e") and "@" in text:
            e, off = text[1:].split("@", 1)
            t = Fraction(off) * UNIT
            if t.denominator != 1:
                raise ValueError(off)
            return GraphPoint.interior(int(e), int(t))
    except (ValueError, ZeroDivisionError):
        pass
    raise ParseError(f"cannot parse point {text!r}")
