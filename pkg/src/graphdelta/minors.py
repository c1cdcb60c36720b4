"""Minor operations and structural analysis.

Contraction follows two conventions selected by the graph's mode.  In simple
mode, contracting ``e = [A, B]`` merges the pair ``[v, A]``, ``[v, B]`` into a
single edge ``[v, V_e]``.  In multi mode every surviving edge is kept, so such
pairs become parallel edges and extra ``A``--``B`` edges become loops at
``V_e``.

All point-valued maps work on exact eighth-unit offsets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import (
    LoopContraction,
    MinorSequenceError,
    WouldDisconnect,
)
from .metric_graph import UNIT, GraphPoint, MetricGraph, Mode, format_graph

KEPT = "kept"
MERGED = "merged"
COLLAPSED = "collapsed"


class EdgeImage(NamedTuple):
    """Where an edge of ``G`` goes in ``G/e``.

    ``kind`` is ``"kept"``, ``"merged"`` (simple-mode pair replaced by one
    edge) or ``"collapsed"`` (the contracted edge itself, ``edge == -1``).
    ``flipped`` is true when the new edge is stored with its endpoints in the
    opposite order, so an offset ``t`` becomes ``8 - t``.
    """

    kind: str
    edge: int
    flipped: bool = False


@dataclass(frozen=True)
class ContractionResult:
    """The quotient ``G/e`` together with the maps from ``G``."""

    source: MetricGraph
    edge: int
    quotient: MetricGraph
    merged_vertex: int
    vertex_map: tuple
    edge_map: tuple

    @property
    def merged_pairs(self) -> int:
        return sum(1 for im in self.edge_map if im.kind == MERGED) // 2

    def map_point(self, p: GraphPoint) -> GraphPoint:
        """Image of ``p`` under the contraction map."""
        if p.edge < 0:
            return GraphPoint.vertex(self.vertex_map[p.pos])
        if p.edge == self.edge:
            return GraphPoint.vertex(self.merged_vertex)
        img = self.edge_map[p.edge]
        t = UNIT - p.pos if img.flipped else p.pos
        return self.quotient.point(img.edge, t)

    def to_text(self, labels=None) -> str:
        """Quotient in the graph text format with a ``# vertex_map`` block.

        ``labels`` gives the input ids of the source vertices, if they were
        not already ``0..n-1``.
        """
        labels = labels or range(self.source.n)
        a, b = self.source.edges[self.edge]
        comments = [f"contracted edge {labels[a]} {labels[b]}",
                    f"merged vertex {self.merged_vertex}", "vertex_map"]
        comments.extend(f"{labels[old]} -> {new}" for old, new in enumerate(self.vertex_map))
        return format_graph(self.quotient, comments)


def contract_edge(g: MetricGraph, e: int) -> ContractionResult:
    """Contract edge ``e`` of ``g``.

    The merged vertex ``V_e`` takes the smaller endpoint id; vertices above the
    larger endpoint shift down by one.  Surviving edges keep their relative
    order.

    Raises
    ------
    LoopContraction
        If ``e`` is a loop.

    Examples
    --------
    >>> from graphdelta.metric_graph import build_graph
    >>> r = contract_edge(build_graph([(0, 1), (1, 2), (2, 3), (3, 0)]), 0)
    >>> r.quotient.n, r.quotient.m
    (3, 3)
    """
    A, B = g.edges[e]
    if A == B:
        raise LoopContraction(f"edge {e} is a loop at vertex {A}")
    lo, hi = min(A, B), max(A, B)
    vmap = [v if v < hi else v - 1 for v in range(g.n)]
    vmap[hi] = lo
    simple = g.mode is Mode.SIMPLE
    new_edges: list = []
    first_src: list = []
    index: dict = {}
    emap: list = [None] * g.m
    for i, (a, b) in enumerate(g.edges):
        if i == e:
            emap[i] = EdgeImage(COLLAPSED, -1)
            continue
        a2, b2 = vmap[a], vmap[b]
        if simple:
            key = (min(a2, b2), max(a2, b2))
            j = index.get(key)
            if j is not None:
                src = first_src[j]
                emap[src] = emap[src]._replace(kind=MERGED)
                emap[i] = EdgeImage(MERGED, j, new_edges[j] != (a2, b2))
                continue
            index[key] = len(new_edges)
        emap[i] = EdgeImage(KEPT, len(new_edges))
        first_src.append(i)
        new_edges.append((a2, b2))
    quotient = MetricGraph(g.n - 1, new_edges, g.mode)
    return ContractionResult(g, e, quotient, lo, tuple(vmap), tuple(emap))


def h_map(g: MetricGraph, e: int, p: GraphPoint) -> GraphPoint:
    """Image of ``p`` in ``G/e``; see :meth:`ContractionResult.map_point`."""
    g.check_point(p)
    return contract_edge(g, e).map_point(p)


def is_cut_edge(g: MetricGraph, e: int) -> bool:
    return len(g.components(skip_edge=e)) > 1


def is_cut_vertex(g: MetricGraph, v: int) -> bool:
    return len(g.components(skip_vertex=v)) > 1


def delete_edge(g: MetricGraph, e: int) -> MetricGraph:
    """Remove edge ``e``; higher edge ids shift down by one.

    Raises
    ------
    WouldDisconnect
        If ``e`` is a cut-edge.
    """
    comps = g.components(skip_edge=e)
    if len(comps) > 1:
        raise WouldDisconnect(g.edges[e], comps)
    return MetricGraph(g.n, g.edges[:e] + g.edges[e + 1:], g.mode)


def distance_without_edge(g: MetricGraph, e: int) -> Fraction:
    """``d_{G\\e}(A, B)`` in units, for the endpoints of ``e``."""
    a, b = g.edges[e]
    return Fraction(delete_edge(g, e).dist[a][b], UNIT)


# -- minor sequences ---------------------------------------------------------

@dataclass(frozen=True)
class MinorOp:
    kind: str
    edge: int

    def __post_init__(self):
        if self.kind not in ("contract", "delete"):
            raise ValueError(f"unknown minor operation {self.kind!r}")

    @classmethod
    def contract(cls, e: int) -> "MinorOp":
        return cls("contract", e)

    @classmethod
    def delete(cls, e: int) -> "MinorOp":
        return cls("delete", e)

    def apply(self, g: MetricGraph) -> MetricGraph:
        if self.kind == "contract":
            return contract_edge(g, self.edge).quotient
        return delete_edge(g, self.edge)


@dataclass(frozen=True)
class BoundStep:
    """Interval for δ of the graph before ``op``, given the interval after it."""

    index: int
    op: MinorOp
    before: MetricGraph
    lower: Fraction
    upper: Fraction
    detour: Fraction | None = None


@dataclass(frozen=True)
class BoundChain:
    final_delta: Fraction
    steps: tuple = field(default_factory=tuple)

    @property
    def interval(self) -> tuple:
        if not self.steps:
            return (self.final_delta, self.final_delta)
        return (self.steps[0].lower, self.steps[0].upper)

    def contains(self, value) -> bool:
        lo, hi = self.interval
        return lo <= value <= hi


def apply_minor_sequence(g: MetricGraph, ops: Sequence[MinorOp], delta=None):
    """Apply ``ops`` in order and chain the quantitative δ bounds backwards.

    Edge ids in each op refer to the graph current at that step.  ``delta``
    computes δ of the final minor (defaults to exact computation).  Returns
    ``(minor, chain)`` where ``chain.interval`` bounds δ(g) in terms of δ of
    the minor.

    Raises
    ------
    MinorSequenceError
        Wrapping the failure of the step with the given index.
    """
    graphs = [g]
    detours = []
    for k, op in enumerate(ops):
        cur = graphs[-1]
        try:
            if not 0 <= op.edge < cur.m:
                raise IndexError(f"edge {op.edge} out of range 0..{cur.m - 1}")
            detours.append(distance_without_edge(cur, op.edge) if op.kind == "delete" else None)
            graphs.append(op.apply(cur))
        except Exception as exc:
            raise MinorSequenceError(k, exc) from exc
    if delta is None:
        from .hyperbolicity import delta_exact

        final = delta_exact(graphs[-1]).delta
    else:
        final = Fraction(delta(graphs[-1]))
    lo = hi = final
    steps = []
    for k in range(len(ops) - 1, -1, -1):
        d = detours[k]
        if ops[k].kind == "contract":
            lo, hi = lo / 3, Fraction(16, 3) * hi + 1
        else:
            lo, hi = max(lo / 5, (d + 1) / 4), 6 * hi + d
        steps.append(BoundStep(k, ops[k], graphs[k], lo, hi, d))
    steps.reverse()
    return graphs[-1], BoundChain(final, tuple(steps))


# -- blocks ------------------------------------------------------------------

@dataclass(frozen=True)
class TDecomposition:
    """Blocks of a graph with the maps back into it.

    ``block_vertices[i]`` lists the original ids of block ``i``'s vertices in
    increasing order (block vertex ``j`` is ``block_vertices[i][j]``) and
    ``block_edges[i]`` the original edge ids in increasing order.
    """

    blocks: tuple
    cut_vertices: frozenset
    membership: tuple
    block_vertices: tuple
    block_edges: tuple

    def __len__(self):
        return len(self.blocks)


def _block_edge_sets(g: MetricGraph) -> list:
    n = g.n
    inc = [[] for _ in range(n)]
    loops = []
    for i, (a, b) in enumerate(g.edges):
        if a == b:
            loops.append([i])
            continue
        inc[a].append((i, b))
        inc[b].append((i, a))
    disc = [-1] * n
    low = [0] * n
    timer = 0
    found = []
    stack_e: list = []
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        frames = [(root, -1, iter(inc[root]))]
        while frames:
            v, pe, it = frames[-1]
            advanced = False
            for eid, w in it:
                if eid == pe:
                    continue
                if disc[w] < 0:
                    stack_e.append(eid)
                    disc[w] = low[w] = timer
                    timer += 1
                    frames.append((w, eid, iter(inc[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    stack_e.append(eid)
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            frames.pop()
            if frames:
                u = frames[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    comp = []
                    while True:
                        x = stack_e.pop()
                        comp.append(x)
                        if x == pe:
                            break
                    found.append(sorted(comp))
    found.extend(loops)
    found.sort()
    return found


def blocks(g: MetricGraph) -> TDecomposition:
    """Canonical decomposition into maximal two-connected blocks and bridges.

    Loops form their own blocks: a loop meets the rest of the graph only in its
    vertex, which therefore separates it metrically.  Blocks are ordered by
    their smallest edge id.  The edgeless one-vertex graph is its own block.
    """
    if g.m == 0:
        return TDecomposition((g,), frozenset(), (), ((0,),), ((),))
    sets = _block_edge_sets(g)
    membership = [0] * g.m
    graphs, bverts = [], []
    count = [0] * g.n
    for idx, eids in enumerate(sets):
        verts = sorted({v for i in eids for v in g.edges[i]})
        for v in verts:
            count[v] += 1
        local = {v: j for j, v in enumerate(verts)}
        for i in eids:
            membership[i] = idx
        graphs.append(MetricGraph(len(verts), [(local[g.edges[i][0]], local[g.edges[i][1]]) for i in eids], g.mode))
        bverts.append(tuple(verts))
    cuts = frozenset(v for v in range(g.n) if count[v] > 1)
    return TDecomposition(tuple(graphs), cuts, tuple(membership), tuple(bverts),
                          tuple(tuple(s) for s in sets))


# -- cycles ------------------------------------------------------------------

@dataclass(frozen=True)
class CactusProfile:
    """Cycle structure summary.

    ``circumference`` is the longest cycle length in units (``None`` for
    trees).  ``max_cycles`` lists the edge sets of the longest cycles as sorted
    tuples of edge ids; ``exact`` is false when the search hit its work cap.
    """

    is_cactus: bool
    circumference: int | None
    max_cycle_count: int
    exact: bool = True
    max_cycles: tuple = ()


def _longest_cycles(g: MetricGraph, eids, budget: list):
    """Longest simple cycles within one block, by exhaustive DFS."""
    verts = sorted({v for i in eids for v in g.edges[i]})
    adj = {v: [] for v in verts}
    for i in eids:
        a, b = g.edges[i]
        if a != b:
            adj[a].append((i, b))
            adj[b].append((i, a))
    best_len = 0
    best: set = set()
    for s in verts:
        on = {s}
        path: list = []

        def dfs(x):
            nonlocal best_len
            for eid, y in adj[x]:
                if budget[0] <= 0:
                    return
                budget[0] -= 1
                if path and eid == path[-1]:
                    continue
                if y == s and path:
                    L = len(path) + 1
                    if L > best_len:
                        best.clear()
                        best_len = L
                    if L == best_len:
                        best.add(tuple(sorted(path + [eid])))
                    continue
                if y < s or y in on:
                    continue
                on.add(y)
                path.append(eid)
                dfs(y)
                path.pop()
                on.discard(y)

        dfs(s)
    return best_len, best


def cactus_profile(g: MetricGraph, work_cap: int = 10_000_000) -> CactusProfile:
    """Cactus test, circumference and count of longest cycles.

    Examples
    --------
    >>> from graphdelta.metric_graph import build_graph
    >>> p = cactus_profile(build_graph([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]))
    >>> p.is_cactus, p.circumference, p.max_cycle_count
    (True, 3, 2)
    """
    td = blocks(g)
    is_cactus = all(b.m <= 1 or b.m == b.n for b in td.blocks)
    best_len = 0
    best: set = set()
    budget = [work_cap]
    for blk, eids in zip(td.blocks, td.block_edges):
        if blk.m == 0 or (blk.m == 1 and blk.n == 2):
            continue
        if blk.m == blk.n:
            L, cyc = blk.m, {tuple(eids)}
        else:
            L, cyc = _longest_cycles(g, eids, budget)
        if L > best_len:
            best_len, best = L, set(cyc)
        elif L == best_len:
            best |= cyc
    if best_len == 0:
        return CactusProfile(is_cactus, None, 0, budget[0] > 0)
    return CactusProfile(is_cactus, best_len, len(best), budget[0] > 0, tuple(sorted(best)))


def cycles3_through_edge(g: MetricGraph, e: int) -> list:
    """Triangles containing edge ``e`` as vertex triples ``(A, B, v)``, by ``v``."""
    a, b = g.edges[e]
    if a == b:
        return []
    na = {w for _, w in g.incidence[a]}
    nb = {w for _, w in g.incidence[b]}
    return [(a, b, v) for v in sorted((na & nb) - {a, b})]
