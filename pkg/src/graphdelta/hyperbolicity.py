"""Exact hyperbolicity constants of metric graphs.

The thinness of a geodesic triangle ``T`` is the largest distance from a point
of one side to the union of the other two.  ``δ(G)`` is the supremum of that
quantity over every geodesic triangle of ``G``.  For graphs with unit edges
the supremum is attained by triangles that are simple cycles with corners on
vertices and edge midpoints, so it is a finite maximum.

Values are returned as :class:`fractions.Fraction` in units (one edge = 1).
Internally the thinness kernel works in sixteenths, since the maximum of a
piecewise linear distance envelope can fall halfway between eighth marks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels
from ._text import fmt_rational, jsonable
from .errors import NotProperCycles, SideNotGeodesic
from .metric_graph import (
    UNIT,
    GeodesicPath,
    GraphPoint,
    MetricGraph,
    grid_points,
    iter_geodesic_segments,
    is_tree,
    pairwise_distances,
    parse_point,
    path_length,
    point_distance,
)
from .minors import blocks, cactus_profile

SIXTEENTHS = 2 * UNIT


class Method(str, Enum):
    EXACT = "exact"
    BLOCKS = "blocks"
    CACTUS = "cactus"
    FOUR_POINT = "four-point"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class EnumerationOptions:
    """Knobs for :func:`delta_exact`.

    Parameters
    ----------
    geodesic_cap : int
        Maximum number of geodesics enumerated per corner pair.
    cycle_prune : bool
        Skip side combinations that do not form a simple cycle.
    resolution : int
        Corner grid; 2 means vertices and edge midpoints.
    """

    geodesic_cap: int = 256
    cycle_prune: bool = True
    resolution: int = 2

    def __post_init__(self):
        if self.geodesic_cap < 1:
            raise ValueError("geodesic_cap must be at least 1")
        if self.resolution not in (1, 2, 4, 8):
            raise ValueError("resolution must divide 8")


@dataclass(frozen=True)
class GeodesicTriangle:
    corners: tuple
    sides: tuple

    def to_dict(self) -> dict:
        return {
            "corners": [str(p) for p in self.corners],
            "sides": [[list(s) for s in side.segments] for side in self.sides],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GeodesicTriangle":
        corners = tuple(parse_point(s) for s in d["corners"])
        sides = []
        for i, segs in enumerate(d["sides"]):
            segs = tuple(tuple(int(x) for x in s) for s in segs)
            sides.append(GeodesicPath(corners[i], corners[(i + 1) % 3], segs, path_length(segs)))
        return cls(corners, tuple(sides))


class WitnessPoint(NamedTuple):
    """Point of a triangle realising its thinness.

    ``along`` is the distance from the start of side ``side``; ``edge`` and
    ``offset`` locate the point on its host edge (offset from the edge's first
    endpoint).  Both are in units and may be multiples of 1/16.
    """

    side: int
    along: Fraction
    edge: int
    offset: Fraction

    def location(self) -> str:
        return f"e{self.edge}@{fmt_rational(self.offset)}"

    def to_dict(self) -> dict:
        return {"side": self.side, "along": self.along, "edge": self.edge, "offset": self.offset}

    @classmethod
    def from_dict(cls, d: dict) -> "WitnessPoint":
        return cls(int(d["side"]), Fraction(d["along"]), int(d["edge"]), Fraction(d["offset"]))


@dataclass(frozen=True)
class DeltaStats:
    triples: int = 0
    combinations: int = 0
    truncated: bool = False

    def __add__(self, other: "DeltaStats") -> "DeltaStats":
        return DeltaStats(self.triples + other.triples,
                          self.combinations + other.combinations,
                          self.truncated or other.truncated)


@dataclass(frozen=True)
class DeltaReport:
    """Result of a δ computation.

    When ``stats.truncated`` is set some corner pair had more geodesics than
    the cap, and ``delta`` is a certified lower bound.
    """

    delta: Fraction
    method: Method = Method.EXACT
    stats: DeltaStats = field(default_factory=DeltaStats)
    witness: GeodesicTriangle | None = None
    witness_point: WitnessPoint | None = None

    @property
    def exact(self) -> bool:
        return not self.stats.truncated

    def to_dict(self) -> dict:
        return jsonable({
            "delta": self.delta,
            "method": self.method.value,
            "stats": {
                "triples": self.stats.triples,
                "combinations": self.stats.combinations,
                "truncated": self.stats.truncated,
            },
            "witness": None if self.witness is None else self.witness.to_dict(),
            "witness_point": None if self.witness_point is None else self.witness_point.to_dict(),
        })

    @classmethod
    def from_dict(cls, d: dict) -> "DeltaReport":
        st = d.get("stats") or {}
        return cls(
            Fraction(d["delta"]),
            Method(d["method"]),
            DeltaStats(int(st.get("triples", 0)), int(st.get("combinations", 0)),
                       bool(st.get("truncated", False))),
            None if d.get("witness") is None else GeodesicTriangle.from_dict(d["witness"]),
            None if d.get("witness_point") is None else WitnessPoint.from_dict(d["witness_point"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self) -> str:
        lines = [
            f"delta = {fmt_rational(self.delta)}",
            f"method = {self.method.value}",
            f"exact = {'true' if self.exact else 'false'}",
            f"triples = {self.stats.triples}",
            f"combinations = {self.stats.combinations}",
        ]
        if self.witness is not None:
            lines.append("witness_corners = " + " ".join(str(p) for p in self.witness.corners))
            for i, side in enumerate(self.witness.sides):
                segs = " ".join(f"{e}:{fmt_rational(Fraction(a, UNIT))}-{fmt_rational(Fraction(b, UNIT))}"
                                for e, a, b in side.segments)
                lines.append(f"witness_side{i} = {segs or '-'}")
        if self.witness_point is not None:
            wp = self.witness_point
            lines.append(f"witness_point = side {wp.side} along {fmt_rational(wp.along)} at {wp.location()}")
        return "\n".join(lines) + "\n"


# -- triangle thinness -------------------------------------------------------

def _validate_side(g: MetricGraph, side: GeodesicPath, start: GraphPoint, end: GraphPoint, i: int):
    if side.start != start or side.end != end:
        raise SideNotGeodesic(f"side {i} does not join corners {start} and {end}")
    loc = start
    for e, a, b in side.segments:
        if not (0 <= e < g.m and 0 <= a <= UNIT and 0 <= b <= UNIT and a != b):
            raise SideNotGeodesic(f"side {i} has an invalid segment {(e, a, b)}")
        if g.point(e, a) != loc:
            raise SideNotGeodesic(f"side {i} is not contiguous at segment {(e, a, b)}")
        loc = g.point(e, b)
    if loc != end:
        raise SideNotGeodesic(f"side {i} does not end at {end}")
    length = path_length(side.segments)
    if length != side.total_length or length != point_distance(g, start, end):
        raise SideNotGeodesic(
            f"side {i} has length {Fraction(length, UNIT)} but its corners are "
            f"{Fraction(point_distance(g, start, end), UNIT)} apart")


def _witness_point(segments, side: int, seg: int, pos16: int) -> WitnessPoint:
    along = sum(2 * abs(b - a) for _, a, b in segments[:seg])
    e, a, _ = segments[seg]
    along += abs(pos16 - 2 * a)
    return WitnessPoint(side, Fraction(along, SIXTEENTHS), e, Fraction(pos16, SIXTEENTHS))


def _pack(g: MetricGraph, kernel):
    return kernel.pack_graph(g.dist, [a for a, _ in g.edges], [b for _, b in g.edges])


def triangle_thinness(g: MetricGraph, t: GeodesicTriangle, *, backend: str | None = None):
    """Exact thinness of a geodesic triangle.

    Returns
    -------
    (Fraction, WitnessPoint or None)
        The thinness in units and the first point in traversal order where it
        is attained (``None`` for a triangle collapsed to a point).

    Raises
    ------
    SideNotGeodesic
        If a side is not a shortest path between its corners.
    """
    x, y, z = t.corners
    for i, (s, e) in enumerate(((x, y), (y, z), (z, x))):
        _validate_side(g, t.sides[i], s, e, i)
    kernel = _kernels.backend if backend is None else _kernels.load(backend)
    gp = _pack(g, kernel)
    packed = [kernel.pack_path(s.segments) for s in t.sides]
    val, side, seg, pos = kernel.triangle_sup(gp, *packed)
    if val <= 0:
        return Fraction(0), None
    return Fraction(val, SIXTEENTHS), _witness_point(t.sides[side].segments, side, seg, pos)


# -- δ(G) --------------------------------------------------------------------

class _Side:
    __slots__ = ("path", "packed", "verts", "spans")

    def __init__(self, g: MetricGraph, path: GeodesicPath, kernel):
        self.path = path
        self.packed = kernel.pack_path(path.segments)
        verts = set()
        spans: dict = {}
        edges = g.edges
        for e, a, b in path.segments:
            lo, hi = (a, b) if a < b else (b, a)
            spans.setdefault(e, []).append((lo, hi))
            if lo == 0:
                verts.add(edges[e][0])
            if hi == UNIT:
                verts.add(edges[e][1])
        if path.start.edge < 0:
            verts.add(path.start.pos)
        if path.end.edge < 0:
            verts.add(path.end.pos)
        self.verts = frozenset(verts)
        self.spans = spans


def _meets_only(s1: _Side, s2: _Side, allowed) -> bool:
    """True when the two sides intersect only in points of ``allowed``."""
    for v in s1.verts & s2.verts:
        if (-1, v) not in allowed:
            return False
    a, b = s1.spans, s2.spans
    if len(b) < len(a):
        a, b = b, a
    for e, spans in a.items():
        other = b.get(e)
        if other is None:
            continue
        for lo, hi in spans:
            for lo2, hi2 in other:
                p = lo if lo > lo2 else lo2
                q = hi if hi < hi2 else hi2
                if p < q:
                    return False
                if p == q and 0 < p < UNIT and (e, p) not in allowed:
                    return False
    return True


class _GeodesicCache:
    def __init__(self, g: MetricGraph, pts, D, kernel, cap: int):
        self.g, self.pts, self.D, self.kernel, self.cap = g, pts, D, kernel, cap
        self.store: dict = {}
        self.truncated = False

    def get(self, i: int, j: int) -> list:
        key = (i, j)
        hit = self.store.get(key)
        if hit is not None:
            return hit
        if i > j:
            fwd = self.get(j, i)
            out = [_Side(self.g, s.path.reversed(), self.kernel) for s in fwd]
        else:
            p, q = self.pts[i], self.pts[j]
            d = self.D[i][j]
            out = []
            for segs in iter_geodesic_segments(self.g, p, q, d):
                if len(out) == self.cap:
                    self.truncated = True
                    break
                out.append(_Side(self.g, GeodesicPath(p, q, segs, d), self.kernel))
        self.store[key] = out
        return out


def delta_exact(g: MetricGraph, opts: EnumerationOptions | None = None, *,
                backend: str | None = None) -> DeltaReport:
    """δ(G) by exhaustive search over geodesic triangles with grid corners.

    Corner triples (including bigons, where two corners coincide) are visited
    in decreasing order of their longest side, ties broken by corner indices.
    Half the longest side bounds the thinness of any triangle, so the search
    stops as soon as that bound cannot beat the current best.  The reported
    witness is the first triangle attaining the maximum in this order.

    Examples
    --------
    >>> from graphdelta.generators import cycle
    >>> str(delta_exact(cycle(5)).delta)
    '5/4'
    """
    opts = opts or EnumerationOptions()
    kernel = _kernels.backend if backend is None else _kernels.load(backend)
    if is_tree(g):
        return DeltaReport(Fraction(0), Method.EXACT)
    pts = grid_points(g, opts.resolution)
    D = pairwise_distances(g, pts).tolist()
    N = len(pts)
    order = []
    for i in range(N):
        Di = D[i]
        for j in range(i + 1, N):
            dij = Di[j]
            order.append((-dij, i, i, j))
            Dj = D[j]
            for k in range(j + 1, N):
                m = dij
                if Dj[k] > m:
                    m = Dj[k]
                if Di[k] > m:
                    m = Di[k]
                order.append((-m, i, j, k))
    order.sort()
    gp = _pack(g, kernel)
    sup = kernel.triangle_sup
    cache = _GeodesicCache(g, pts, D, kernel, opts.geodesic_cap)
    prune = opts.cycle_prune
    empty = kernel.pack_path(())
    best = 0
    wit = None
    triples = combos = 0
    for negkey, i, j, k in order:
        if -negkey <= best:
            break
        triples += 1
        if i == j:
            x, z = pts[i], pts[k]
            paths = cache.get(i, k)
            back = cache.get(k, i)
            allowed = {x, z}
            for a in range(len(paths)):
                for b in range(a + 1, len(paths)):
                    if prune and not _meets_only(paths[a], paths[b], allowed):
                        continue
                    combos += 1
                    val, side, seg, pos = sup(gp, empty, paths[a].packed, back[b].packed)
                    if val > best:
                        best = val
                        wit = ((x, x, z), (None, paths[a], back[b]), side, seg, pos)
            continue
        x, y, z = pts[i], pts[j], pts[k]
        gxy, gyz, gzx = cache.get(i, j), cache.get(j, k), cache.get(k, i)
        ax, ay, az = {x}, {y}, {z}
        for s1 in gxy:
            if prune:
                third = [s3 for s3 in gzx if _meets_only(s3, s1, ax)]
                if not third:
                    continue
            else:
                third = gzx
            for s2 in gyz:
                if prune and not _meets_only(s1, s2, ay):
                    continue
                for s3 in third:
                    if prune and not _meets_only(s2, s3, az):
                        continue
                    combos += 1
                    val, side, seg, pos = sup(gp, s1.packed, s2.packed, s3.packed)
                    if val > best:
                        best = val
                        wit = ((x, y, z), (s1, s2, s3), side, seg, pos)
    stats = DeltaStats(triples, combos, cache.truncated)
    if wit is None:
        return DeltaReport(Fraction(0), Method.EXACT, stats)
    corners, sides, side, seg, pos = wit
    paths = []
    for n_, s in enumerate(sides):
        if s is None:
            paths.append(GeodesicPath(corners[n_], corners[(n_ + 1) % 3], (), 0))
        else:
            paths.append(s.path)
    tri = GeodesicTriangle(corners, tuple(paths))
    wp = _witness_point(paths[side].segments, side, seg, pos)
    return DeltaReport(Fraction(best, SIXTEENTHS), Method.EXACT, stats, tri, wp)


def _lift_point(p: GraphPoint, verts, edges) -> GraphPoint:
    if p.edge < 0:
        return GraphPoint.vertex(verts[p.pos])
    return GraphPoint(edges[p.edge], p.pos)


def delta_via_blocks(g: MetricGraph, opts: EnumerationOptions | None = None, *,
                     backend: str | None = None) -> DeltaReport:
    """δ(G) as the maximum of δ over the blocks of ``g``.

    The witness of the best block (first block on ties) is translated back to
    vertex and edge ids of ``g``.
    """
    td = blocks(g)
    best = None
    best_idx = -1
    stats = DeltaStats()
    for idx, blk in enumerate(td.blocks):
        rep = delta_exact(blk, opts, backend=backend)
        stats = stats + rep.stats
        if best is None or rep.delta > best.delta:
            best, best_idx = rep, idx
    if best.witness is None:
        return DeltaReport(best.delta, Method.BLOCKS, stats)
    verts, edges = td.block_vertices[best_idx], td.block_edges[best_idx]
    corners = tuple(_lift_point(p, verts, edges) for p in best.witness.corners)
    sides = tuple(
        GeodesicPath(_lift_point(s.start, verts, edges), _lift_point(s.end, verts, edges),
                     tuple((edges[e], a, b) for e, a, b in s.segments), s.total_length)
        for s in best.witness.sides
    )
    wp = best.witness_point._replace(edge=edges[best.witness_point.edge])
    return DeltaReport(best.delta, Method.BLOCKS, stats, GeodesicTriangle(corners, sides), wp)


def delta_cactus(g: MetricGraph) -> Fraction:
    """Closed form for graphs whose edges each lie on at most one cycle.

    Returns the circumference divided by four, and 0 for trees.

    Raises
    ------
    NotProperCycles
        If some edge lies on two cycles.
    """
    prof = cactus_profile(g)
    if not prof.is_cactus:
        raise NotProperCycles("some edge lies on more than one cycle")
    if prof.circumference is None:
        return Fraction(0)
    return Fraction(prof.circumference, 4)


def delta_four_point(g: MetricGraph) -> Fraction:
    """Four-point estimate over vertex quadruples.

    A cheap screening heuristic; it is not δ of the metric graph.
    """
    D = g.dist_array
    n = g.n
    best = 0
    for x in range(n):
        dx = D[x]
        # pair sums for (x, y, z, w): d(x,y)+d(z,w), d(x,z)+d(y,w), d(x,w)+d(y,z)
        a = dx[:, None, None] + D[None, :, :]
        b = dx[None, :, None] + D[:, None, :]
        c = dx[None, None, :] + D[:, :, None]
        stacked = np.sort(np.stack([a, b, c]), axis=0)
        diff = int((stacked[2] - stacked[1]).max())
        if diff > best:
            best = diff
    return Fraction(best, 2 * UNIT)


def compute_delta(g: MetricGraph, method: Method | str = Method.EXACT,
                  opts: EnumerationOptions | None = None) -> DeltaReport:
    """Dispatch to the δ routine named by ``method``."""
    method = Method(method)
    if method is Method.EXACT:
        return delta_exact(g, opts)
    if method is Method.BLOCKS:
        return delta_via_blocks(g, opts)
    if method is Method.CACTUS:
        return DeltaReport(delta_cactus(g), Method.CACTUS)
    return DeltaReport(delta_four_point(g), Method.FOUR_POINT)


def thinness_of(g: MetricGraph, corners: Sequence[GraphPoint], sides: Sequence[Sequence]) -> Fraction:
    """Convenience wrapper taking raw segment lists for the three sides."""
    paths = tuple(
        GeodesicPath(corners[i], corners[(i + 1) % 3], tuple(map(tuple, s)), path_length(s))
        for i, s in enumerate(sides)
    )
    return triangle_thinness(g, GeodesicTriangle(tuple(corners), paths))[0]
