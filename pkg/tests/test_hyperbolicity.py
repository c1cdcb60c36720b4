"""Triangle thinness and the δ routines."""

from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphdelta.errors import NotProperCycles, SideNotGeodesic
from graphdelta.generators import all_connected, cycle, diamond, path, random_connected, theta, wheel
from graphdelta.hyperbolicity import (
    DeltaReport,
    EnumerationOptions,
    GeodesicTriangle,
    Method,
    compute_delta,
    delta_cactus,
    delta_exact,
    delta_four_point,
    delta_via_blocks,
    triangle_thinness,
)
from graphdelta.metric_graph import (
    UNIT,
    GeodesicPath,
    GraphPoint,
    MetricGraph,
    build_graph,
    enumerate_geodesics,
    grid_points,
    is_tree,
    point_distance,
)
from graphdelta.minors import cactus_profile

from .conftest import PROPERTY, connected_graphs
from .oracles import SubdividedGraph, four_point_brute

V = GraphPoint.vertex


def random_triangle(g, rng, resolution=8):
    pts = grid_points(g, resolution)
    corners = tuple(rng.choice(pts) for _ in range(3))
    sides = []
    for i in range(3):
        gs = enumerate_geodesics(g, corners[i], corners[(i + 1) % 3], cap=32)
        sides.append(rng.choice(gs.paths))
    return GeodesicTriangle(corners, tuple(sides))


class TestTriangleThinness:
    def test_tree_triangle_is_zero(self):
        g = build_graph([(0, 1), (1, 2), (1, 3)])
        corners = (V(0), V(2), V(3))
        sides = tuple(enumerate_geodesics(g, corners[i], corners[(i + 1) % 3]).paths[0] for i in range(3))
        assert triangle_thinness(g, GeodesicTriangle(corners, sides))[0] == 0

    def test_c4_bigon(self):
        g = cycle(4)
        a, b = enumerate_geodesics(g, V(0), V(2)).paths
        t = GeodesicTriangle((V(0), V(0), V(2)),
                             (GeodesicPath(V(0), V(0), (), 0), a, b.reversed()))
        val, wp = triangle_thinness(g, t)
        assert val == 1
        assert wp.side == 1 and wp.along == 1

    def test_degenerate_point(self):
        g = cycle(4)
        empty = GeodesicPath(V(1), V(1), (), 0)
        t = GeodesicTriangle((V(1),) * 3, (empty,) * 3)
        assert triangle_thinness(g, t) == (0, None)

    def test_rejects_non_geodesic_side(self):
        g = cycle(4)
        long_way = GeodesicPath(V(0), V(1), ((3, 8, 0), (2, 8, 0), (1, 8, 0)), 3 * UNIT)
        short = enumerate_geodesics(g, V(1), V(0)).paths[0]
        t = GeodesicTriangle((V(0), V(1), V(1)),
                             (long_way, GeodesicPath(V(1), V(1), (), 0), short))
        with pytest.raises(SideNotGeodesic):
            triangle_thinness(g, t)

    def test_rejects_broken_side(self):
        g = cycle(4)
        bad = GeodesicPath(V(0), V(2), ((0, 0, 8), (2, 0, 8)), 2 * UNIT)
        good = enumerate_geodesics(g, V(2), V(0)).paths[0]
        t = GeodesicTriangle((V(0), V(2), V(2)), (bad, GeodesicPath(V(2), V(2), (), 0), good))
        with pytest.raises(SideNotGeodesic):
            triangle_thinness(g, t)

    @pytest.mark.parametrize("seed", range(20))
    def test_dense_sampling_oracle(self, seed, backend):
        rng = random.Random(seed)
        n = rng.randint(2, 6)
        m = rng.randint(n - 1, n * (n - 1) // 2)
        g = random_connected(n, m, seed)
        t = random_triangle(g, rng)
        val, _ = triangle_thinness(g, t, backend=backend)
        sampled = SubdividedGraph(g.n, g.edges).thinness(t.corners, [s.segments for s in t.sides])
        assert sampled <= val <= sampled + Fraction(1, 16)

    @PROPERTY
    @given(connected_graphs(max_n=5, multi=True), st.integers(0, 10**9))
    def test_bounded_by_corner_diameter(self, g, seed):
        t = random_triangle(g, random.Random(seed))
        val, _ = triangle_thinness(g, t)
        diam = max(point_distance(g, p, q) for p in t.corners for q in t.corners)
        assert val <= Fraction(diam, UNIT)

    @PROPERTY
    @given(connected_graphs(max_n=5, multi=True), st.integers(0, 10**9))
    def test_witness_point_attains_value(self, g, seed):
        t = random_triangle(g, random.Random(seed))
        val, wp = triangle_thinness(g, t)
        if wp is None:
            assert val == 0
            return
        off16 = wp.offset * 16
        assert off16.denominator == 1
        sub = SubdividedGraph(g.n, g.edges)
        node = sub.node(wp.edge, int(off16))
        others = [k for k in range(3) if k != wp.side]
        rest = [q for k in others for q in sub.side_nodes(t.sides[k].segments, t.corners[k])]
        assert Fraction(min(sub.row(node)[q] for q in rest), 16) == val


class TestDeltaExact:
    @pytest.mark.parametrize("n", range(3, 11))
    def test_cycles(self, n):
        assert delta_exact(cycle(n)).delta == Fraction(n, 4)

    def test_wheel6(self):
        assert delta_exact(wheel(6)).delta == Fraction(5, 4)

    def test_tree_shortcut(self):
        rep = delta_exact(path(6))
        assert rep.delta == 0 and rep.witness is None and rep.stats.triples == 0

    def test_witness_reproduces_value(self, backend):
        g = wheel(7)
        rep = delta_exact(g, backend=backend)
        val, wp = triangle_thinness(g, rep.witness, backend=backend)
        assert val == rep.delta and wp == rep.witness_point

    def test_backends_agree_on_witness(self):
        from graphdelta import _kernels

        if _kernels.BACKEND != "cython":
            pytest.skip("compiled kernel not built")
        for g in all_connected(5):
            assert delta_exact(g, backend="python") == delta_exact(g, backend="cython")

    def test_cap_truncation_flagged(self):
        g = build_graph([(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 6), (5, 6)])
        rep = delta_exact(g, EnumerationOptions(geodesic_cap=1))
        assert rep.stats.truncated and not rep.exact
        assert rep.delta <= delta_exact(g).delta

    def test_options_validation(self):
        with pytest.raises(ValueError):
            EnumerationOptions(geodesic_cap=0)
        with pytest.raises(ValueError):
            EnumerationOptions(resolution=3)

    @PROPERTY
    @given(connected_graphs(max_n=6))
    def test_zero_iff_tree(self, g):
        assert (delta_exact(g).delta == 0) == is_tree(g)

    @PROPERTY
    @given(connected_graphs(max_n=6))
    def test_quarter_multiples(self, g):
        assert (delta_exact(g).delta * 4).denominator == 1

    @PROPERTY
    @given(connected_graphs(max_n=5, multi=True))
    def test_prune_does_not_change_value(self, g):
        a = delta_exact(g).delta
        b = delta_exact(g, EnumerationOptions(cycle_prune=False)).delta
        assert a == b

    @PROPERTY
    @given(connected_graphs(max_n=5, multi=True))
    def test_monotone_in_cap_and_resolution(self, g):
        base = delta_exact(g, EnumerationOptions(geodesic_cap=1)).delta
        full = delta_exact(g).delta
        fine = delta_exact(g, EnumerationOptions(resolution=4)).delta
        coarse = delta_exact(g, EnumerationOptions(resolution=1)).delta
        assert coarse <= full and base <= full
        assert fine == full

    def test_deterministic(self):
        g = wheel(9)
        assert delta_exact(g) == delta_exact(g)


class TestBlocks:
    def test_diamond_with_pendant_tree(self):
        g = build_graph([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (3, 4), (4, 5), (4, 6)])
        assert delta_via_blocks(g).delta == 1

    def test_cycles_sharing_cut_vertices(self):
        # a triangle and a pentagon joined at vertex 0, plus a pendant edge
        g = build_graph([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 6), (6, 0), (6, 7)])
        assert delta_via_blocks(g).delta == Fraction(5, 4)

    def test_single_edge(self):
        assert delta_via_blocks(path(2)).delta == 0

    def test_lifted_witness_lives_in_original(self):
        g = build_graph([(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 3)])
        rep = delta_via_blocks(g)
        val, wp = triangle_thinness(g, rep.witness)
        assert val == rep.delta == 1 and wp == rep.witness_point

    @PROPERTY
    @given(connected_graphs(max_n=6, multi=True))
    def test_equals_exact(self, g):
        assert delta_via_blocks(g).delta == delta_exact(g).delta


class TestCactus:
    def test_c6(self):
        assert delta_cactus(cycle(6)) == Fraction(3, 2)

    def test_bowtie(self):
        g = build_graph([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
        assert delta_cactus(g) == Fraction(3, 4) == delta_exact(g).delta

    def test_tree(self):
        assert delta_cactus(path(4)) == 0

    def test_theta_rejected(self):
        with pytest.raises(NotProperCycles):
            delta_cactus(theta(1, 4, 4))

    @pytest.mark.parametrize("n", range(1, 8))
    def test_matches_exact_on_all_cacti(self, n):
        for g in all_connected(n):
            if cactus_profile(g).is_cactus:
                assert delta_cactus(g) == delta_exact(g).delta


class TestFourPoint:
    def test_tree(self):
        assert delta_four_point(path(5)) == 0

    def test_c4(self):
        assert delta_four_point(cycle(4)) == 1

    def test_c6(self):
        # antipodal pairs sum to 6 and force the runner-up sum to 4
        assert delta_four_point(cycle(6)) == 1

    @PROPERTY
    @given(connected_graphs(max_n=6, multi=True))
    def test_matches_brute_force(self, g):
        assert delta_four_point(g) == four_point_brute([[d // UNIT for d in r] for r in g.dist])


class TestReport:
    def test_text(self):
        text = delta_exact(cycle(5)).to_text()
        assert text.startswith("delta = 5/4\n")
        assert "." not in text.split("\n")[0]

    def test_json_roundtrip(self):
        rep = delta_exact(wheel(6))
        doc = rep.to_json()
        back = DeltaReport.from_dict(json.loads(doc))
        assert back == rep and back.to_json() == doc

    @pytest.mark.parametrize("method", list(Method))
    def test_compute_dispatch(self, method):
        assert compute_delta(cycle(4), method).delta == 1
