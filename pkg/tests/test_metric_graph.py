"""Graph construction, point distances, grids and geodesic enumeration."""

from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given

from graphdelta.errors import Disconnected, EmptyGraph, InvalidPoint, ParseError, SimpleModeViolation
from graphdelta.generators import cycle, path
from graphdelta.metric_graph import (
    UNIT,
    GraphPoint,
    GridSpec,
    MetricGraph,
    build_graph,
    enumerate_geodesics,
    format_graph,
    grid_points,
    is_tree,
    pairwise_distances,
    parse_graph_text,
    parse_point,
    path_length,
    point_distance,
    read_graph,
    split_documents,
    vertex_distance_matrix,
)

from .conftest import PROPERTY, connected_graphs
from .oracles import SubdividedGraph, bfs_all_pairs


class TestBuild:
    def test_triangle(self):
        g = build_graph([(0, 1), (1, 2), (2, 0)])
        assert (g.n, g.m) == (3, 3)

    def test_duplicate_edge_rejected(self):
        with pytest.raises(SimpleModeViolation) as info:
            build_graph([(0, 1), (0, 1)])
        assert info.value.edge == (0, 1)

    def test_loop_rejected_in_simple_mode(self):
        with pytest.raises(SimpleModeViolation):
            build_graph([(0, 0)])

    def test_loop_in_multi_mode(self):
        g = build_graph([(0, 0)], "multi")
        assert (g.n, g.m) == (1, 1)

    def test_disconnected_lists_components(self):
        with pytest.raises(Disconnected) as info:
            build_graph([(0, 1), (5, 7)])
        assert info.value.components == [[0, 1], [5, 7]]

    def test_empty(self):
        with pytest.raises(EmptyGraph):
            build_graph([])

    def test_single_vertex(self):
        g = build_graph([], vertices=[4])
        assert (g.n, g.m) == (1, 0)
        assert is_tree(g)

    def test_compaction_preserves_relative_order(self):
        g = build_graph([(10, 3), (3, 7)])
        assert g.edges == ((2, 0), (0, 1))

    def test_pickle_roundtrip(self):
        import pickle

        g = cycle(5)
        assert pickle.loads(pickle.dumps(g)) == g


class TestDistances:
    def test_c4_antipodal(self):
        assert vertex_distance_matrix(cycle(4))[0, 2] == 2 * UNIT

    def test_p3_ends(self):
        assert vertex_distance_matrix(path(3))[0, 2] == 2 * UNIT

    def test_double_edge(self):
        g = build_graph([(0, 1), (0, 1)], "multi")
        assert vertex_distance_matrix(g)[0, 1] == UNIT

    def test_matrix_read_only(self):
        D = vertex_distance_matrix(cycle(4))
        with pytest.raises(ValueError):
            D[0, 0] = 1

    def test_same_point(self):
        p = GraphPoint(1, 3)
        assert point_distance(cycle(4), p, p) == 0

    def test_loop_midpoint_to_vertex(self):
        g = build_graph([(0, 0)], "multi")
        assert point_distance(g, GraphPoint(0, 4), GraphPoint.vertex(0)) == 4

    def test_loop_wraparound(self):
        g = build_graph([(0, 0)], "multi")
        assert point_distance(g, GraphPoint(0, 1), GraphPoint(0, 7)) == 2

    def test_c4_opposite_midpoints(self):
        assert point_distance(cycle(4), GraphPoint(0, 4), GraphPoint(2, 4)) == 2 * UNIT

    @PROPERTY
    @given(connected_graphs(max_n=5, multi=True))
    def test_metric_axioms_on_grid(self, g):
        pts = grid_points(g, 2)
        D = pairwise_distances(g, pts)
        assert (D == D.T).all()
        assert (np.diag(D) == 0).all()
        off = ~np.eye(len(pts), dtype=bool)
        assert (D[off] > 0).all()
        assert (D[:, None, :] <= D[:, :, None] + D[None, :, :]).all()

    @PROPERTY
    @given(connected_graphs(max_n=5, multi=True))
    def test_matches_subdivision_oracle(self, g):
        sub = SubdividedGraph(g.n, g.edges)
        pts = grid_points(g, 4)
        D = pairwise_distances(g, pts)
        for i, p in enumerate(pts):
            row = sub.row(sub.point_node(p))
            for j, q in enumerate(pts):
                assert 2 * D[i, j] == row[sub.point_node(q)]

    @PROPERTY
    @given(connected_graphs(max_n=6))
    def test_vertex_distances_match_bfs(self, g):
        want = bfs_all_pairs(g.n, g.edges)
        assert (vertex_distance_matrix(g) == UNIT * np.array(want)).all()

    @PROPERTY
    @given(connected_graphs(max_n=5))
    def test_edge_isometry_bound(self, g):
        for e in range(g.m):
            for s, t in itertools.combinations(range(1, UNIT), 2):
                assert point_distance(g, GraphPoint(e, s), GraphPoint(e, t)) <= t - s


class TestGrid:
    def test_triangle_midpoints(self):
        assert len(grid_points(cycle(3), GridSpec(2))) == 6

    def test_loop(self):
        assert len(grid_points(build_graph([(0, 0)], "multi"), 2)) == 2

    def test_single_edge_eighths(self):
        assert len(grid_points(path(2), 8)) == 9

    def test_order(self):
        pts = grid_points(cycle(3), 4)
        assert pts == sorted(pts)

    def test_bad_resolution(self):
        with pytest.raises(ValueError):
            GridSpec(3)

    @PROPERTY
    @given(connected_graphs(max_n=6))
    def test_midpoint_grid_size(self, g):
        assert len(grid_points(g, 2)) == g.n + g.m


class TestPoints:
    def test_canonical_endpoints(self):
        g = cycle(3)
        assert g.point(0, 0) == GraphPoint.vertex(0)
        assert g.point(0, UNIT) == GraphPoint.vertex(1)

    def test_invalid_interior(self):
        with pytest.raises(InvalidPoint):
            GraphPoint.interior(0, 8)

    def test_parse_roundtrip(self):
        for p in (GraphPoint.vertex(3), GraphPoint(2, 3), GraphPoint(0, 4)):
            assert parse_point(str(p)) == p

    def test_parse_rejects_off_grid(self):
        with pytest.raises(ParseError):
            parse_point("e0@1/3")


class TestGeodesics:
    def test_tree_unique(self):
        gs = enumerate_geodesics(path(4), GraphPoint.vertex(0), GraphPoint.vertex(3))
        assert len(gs.paths) == 1 and not gs.truncated

    def test_c4_antipodal_two(self):
        gs = enumerate_geodesics(cycle(4), GraphPoint.vertex(0), GraphPoint.vertex(2))
        assert len(gs.paths) == 2
        assert all(p.total_length == 2 * UNIT for p in gs.paths)

    def test_double_edge_two(self):
        g = build_graph([(0, 1), (0, 1)], "multi")
        gs = enumerate_geodesics(g, GraphPoint.vertex(0), GraphPoint.vertex(1))
        assert len(gs.paths) == 2 and all(p.total_length == UNIT for p in gs.paths)

    def test_cap_truncates(self):
        gs = enumerate_geodesics(cycle(4), GraphPoint.vertex(0), GraphPoint.vertex(2), cap=1)
        assert len(gs.paths) == 1 and gs.truncated

    def test_cap_validation(self):
        with pytest.raises(ValueError):
            enumerate_geodesics(cycle(4), GraphPoint.vertex(0), GraphPoint.vertex(2), cap=0)

    def test_same_edge_direct(self):
        gs = enumerate_geodesics(cycle(5), GraphPoint(0, 2), GraphPoint(0, 6))
        assert [p.segments for p in gs.paths] == [((0, 2, 6),)]

    def test_loop_two_ways_round(self):
        g = build_graph([(0, 0)], "multi")
        gs = enumerate_geodesics(g, GraphPoint.vertex(0), GraphPoint(0, 4))
        assert sorted(p.segments for p in gs.paths) == [((0, 0, 4),), ((0, 8, 4),)]

    @PROPERTY
    @given(connected_graphs(max_n=5, multi=True))
    def test_geodesics_are_valid_and_distinct(self, g):
        pts = grid_points(g, 2)
        for p, q in itertools.product(pts, repeat=2):
            gs = enumerate_geodesics(g, p, q, cap=64)
            d = point_distance(g, p, q)
            segs = [x.segments for x in gs.paths]
            assert segs == sorted(set(segs))
            for x in gs.paths:
                assert x.total_length == d == path_length(x.segments)
                loc = p
                for e, a, b in x.segments:
                    assert g.point(e, a) == loc
                    loc = g.point(e, b)
                assert loc == q


class TestTextFormat:
    def test_parse_with_mode_and_comments(self):
        g = parse_graph_text("# a loop\nmode multi\n0 0\n")
        assert g.mode.value == "multi" and g.edges == ((0, 0),)

    def test_default_simple(self):
        assert parse_graph_text("0 1\n1 2\n").mode.value == "simple"

    def test_labels(self):
        g, labels = read_graph("5 9\n9 12\n")
        assert labels == (5, 9, 12) and g.edges == ((0, 1), (1, 2))

    @pytest.mark.parametrize("text", ["", "0 1 2\n", "a b\n", "0 1\nmode multi\n", "-1 2\n"])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            parse_graph_text(text)

    def test_roundtrip(self):
        for g in (cycle(5), build_graph([(0, 0), (0, 1), (0, 1)], "multi"), build_graph([], vertices=[0])):
            assert parse_graph_text(format_graph(g)) == g

    def test_split_documents(self):
        docs = split_documents("0 1\n---\n# c\n---\n1 2\n")
        assert len(docs) == 2


def test_is_tree_cases():
    assert is_tree(path(5))
    assert not is_tree(cycle(3))
    assert not is_tree(build_graph([(0, 0)], "multi"))
    assert not is_tree(MetricGraph(2, [(0, 1), (0, 1)], "multi"))
