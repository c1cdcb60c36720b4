"""Named families, random graphs and the exhaustive census."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphdelta.canonical import canonical_code, is_isomorphic, multiplicity_matrix
from graphdelta.errors import InvalidSpec
from graphdelta.generators import (
    FamilySpec,
    all_connected,
    all_connected_multigraphs,
    complete,
    cycle,
    diamond,
    generate,
    parse_family,
    path,
    random_connected,
    theta,
    wheel,
)
from graphdelta.metric_graph import MetricGraph

from .conftest import PROPERTY
from .oracles import brute_force_classes

SIMPLE_CENSUS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112}


def _degrees(g):
    deg = [0] * g.n
    for a, b in g.edges:
        deg[a] += 1
        deg[b] += 1
    return sorted(deg)


class TestFamilies:
    def test_wheel4_is_k4(self):
        assert is_isomorphic(wheel(4), complete(4))

    @pytest.mark.parametrize("n", range(4, 12))
    def test_wheel_counts(self, n):
        g = wheel(n)
        assert (g.n, g.m) == (n, 2 * (n - 1))
        assert _degrees(g)[-1] == n - 1

    def test_theta_144(self):
        g = theta(1, 4, 4)
        assert (g.n, g.m) == (8, 9)
        assert g.edges[0] == (0, 1)

    def test_theta_double_edge_needs_multi(self):
        with pytest.raises(InvalidSpec):
            theta(1, 1, 3)
        g = theta(1, 1, 3, "multi")
        assert g.edges[:2] == ((0, 1), (0, 1))

    @pytest.mark.parametrize("args", [(0, 1, 2), (2, 1, 3), (1, 3, 2)])
    def test_theta_order(self, args):
        with pytest.raises(InvalidSpec):
            theta(*args)

    def test_diamond(self):
        g = diamond()
        assert is_isomorphic(g, MetricGraph(4, [p for p in itertools.combinations(range(4), 2)
                                                if p != (2, 3)]))

    @pytest.mark.parametrize("bad", [lambda: cycle(2), lambda: wheel(3), lambda: path(0),
                                     lambda: random_connected(5, 3, 0),
                                     lambda: random_connected(4, 7, 0)])
    def test_invalid(self, bad):
        with pytest.raises(InvalidSpec):
            bad()

    def test_multi_cycles(self):
        assert cycle(1, "multi").edges == ((0, 0),)
        assert cycle(2, "multi").m == 2


class TestRandom:
    def test_seed_deterministic(self):
        assert random_connected(8, 12, 7) == random_connected(8, 12, 7)

    def test_seeds_differ(self):
        assert len({random_connected(8, 12, s).edges for s in range(10)}) > 1

    @PROPERTY
    @given(st.integers(1, 9), st.integers(0, 40), st.integers(0, 2**31))
    def test_shape(self, n, extra, seed):
        m = min(n - 1 + extra, n * (n - 1) // 2)
        g = random_connected(n, m, seed)
        assert (g.n, g.m) == (n, m)
        assert len(g.components()) == 1


class TestCensus:
    @pytest.mark.parametrize("n,count", sorted(SIMPLE_CENSUS.items()))
    def test_simple_counts(self, n, count):
        assert sum(1 for _ in all_connected(n)) == count

    @pytest.mark.parametrize("n", range(1, 6))
    def test_simple_matches_brute_force(self, n):
        want = brute_force_classes(n)
        assert len({canonical_code(g) for g in all_connected(n)}) == len(want)

    @pytest.mark.parametrize("n", range(1, 4))
    def test_multi_matches_brute_force(self, n):
        want = brute_force_classes(n, multiplicities=(0, 1, 2), loops=(0, 1))
        got = list(all_connected_multigraphs(n))
        assert len(got) == len(want)

    def test_multi_two_vertices(self):
        got = list(all_connected_multigraphs(2))
        loops = [sum(1 for a, b in g.edges if a == b) for g in got]
        doubles = [max(multiplicity_matrix(g)[0][1], 0) for g in got]
        assert len(got) == 6
        assert 2 in doubles and max(loops) == 2

    @pytest.mark.parametrize("n", range(1, 7))
    def test_pairwise_non_isomorphic_and_connected(self, n):
        gs = list(all_connected(n))
        assert len({canonical_code(g) for g in gs}) == len(gs)
        assert all(len(g.components()) == 1 for g in gs)
        assert all(g.mode.value == "simple" for g in gs)

    def test_sorted_by_code(self):
        codes = [canonical_code(g) for g in all_connected(5)]
        assert codes == sorted(codes)


class TestSpec:
    def test_parse(self):
        spec = parse_family(["theta", "1", "4", "4"])
        assert spec == FamilySpec("theta", (1, 4, 4))
        assert str(spec) == "theta 1 4 4"
        assert generate(spec) == theta(1, 4, 4)

    def test_stream(self):
        spec = parse_family(["all", "4"])
        assert spec.is_stream and len(list(generate(spec))) == 6

    @pytest.mark.parametrize("words", [[], ["moebius", "3"], ["cycle"], ["cycle", "x"],
                                       ["theta", "1", "1", "2"]])
    def test_errors(self, words):
        with pytest.raises(InvalidSpec):
            spec = parse_family(words)
            generate(spec)

    def test_multi_spec(self):
        g = generate(parse_family(["theta", "1", "1", "2"], "multi"))
        assert g.mode.value == "multi" and g.n == 3
