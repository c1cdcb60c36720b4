"""Shared hypothesis strategies and fixtures."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from graphdelta import _kernels
from graphdelta.metric_graph import MetricGraph

PROPERTY = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def connected_graphs(draw, min_n=1, max_n=6, multi=False):
    """Connected graphs: a random spanning tree plus random extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    present = {frozenset(e) for e in edges}
    pairs = [p for p in itertools.combinations(range(n), 2) if frozenset(p) not in present]
    if pairs:
        edges += draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    if multi:
        all_pairs = list(itertools.combinations(range(n), 2))
        if all_pairs:
            edges += draw(st.lists(st.sampled_from(all_pairs), max_size=3))
        edges += [(v, v) for v in draw(st.lists(st.integers(0, n - 1), unique=True, max_size=2))]
    return MetricGraph(n, edges, "multi" if multi else "simple")


def cyclic_graphs(max_n=6, multi=False):
    return connected_graphs(min_n=1 if multi else 3, max_n=max_n, multi=multi).filter(
        lambda g: g.m >= g.n)


BACKENDS = ["python"] + (["cython"] if _kernels.BACKEND == "cython" else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


ACCEPTANCE_LINES: list = []


@pytest.fixture
def verdict():
    """Record and print one pass/fail line for an acceptance criterion."""

    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
