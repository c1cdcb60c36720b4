"""The compiled and pure-Python thinness kernels must agree exactly."""

from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphdelta import _kernels
from graphdelta.generators import cycle
from graphdelta.metric_graph import GraphPoint, enumerate_geodesics, grid_points

from .conftest import PROPERTY, connected_graphs

needs_compiled = pytest.mark.skipif(_kernels.BACKEND != "cython", reason="compiled kernel not built")


def _triangle(g, rng, resolution=8):
    pts = grid_points(g, resolution)
    corners = [rng.choice(pts) for _ in range(3)]
    sides = []
    for i in range(3):
        gs = enumerate_geodesics(g, corners[i], corners[(i + 1) % 3], cap=16)
        sides.append(rng.choice(gs.paths).segments)
    return sides


def _run(kernel, g, sides):
    gp = kernel.pack_graph(g.dist, [a for a, _ in g.edges], [b for _, b in g.edges])
    return tuple(int(x) for x in kernel.triangle_sup(gp, *(kernel.pack_path(s) for s in sides)))


def test_c4_bigon_python():
    g = cycle(4)
    a = enumerate_geodesics(g, GraphPoint.vertex(0), GraphPoint.vertex(2)).paths
    sides = [(), a[0].segments, a[1].reversed().segments]
    val, side, seg, pos = _run(_kernels.load("python"), g, sides)
    assert val == 16  # one unit, in sixteenths
    assert (side, seg) == (1, 0) and pos == 16  # first maximiser: vertex 1


@needs_compiled
def test_c4_bigon_compiled_matches():
    g = cycle(4)
    a = enumerate_geodesics(g, GraphPoint.vertex(0), GraphPoint.vertex(2)).paths
    sides = [(), a[0].segments, a[1].reversed().segments]
    assert _run(_kernels.load("cython"), g, sides) == _run(_kernels.load("python"), g, sides)


@needs_compiled
@PROPERTY
@given(connected_graphs(max_n=6, multi=True), st.integers(0, 2**32 - 1))
def test_backends_agree_on_random_triangles(g, seed):
    rng = random.Random(seed)
    py, cy = _kernels.load("python"), _kernels.load("cython")
    for _ in range(5):
        sides = _triangle(g, rng)
        assert _run(cy, g, sides) == _run(py, g, sides)


def test_load_unknown():
    with pytest.raises(ValueError):
        _kernels.load("fortran")


def test_backend_names():
    assert _kernels.BACKEND in _kernels.BACKENDS


def test_benchmark_smoke(capsys):
    import pathlib
    import runpy

    script = pathlib.Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"
    mod = runpy.run_path(str(script))
    assert mod["main"](["--triangles", "5", "--repeat", "1"]) == 0
    assert "triangle_sup x5" in capsys.readouterr().out
