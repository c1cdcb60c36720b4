"""Compare the compiled and pure-Python thinness kernels.

Two measurements per backend: raw ``triangle_sup`` calls on a fixed batch of
seeded random triangles, and end-to-end ``delta_exact`` on a few named graphs.

    python benchmarks/bench_kernels.py [--triangles 2000] [--repeat 3]
"""

from __future__ import annotations

import argparse
import random
import time

from graphdelta import _kernels
from graphdelta.generators import random_connected, theta, wheel
from graphdelta.hyperbolicity import delta_exact
from graphdelta.metric_graph import enumerate_geodesics, grid_points


def triangle_batch(count: int, seed: int = 0):
    rng = random.Random(seed)
    batch = []
    for _ in range(count):
        n = rng.randint(4, 9)
        g = random_connected(n, rng.randint(n - 1, n * (n - 1) // 2), rng.randrange(2**31))
        pts = grid_points(g, 8)
        corners = [rng.choice(pts) for _ in range(3)]
        sides = [rng.choice(enumerate_geodesics(g, corners[i], corners[(i + 1) % 3], cap=16).paths)
                 .segments for i in range(3)]
        batch.append((g, sides))
    return batch


def best_of(repeat: int, fn) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_kernel(kernel, batch):
    packed = [(kernel.pack_graph(g.dist, [a for a, _ in g.edges], [b for _, b in g.edges]),
               [kernel.pack_path(s) for s in sides]) for g, sides in batch]

    def run():
        for gp, sides in packed:
            kernel.triangle_sup(gp, *sides)

    return run


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--triangles", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = ["python"] + (["cython"] if _kernels.BACKEND == "cython" else [])
    if len(backends) == 1:
        print("compiled kernel not built; timing the pure-Python kernel only")

    batch = triangle_batch(args.triangles)
    graphs = {"wheel(9)": wheel(9), "wheel(11)": wheel(11), "theta(3,5,5)": theta(3, 5, 5)}

    rows = []
    kt = {b: best_of(args.repeat, bench_kernel(_kernels.load(b), batch)) for b in backends}
    rows.append((f"triangle_sup x{args.triangles}", kt))
    for name, g in graphs.items():
        rows.append((f"delta_exact {name}",
                     {b: best_of(args.repeat, lambda b=b: delta_exact(g, backend=b)) for b in backends}))

    head = f"{'case':<28}" + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        head += f"{'speedup':>10}"
    print(head)
    for name, t in rows:
        line = f"{name:<28}" + "".join(f"{t[b]:>11.4f}s" for b in backends)
        if len(backends) == 2:
            line += f"{t['python'] / t['cython']:>9.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
