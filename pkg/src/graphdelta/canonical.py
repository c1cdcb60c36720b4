"""Canonical labelling of small multigraphs.

A graph is encoded by its multiplicity matrix (loops on the diagonal).  Colour
refinement splits vertices by their neighbourhood structure and the remaining
ties are resolved by individualisation with full backtracking; the canonical
code is the lexicographically smallest upper triangle over all leaves.  The
search is exhaustive, so the result is an exact isomorphism invariant.  It is
meant for graphs with at most about eight vertices.
"""

from __future__ import annotations

from .metric_graph import MetricGraph


def multiplicity_matrix(g: MetricGraph) -> list:
    n = g.n
    M = [[0] * n for _ in range(n)]
    for a, b in g.edges:
        M[a][b] += 1
        if a != b:
            M[b][a] += 1
    return M


def _refine(M, colours):
    n = len(colours)
    cells = len(set(colours))
    while True:
        sigs = [
            (colours[v], M[v][v],
             tuple(sorted((colours[u], M[v][u]) for u in range(n) if u != v and M[v][u])))
            for v in range(n)
        ]
        rank = {s: r for r, s in enumerate(sorted(set(sigs)))}
        colours = [rank[s] for s in sigs]
        if len(rank) == cells:
            return colours
        cells = len(rank)


def _code(M, colours):
    perm = sorted(range(len(colours)), key=colours.__getitem__)
    n = len(perm)
    return tuple(M[perm[i]][perm[j]] for i in range(n) for j in range(i, n)), perm


def _search(M, colours, best):
    colours = _refine(M, colours)
    n = len(colours)
    if len(set(colours)) == n:
        code, perm = _code(M, colours)
        if best[0] is None or code < best[0]:
            best[0], best[1] = code, perm
        return
    sizes = {}
    for c in colours:
        sizes[c] = sizes.get(c, 0) + 1
    target = min(c for c, k in sizes.items() if k > 1)
    for v in range(n):
        if colours[v] != target:
            continue
        _search(M, [2 * c + (0 if u == v else 1) for u, c in enumerate(colours)], best)


def canonical_labelling(g: MetricGraph) -> tuple:
    """Return ``(code, perm)``: the canonical code and ``perm[i]`` = old id at slot i."""
    M = multiplicity_matrix(g)
    best = [None, None]
    _search(M, [0] * g.n, best)
    return (g.n,) + best[0], best[1]


def canonical_code(g: MetricGraph) -> tuple:
    """Isomorphism invariant: equal codes iff the graphs are isomorphic."""
    return canonical_labelling(g)[0]


def graph_from_code(code: tuple, mode="simple") -> MetricGraph:
    """Rebuild the canonical representative; edges sorted by endpoint pair."""
    n = code[0]
    it = iter(code[1:])
    edges = []
    for i in range(n):
        for j in range(i, n):
            edges.extend([(i, j)] * next(it))
    return MetricGraph(n, edges, mode)


def canonical_graph(g: MetricGraph) -> MetricGraph:
    return graph_from_code(canonical_code(g), g.mode)


def is_isomorphic(g: MetricGraph, h: MetricGraph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_code(g) == canonical_code(h)


def code_string(code: tuple) -> str:
    """Compact printable form of a code, used for stable output ordering."""
    return f"{code[0]}:" + "".join(str(x) for x in code[1:])
