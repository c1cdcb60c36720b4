"""Machine checks of the contraction and deletion inequalities.

Each check returns a :class:`CheckReport` listing the inequalities it tested
as :class:`Condition` records with exact rational sides.  A report is
self-verifying: :func:`recheck` rebuilds the graph from the report and
re-evaluates every condition and witness.

Check names
-----------
``distances``
    ``d_{G/e}(h x, h y) <= d_G(x, y) <= d_{G/e}(h x, h y) + 3/2`` on grid
    pairs, the sharper ``+1`` when one point is a vertex or edge midpoint or
    the points share no triangle through ``e``, and ``+1`` throughout in
    multi mode.
``contraction``
    ``δ(G/e)/3 <= δ(G) <= 16/3 δ(G/e) + 1``; equality when ``e`` is a
    cut-edge; ``δ(G) <= 1`` when ``G/e`` is a tree.
``deletion``
    ``max(δ(G∖e)/5, (d+1)/4) <= δ(G) <= 6 δ(G∖e) + d`` with
    ``d = d_{G∖e}(A, B)``.
``blocks``
    δ computed block by block equals δ computed directly.
``cactus``
    On graphs whose edges each lie on at most one cycle: ``δ = c/4``, and
    ``δ(G/e) = δ(G)`` unless the longest cycle is unique and contains ``e``.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

import numpy as np

from ._text import fmt_rational, jsonable, kv_line
from .canonical import canonical_code
from .errors import BudgetExceeded, CutEdge
from .generators import all_connected, all_connected_multigraphs, cycle, theta, wheel
from .hyperbolicity import delta_exact, delta_via_blocks
from .metric_graph import (
    UNIT,
    MetricGraph,
    Mode,
    grid_points,
    is_tree,
    pairwise_distances,
    parse_point,
    point_distance,
)
from .minors import (
    cactus_profile,
    contract_edge,
    cycles3_through_edge,
    delete_edge,
    is_cut_edge,
)

CHECKS = ("distances", "contraction", "deletion", "blocks", "cactus")
DEFAULT_CHECKS = {
    Mode.SIMPLE: CHECKS,
    Mode.MULTI: ("distances", "contraction"),
}
BUDGET = {Mode.SIMPLE: 7, Mode.MULTI: 5}
SWEEP_RESOLUTION = 4


class Status(str, Enum):
    HOLDS = "holds"
    VIOLATED = "violated"

    def __str__(self):
        return self.value


class Condition(NamedTuple):
    """One inequality ``lhs rel rhs`` with ``rel`` in ``<=``, ``==``, ``!=``."""

    name: str
    lhs: Fraction
    rel: str
    rhs: Fraction
    witness: tuple = ()
    tracked: bool = True

    @property
    def holds(self) -> bool:
        if self.rel == "<=":
            return self.lhs <= self.rhs
        if self.rel == "==":
            return self.lhs == self.rhs
        return self.lhs != self.rhs

    @property
    def sharp(self) -> bool:
        return self.tracked and self.rel == "<=" and self.lhs == self.rhs

    def render(self) -> str:
        return f"{fmt_rational(self.lhs)}{self.rel}{fmt_rational(self.rhs)}"

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rel": self.rel, "rhs": self.rhs,
                "witness": list(self.witness), "holds": self.holds, "tracked": self.tracked}


def graph_key(g: MetricGraph) -> str:
    """Compact, space-free text form: ``mode:n:a-b,c-d``."""
    return f"{g.mode.value}:{g.n}:" + ",".join(f"{a}-{b}" for a, b in g.edges)


def graph_from_key(key: str) -> MetricGraph:
    mode, n, body = key.split(":", 2)
    edges = [tuple(int(x) for x in item.split("-")) for item in body.split(",") if item]
    return MetricGraph(int(n), edges, mode)


@dataclass(frozen=True)
class CheckReport:
    check: str
    graph: str
    edge: int | None
    conditions: tuple
    values: dict = field(default_factory=dict)
    elapsed: float = field(default=0.0, compare=False)

    @property
    def status(self) -> Status:
        return Status.HOLDS if all(c.holds for c in self.conditions) else Status.VIOLATED

    @property
    def failed(self) -> list:
        return [c for c in self.conditions if not c.holds]

    @property
    def sharp(self) -> list:
        return [c.name for c in self.conditions if c.sharp]

    @property
    def lhs(self) -> Fraction:
        return (self.failed or self.conditions)[0].lhs

    @property
    def rhs(self) -> Fraction:
        return (self.failed or self.conditions)[0].rhs

    @property
    def witness(self) -> tuple:
        return (self.failed or self.conditions)[0].witness

    def to_text(self) -> str:
        pairs = [("check", self.check), ("status", self.status.value), ("graph", self.graph),
                 ("edge", self.edge)]
        pairs += sorted(self.values.items())
        pairs += [(c.name, c.render()) for c in self.conditions]
        if self.witness:
            pairs.append(("witness", ",".join(map(str, self.witness))))
        return kv_line(pairs)

    def to_dict(self) -> dict:
        return jsonable({
            "check": self.check,
            "status": self.status.value,
            "graph": self.graph,
            "edge": self.edge,
            "values": dict(self.values),
            "conditions": [c.to_dict() for c in self.conditions],
        })

    @classmethod
    def from_dict(cls, d: dict) -> "CheckReport":
        conds = tuple(
            Condition(c["name"], Fraction(c["lhs"]), c["rel"], Fraction(c["rhs"]),
                      tuple(c.get("witness", ())), c.get("tracked", True))
            for c in d["conditions"]
        )
        values = {k: Fraction(v) for k, v in d.get("values", {}).items()}
        return cls(d["check"], d["graph"], d.get("edge"), conds, values)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


# -- δ provider ------------------------------------------------------------

class DeltaCache:
    """Memoised exact δ keyed by isomorphism class."""

    def __init__(self, fn: Callable[[MetricGraph], Fraction] | None = None):
        self.fn = fn or (lambda g: delta_exact(g).delta)
        self.memo: dict = {}

    def __call__(self, g: MetricGraph) -> Fraction:
        if is_tree(g):
            return Fraction(0)
        key = (g.mode, canonical_code(g))
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = self.fn(g)
        return hit


def _delta_fn(delta):
    return delta if delta is not None else DeltaCache()


# -- individual checks -----------------------------------------------------

def _u(x) -> Fraction:
    return Fraction(int(x), UNIT)


def check_contraction_distance_bounds(g: MetricGraph, e: int, resolution: int = 2) -> CheckReport:
    """Compare distances in ``G`` and ``G/e`` over all pairs of grid points."""
    t0 = time.perf_counter()
    cr = contract_edge(g, e)
    pts = grid_points(g, resolution)
    DG = pairwise_distances(g, pts)
    DQ = pairwise_distances(cr.quotient, [cr.map_point(p) for p in pts])
    gap = DG - DQ

    def arg(mat, mask=None):
        if mask is not None:
            mat = np.where(mask, mat, np.iinfo(np.int64).min)
        i, j = np.unravel_index(int(np.argmax(mat)), mat.shape)
        return int(mat[i, j]), (str(pts[i]), str(pts[j]))

    lip, lip_w = arg(DQ - DG)
    big, big_w = arg(gap)
    # x == y always attains equality here, so it is not a sharpness signal
    conds = [Condition("lipschitz", _u(lip), "<=", Fraction(0), lip_w, tracked=False)]
    values = {"max_gap": _u(big)}
    if g.mode is Mode.MULTI:
        conds.append(Condition("gap", _u(big), "<=", Fraction(1), big_w))
    else:
        conds.append(Condition("gap", _u(big), "<=", Fraction(3, 2), big_w))
        a, b = g.edges[e]
        eid = {frozenset(x): i for i, x in enumerate(g.edges)}
        masks = np.zeros(len(pts), dtype=np.int64)
        for k, (_, _, v) in enumerate(cycles3_through_edge(g, e)):
            verts = {a, b, v}
            edges = {e, eid[frozenset((v, a))], eid[frozenset((v, b))]}
            for i, p in enumerate(pts):
                if (p.edge < 0 and p.pos in verts) or p.edge in edges:
                    masks[i] |= 1 << k
        in_j = np.array([p.edge < 0 or 2 * p.pos == UNIT for p in pts])
        share = (masks[:, None] & masks[None, :]) != 0
        sharp_mask = in_j[:, None] | in_j[None, :] | ~share
        cb, cb_w = arg(gap, sharp_mask)
        conds.append(Condition("gap_conditional", _u(cb), "<=", Fraction(1), cb_w))
        if (~sharp_mask).any():
            values["max_gap_common_triangle"] = _u(arg(gap, ~sharp_mask)[0])
    return CheckReport("distances", graph_key(g), e, tuple(conds), values,
                       time.perf_counter() - t0)


def check_contraction_delta_bounds(g: MetricGraph, e: int, delta=None) -> CheckReport:
    """Exact δ of ``G`` and ``G/e`` against the contraction bounds."""
    t0 = time.perf_counter()
    delta = _delta_fn(delta)
    q = contract_edge(g, e).quotient
    dg, dq = delta(g), delta(q)
    w = (f"e{e}",)
    conds = [
        Condition("lower", dq / 3, "<=", dg, w),
        Condition("upper", dg, "<=", Fraction(16, 3) * dq + 1, w),
    ]
    if is_cut_edge(g, e):
        conds.append(Condition("cut_edge", dq, "==", dg, w))
    if is_tree(q):
        conds.append(Condition("tree_quotient", dg, "<=", Fraction(1), w))
    values = {"delta_G": dg, "delta_G_e": dq, "change": dq - dg}
    return CheckReport("contraction", graph_key(g), e, tuple(conds), values,
                       time.perf_counter() - t0)


def check_deletion_delta_bounds(g: MetricGraph, e: int, delta=None) -> CheckReport:
    """Exact δ of ``G`` and ``G∖e`` against the deletion bounds.

    Raises
    ------
    CutEdge
        If removing ``e`` disconnects ``g``.
    """
    if is_cut_edge(g, e):
        raise CutEdge(f"edge {e} {g.edges[e]} is a cut-edge; G minus e is disconnected")
    if g.edges[e][0] == g.edges[e][1]:
        raise ValueError(f"edge {e} is a loop; the deletion bounds need distinct endpoints")
    t0 = time.perf_counter()
    delta = _delta_fn(delta)
    h = delete_edge(g, e)
    a, b = g.edges[e]
    d = _u(h.dist[a][b])
    dg, dh = delta(g), delta(h)
    w = (f"e{e}",)
    conds = (
        Condition("lower", max(dh / 5, (d + 1) / 4), "<=", dg, w),
        Condition("upper", dg, "<=", 6 * dh + d, w),
    )
    values = {"delta_G": dg, "delta_G_minus_e": dh, "detour": d, "change": dh - dg}
    return CheckReport("deletion", graph_key(g), e, conds, values, time.perf_counter() - t0)


def check_blocks(g: MetricGraph, delta=None) -> CheckReport:
    t0 = time.perf_counter()
    delta = _delta_fn(delta)
    direct = delta(g)
    split = delta_via_blocks(g).delta
    conds = (Condition("blocks_equal", split, "==", direct),)
    return CheckReport("blocks", graph_key(g), None, conds, {"delta_G": direct},
                       time.perf_counter() - t0)


def check_cactus(g: MetricGraph, delta=None) -> list:
    """Closed form and contraction behaviour on cacti; empty list otherwise."""
    prof = cactus_profile(g)
    if not prof.is_cactus:
        return []
    t0 = time.perf_counter()
    delta = _delta_fn(delta)
    dg = delta(g)
    closed = Fraction(prof.circumference or 0, 4)
    out = [CheckReport("cactus", graph_key(g), None, (Condition("closed_form", dg, "==", closed),),
                       {"circumference": Fraction(prof.circumference or 0),
                        "longest_cycles": Fraction(prof.max_cycle_count)},
                       time.perf_counter() - t0)]
    unique = prof.max_cycles[0] if prof.max_cycle_count == 1 else ()
    for e, (a, b) in enumerate(g.edges):
        if a == b:
            continue
        t0 = time.perf_counter()
        dq = delta(contract_edge(g, e).quotient)
        rel = "!=" if e in unique else "=="
        out.append(CheckReport("cactus", graph_key(g), e,
                               (Condition("contraction", dq, rel, dg, (f"e{e}",)),),
                               {"delta_G": dg, "delta_G_e": dq}, time.perf_counter() - t0))
    return out


def run_checks(g: MetricGraph, checks: Iterable[str], delta=None,
               resolution: int = SWEEP_RESOLUTION) -> list:
    """Every selected check on ``g`` and each applicable edge, in a fixed order."""
    delta = _delta_fn(delta)
    checks = set(checks)
    unknown = checks - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(sorted(unknown))}")
    out = []
    for e, (a, b) in enumerate(g.edges):
        loop = a == b
        if "distances" in checks and not loop:
            out.append(check_contraction_distance_bounds(g, e, resolution))
        if "contraction" in checks and not loop:
            out.append(check_contraction_delta_bounds(g, e, delta))
        if "deletion" in checks and not loop and not is_cut_edge(g, e):
            out.append(check_deletion_delta_bounds(g, e, delta))
    if "blocks" in checks:
        out.append(check_blocks(g, delta))
    if "cactus" in checks:
        out.extend(check_cactus(g, delta))
    return out


def recheck(report: CheckReport, resolution: int = 2) -> bool:
    """Rebuild the graph of ``report`` and confirm it reproduces exactly.

    For distance checks each condition's witness pair is re-measured with
    :func:`point_distance`, and the whole check is recomputed at the given
    resolution (which must match the one used to produce the report).
    """
    g = graph_from_key(report.graph)
    if report.check == "distances":
        cr = contract_edge(g, report.edge)
        for c in report.conditions:
            x, y = (parse_point(s) for s in c.witness)
            dg = point_distance(g, x, y)
            dq = point_distance(cr.quotient, cr.map_point(x), cr.map_point(y))
            val = dq - dg if c.name == "lipschitz" else dg - dq
            if _u(val) != c.lhs:
                return False
        fresh = check_contraction_distance_bounds(g, report.edge, resolution)
    elif report.check == "contraction":
        fresh = check_contraction_delta_bounds(g, report.edge)
    elif report.check == "deletion":
        fresh = check_deletion_delta_bounds(g, report.edge)
    elif report.check == "blocks":
        fresh = check_blocks(g)
    elif report.check == "cactus":
        fresh = next(r for r in check_cactus(g) if r.edge == report.edge)
    else:
        raise ValueError(f"unknown check {report.check!r}")
    return fresh == report


# -- sweeps ----------------------------------------------------------------

@dataclass
class SweepSummary:
    family: str
    mode: Mode
    min_vertices: int
    max_vertices: int
    checks: tuple
    graphs_examined: int = 0
    graphs_by_order: dict = field(default_factory=dict)
    runs: dict = field(default_factory=dict)
    passes: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    sharpness: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_text(self) -> str:
        lines = [kv_line([("sweep", self.family), ("mode", self.mode.value),
                          ("min_vertices", self.min_vertices), ("max_vertices", self.max_vertices),
                          ("checks", ",".join(self.checks)), ("graphs", self.graphs_examined),
                          ("violations", len(self.violations))])]
        for n in sorted(self.graphs_by_order):
            lines.append(kv_line([("order", n), ("graphs", self.graphs_by_order[n])]))
        for name in self.checks:
            lines.append(kv_line([("check", name), ("runs", self.runs.get(name, 0)),
                                  ("holds", self.passes.get(name, 0))]))
        for rep in self.violations:
            lines.append("violation " + rep.to_text())
        for graph, check, edge, cond in self.sharpness:
            lines.append(kv_line([("sharp", cond), ("check", check), ("graph", graph), ("edge", edge)]))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return jsonable({
            "family": self.family,
            "mode": self.mode.value,
            "min_vertices": self.min_vertices,
            "max_vertices": self.max_vertices,
            "checks": list(self.checks),
            "graphs_examined": self.graphs_examined,
            "graphs_by_order": {str(k): v for k, v in sorted(self.graphs_by_order.items())},
            "runs": dict(self.runs),
            "passes": dict(self.passes),
            "violations": [r.to_dict() for r in self.violations],
            "sharpness": [{"graph": g, "check": c, "edge": e, "condition": k}
                          for g, c, e, k in self.sharpness],
        })

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


_WORKER_DELTA: DeltaCache | None = None


def _worker_init(memo):
    global _WORKER_DELTA
    _WORKER_DELTA = DeltaCache()
    _WORKER_DELTA.memo.update(memo)


def _sweep_task(args):
    g, checks, resolution = args
    delta = _WORKER_DELTA if _WORKER_DELTA is not None else DeltaCache()
    return run_checks(g, checks, delta, resolution)


def _census(n: int, mode: Mode) -> list:
    gen = all_connected(n) if mode is Mode.SIMPLE else all_connected_multigraphs(n)
    return list(gen)


def exhaustive_verify(max_vertices: int, mode: Mode | str = Mode.SIMPLE, checks=None, *,
                      min_vertices: int = 1, parallelism: int = 1,
                      resolution: int = SWEEP_RESOLUTION, budget: int | None = None) -> SweepSummary:
    """Run checks over every connected graph with ``min_vertices..max_vertices`` vertices.

    Multigraphs are limited to edge multiplicity 2 and one loop per vertex.
    Output is independent of ``parallelism``: graphs are processed in
    canonical-code order within each order and results merged in that order.

    Raises
    ------
    BudgetExceeded
        If ``max_vertices`` is above the budget for the mode.
    """
    mode = Mode(mode)
    limit = BUDGET[mode] if budget is None else budget
    if max_vertices > limit:
        raise BudgetExceeded(f"max_vertices={max_vertices} exceeds the {mode.value} budget of {limit}")
    if not 1 <= min_vertices <= max_vertices:
        raise ValueError("need 1 <= min_vertices <= max_vertices")
    checks = tuple(c for c in CHECKS if c in set(checks or DEFAULT_CHECKS[mode]))
    t0 = time.perf_counter()
    summary = SweepSummary("all-connected", mode, min_vertices, max_vertices, checks)
    graphs = []
    for n in range(min_vertices, max_vertices + 1):
        level = _census(n, mode)
        summary.graphs_by_order[n] = len(level)
        graphs.extend(level)
    summary.graphs_examined = len(graphs)
    tasks = [(g, checks, resolution) for g in graphs]
    if parallelism <= 1:
        delta = DeltaCache()
        results = [run_checks(g, checks, delta, resolution) for g in graphs]
    else:
        # δ of every census graph first, so workers share one table
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            vals = list(pool.map(_delta_only, graphs, chunksize=8))
        memo = {(g.mode, canonical_code(g)): v for g, v in zip(graphs, vals)}
        with ProcessPoolExecutor(max_workers=parallelism, initializer=_worker_init,
                                 initargs=(memo,)) as pool:
            results = list(pool.map(_sweep_task, tasks, chunksize=4))
    for reports in results:
        for rep in reports:
            summary.runs[rep.check] = summary.runs.get(rep.check, 0) + 1
            if rep.status is Status.HOLDS:
                summary.passes[rep.check] = summary.passes.get(rep.check, 0) + 1
            else:
                summary.violations.append(rep)
            for cond in rep.sharp:
                summary.sharpness.append((rep.graph, rep.check, rep.edge, cond))
    summary.elapsed = time.perf_counter() - t0
    return summary


def _delta_only(g: MetricGraph) -> Fraction:
    return delta_exact(g).delta


# -- named examples --------------------------------------------------------

def nonmonotonicity_witnesses() -> list:
    """Three minors where δ moves the "wrong" way or drops sharply.

    * contracting a rim edge of the 11-vertex wheel raises δ from 5/4 to 3/2;
    * deleting the short path of ``theta(1, 4, 4)`` raises δ from 7/4 to 2;
    * deleting an edge of the 5-cycle drops δ from 5/4 to 0.
    """
    w11 = wheel(11)
    rim = w11.edges.index((1, 2))
    return [
        check_contraction_delta_bounds(w11, rim),
        check_deletion_delta_bounds(theta(1, 4, 4), 0),
        check_deletion_delta_bounds(cycle(5), 0),
    ]

