"""Command-line interface: ``graphdelta <command> ...``.

Exit status is 0 on success, 1 when any verification check is violated and 2
on usage or input errors.  ``-`` reads the graph from standard input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .errors import GraphError
from .generators import generate, parse_family
from .hyperbolicity import EnumerationOptions, Method, compute_delta
from .metric_graph import Mode, MetricGraph, format_graph, read_graph, split_documents
from .minors import contract_edge, delete_edge
from .verification import (
    CHECKS,
    SWEEP_RESOLUTION,
    Status,
    check_contraction_delta_bounds,
    check_contraction_distance_bounds,
    check_deletion_delta_bounds,
    exhaustive_verify,
    nonmonotonicity_witnesses,
)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Options shared by the subcommands, with their documented defaults."""

    method: Method = Method.EXACT
    cap: int = 256
    resolution: int = 2
    mode: Mode | None = None
    fmt: str = "text"
    seed: int = 0
    parallelism: int = 1

    @classmethod
    def from_args(cls, ns) -> "RunConfig":
        return cls(
            method=Method(getattr(ns, "method", "exact")),
            cap=getattr(ns, "cap", 256),
            resolution=getattr(ns, "resolution", 2) or 2,
            mode=Mode(ns.mode) if getattr(ns, "mode", None) else None,
            fmt="json" if getattr(ns, "json", False) else "text",
            seed=getattr(ns, "seed", 0),
            parallelism=getattr(ns, "parallelism", 1),
        )


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str, mode: Mode | None = None):
    docs = split_documents(_read_text(path))
    if not docs:
        raise UsageError(f"{path}: no graph found")
    return [read_graph(doc, mode) for doc in docs]


def _load_one(path: str, mode: Mode | None = None):
    graphs = _load(path, mode)
    if len(graphs) > 1:
        raise UsageError(f"{path}: expected one graph, found {len(graphs)}")
    return graphs[0]


def _find_edge(g: MetricGraph, labels, spec: str) -> int:
    try:
        u, v = (int(x) for x in spec.split(","))
    except ValueError:
        raise UsageError(f"--edge expects U,V, got {spec!r}") from None
    want = sorted((u, v))
    for i, (a, b) in enumerate(g.edges):
        if sorted((labels[a], labels[b])) == want:
            return i
    raise UsageError(f"no edge {u},{v} in the graph")


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_delta(ns) -> int:
    cfg = RunConfig.from_args(ns)
    opts = EnumerationOptions(geodesic_cap=cfg.cap, cycle_prune=not ns.no_prune,
                              resolution=cfg.resolution)
    reports = [compute_delta(g, cfg.method, opts) for g, _ in _load(ns.file, cfg.mode)]
    if cfg.fmt == "json":
        doc = [r.to_dict() for r in reports]
        _emit(json.dumps(doc[0] if len(doc) == 1 else doc, sort_keys=True, indent=2))
    else:
        _emit("---\n".join(r.to_text() for r in reports))
    return 0


def cmd_contract(ns) -> int:
    g, labels = _load_one(ns.file, Mode(ns.mode) if ns.mode else None)
    res = contract_edge(g, _find_edge(g, labels, ns.edge))
    _emit(res.to_text(labels))
    return 0


def cmd_delete(ns) -> int:
    g, labels = _load_one(ns.file, Mode(ns.mode) if ns.mode else None)
    e = _find_edge(g, labels, ns.edge)
    h = delete_edge(g, e)
    a, b = g.edges[e]
    _emit(format_graph(h, [f"deleted edge {labels[a]} {labels[b]}"]))
    return 0


def cmd_verify(ns) -> int:
    g, labels = _load_one(ns.file, Mode(ns.mode) if ns.mode else None)
    e = _find_edge(g, labels, ns.edge)
    if ns.check == "distances":
        rep = check_contraction_distance_bounds(g, e, ns.resolution or 2)
    elif ns.check == "contraction":
        rep = check_contraction_delta_bounds(g, e)
    else:
        rep = check_deletion_delta_bounds(g, e)
    _emit(rep.to_json() if ns.json else rep.to_text())
    return 0 if rep.status is Status.HOLDS else 1


def cmd_sweep(ns) -> int:
    checks = None
    if ns.checks:
        checks = [c.strip() for c in ns.checks.split(",") if c.strip()]
        bad = sorted(set(checks) - set(CHECKS))
        if bad:
            raise UsageError(f"unknown checks {', '.join(bad)}; choose from {', '.join(CHECKS)}")
    summary = exhaustive_verify(
        ns.max_vertices, ns.mode or "simple", checks,
        min_vertices=ns.min_vertices or 1, parallelism=ns.parallelism,
        resolution=ns.resolution or SWEEP_RESOLUTION,
    )
    _emit(summary.to_json() if ns.json else summary.to_text())
    return 0 if summary.ok else 1


def cmd_gen(ns) -> int:
    words = list(ns.family)
    if words and words[0] == "random" and len(words) == 3:
        words.append(str(ns.seed))
    spec = parse_family(words, ns.mode or "simple")
    out = generate(spec)
    if isinstance(out, MetricGraph):
        _emit(format_graph(out))
    else:
        _emit("---\n".join(format_graph(g) for g in out))
    return 0


def cmd_witness(ns) -> int:
    reps = nonmonotonicity_witnesses()
    if ns.json:
        _emit(json.dumps([r.to_dict() for r in reps], sort_keys=True, indent=2))
    else:
        _emit("\n".join(r.to_text() for r in reps))
    return 0 if all(r.status is Status.HOLDS for r in reps) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphdelta",
                                description="Exact hyperbolicity of metric graphs and their minors.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="graph file, or - for standard input")
        sp.add_argument("--mode", choices=["simple", "multi"], help="override the file's mode")
        return sp

    sp = graph_cmd("delta", "compute the hyperbolicity constant")
    sp.add_argument("--method", choices=[m.value for m in Method], default="exact")
    sp.add_argument("--cap", type=int, default=256, help="geodesics per corner pair (default 256)")
    sp.add_argument("--resolution", type=int, choices=[1, 2, 4, 8], default=2)
    sp.add_argument("--no-prune", action="store_true", help="also try non-cycle triangles")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_delta)

    sp = graph_cmd("contract", "contract one edge")
    sp.add_argument("--edge", required=True, metavar="U,V")
    sp.set_defaults(func=cmd_contract)

    sp = graph_cmd("delete", "delete one edge")
    sp.add_argument("--edge", required=True, metavar="U,V")
    sp.set_defaults(func=cmd_delete)

    sp = graph_cmd("verify", "check one inequality on one edge")
    sp.add_argument("--edge", required=True, metavar="U,V")
    sp.add_argument("--check", required=True, choices=["distances", "contraction", "deletion"])
    sp.add_argument("--resolution", type=int, choices=[1, 2, 4, 8], default=None)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="run checks over all small connected graphs")
    sp.add_argument("--max-vertices", type=int, required=True)
    sp.add_argument("--min-vertices", type=int, default=1)
    sp.add_argument("--mode", choices=["simple", "multi"], default="simple")
    sp.add_argument("--checks", help=f"comma list from {','.join(CHECKS)}")
    sp.add_argument("--parallelism", type=int, default=1)
    sp.add_argument("--resolution", type=int, choices=[1, 2, 4, 8], default=None,
                    help=f"grid for distance checks (default {SWEEP_RESOLUTION})")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("gen", help="emit a named graph family")
    sp.add_argument("family", nargs="+",
                    help="path N | cycle N | complete N | wheel N | theta A B C | diamond | "
                         "random N M [SEED] | all N | all-multi N")
    sp.add_argument("--mode", choices=["simple", "multi"], default=None)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("witness", help="reproduce the non-monotone minor examples")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_witness)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except (UsageError, GraphError, ValueError) as exc:
        print(f"graphdelta {ns.command}: error: {exc}", file=sys.stderr)
        return 2


def run(argv=None) -> int:
    """Entry point that never raises ``SystemExit`` for argument errors."""
    try:
        return main(argv)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
