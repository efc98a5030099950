"""Command-line frontend: detect / deceive / score / generate / evaluate."""

import argparse
import json
import os
import random
import sys

from . import graphio
from .detection import DETECTOR_ALIASES, detect, resolve_detector
from .errors import DeceptionError
from .harness import DECEIVERS, aggregate_reports, evaluate, select_worst_case_target
from .modularity import modularity, run_modmin
from .partition import TargetCommunity, build_partition
from .safeness import community_safeness, run_safgain
from .score import deception_score

CLI_DETECTORS = ("louvain", "labelprop", "greedy")


class UsageError(Exception):
    """Argument combinations argparse cannot express; exits with code 2."""


def parse_budgets(text: str) -> list:
    """Accept comma lists and a..b ranges, e.g. "1,2,3" or "1..4" or "1,3..5"."""
    budgets = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, _, hi = part.partition("..")
            budgets.extend(range(int(lo), int(hi) + 1))
        elif part:
            budgets.append(int(part))
    return budgets


def _add_graph_args(p):
    p.add_argument("--graph", required=True, help="input graph file")
    p.add_argument("--format", choices=("edgelist", "gml"), default="edgelist")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="decept",
        description="Hide a target community from community-detection algorithms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="run a community detector")
    _add_graph_args(p)
    p.add_argument("--algorithm", choices=CLI_DETECTORS, default="louvain")
    p.add_argument("--emit", choices=("text", "json"), default="text")

    p = sub.add_parser("deceive", help="rewire edges to hide a target community")
    _add_graph_args(p)
    p.add_argument("--deceiver", choices=DECEIVERS, required=True)
    p.add_argument("--budget", type=int, required=True, help="max number of edge updates")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--target-file", help="file with one line of member labels")
    group.add_argument("--worst-case", action="store_true",
                       help="hide a randomly chosen detected community")
    p.add_argument("--algorithm", choices=CLI_DETECTORS, default="louvain",
                   help="detector supplying the partition (and the worst-case target)")

    p = sub.add_parser("score", help="deception score of a target in a partition")
    _add_graph_args(p)
    p.add_argument("--partition-file", required=True,
                   help="file with one community per line")
    p.add_argument("--target-file", required=True)
    p.add_argument("--emit", choices=("text", "json"), default="text")

    p = sub.add_parser("generate", help="sample a planted-partition graph")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--communities", type=int, default=None)
    p.add_argument("--p-in", type=float, required=True)
    p.add_argument("--p-out", type=float, required=True)
    p.add_argument("--min-size", type=int, default=None)
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="edge list file (default stdout)")
    p.add_argument("--truth", help="ground-truth communities file "
                                   "(default <output>.communities)")

    p = sub.add_parser("evaluate", help="full detect/deceive/re-detect sweep")
    _add_graph_args(p)
    p.add_argument("--detectors", default="louvain",
                   help="comma list of detectors (louvain,labelprop,greedy)")
    p.add_argument("--deceivers", default="modmin,safgain",
                   help="comma list of deceivers (modmin,safgain)")
    p.add_argument("--budgets", default="1..4", help="comma list / a..b ranges")
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--emit", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1, help="max concurrent cells")
    p.add_argument("--summary", action="store_true",
                   help="print grouped means to stderr")
    return parser


def _write_out(data: bytes, output):
    if output:
        with open(output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)


def _load(args):
    # --graph accepts a path or a dataset name (bundled / $DECEPT_DATA_DIR)
    path = args.graph if os.path.exists(args.graph) else graphio.dataset_path(args.graph)
    return graphio.load_graph_file(path, args.format)


def _read_target(path, graph, table):
    with open(path, "rb") as fh:
        communities = graphio.parse_community_lines(fh.read(), table)
    if len(communities) != 1:
        raise DeceptionError(
            f"target file must contain exactly one community line, found {len(communities)}"
        )
    return TargetCommunity.from_graph(graph, communities[0])


def _communities_text(partition, table):
    lines = []
    for comm in partition.communities:
        lines.append(" ".join(table.label_of(u) for u in sorted(comm)))
    return ("\n".join(lines) + "\n").encode("utf-8")


def cmd_detect(args) -> int:
    graph, table = _load(args)
    partition = detect(graph, args.algorithm, seed=args.seed)
    q = modularity(partition) if graph.m else 0.0
    if args.emit == "json":
        payload = {
            "algorithm": resolve_detector(args.algorithm),
            "modularity": float(graphio.format_float(q)),
            "communities": [
                [table.label_of(u) for u in sorted(comm)]
                for comm in partition.communities
            ],
        }
        data = (json.dumps(payload, indent=2) + "\n").encode("utf-8")
    else:
        data = _communities_text(partition, table)
    _write_out(data, args.output)
    return 0


def cmd_deceive(args) -> int:
    if args.budget < 1:
        raise UsageError("--budget must be >= 1")
    graph, table = _load(args)
    partition = detect(graph, args.algorithm, seed=args.seed)
    rng = random.Random(args.seed)
    if args.worst_case:
        target = select_worst_case_target(graph, partition, rng)
    else:
        target = _read_target(args.target_file, graph, table)
    if args.deceiver == "modmin":
        result = run_modmin(graph, partition, target, args.budget, rng)
    else:
        result = run_safgain(graph, target, args.budget, rng)
    if args.output:
        _write_out(graphio.write_edge_list(result.graph, table), args.output)
    for upd in result.updates:
        print(f"{upd.kind.value} {table.label_of(upd.u)} {table.label_of(upd.v)}")
    if result.truncated:
        print(f"# stopped early: no further update available "
              f"({len(result.updates)}/{args.budget} applied)", file=sys.stderr)
    if not args.output:
        print("# rerun with --output FILE to write the updated edge list", file=sys.stderr)
    return 0


def cmd_score(args) -> int:
    graph, table = _load(args)
    with open(args.partition_file, "rb") as fh:
        communities = graphio.parse_community_lines(fh.read(), table)
    partition = build_partition(graph, communities)
    target = _read_target(args.target_file, graph, table)
    breakdown = deception_score(graph, partition, target)
    safeness = community_safeness(graph, target)
    q = modularity(partition) if graph.m else 0.0
    fields = {
        "score": breakdown.score,
        "reachability": breakdown.reachability,
        "spread": breakdown.spread,
        "hiding": breakdown.hiding,
        "components": breakdown.components,
        "safeness": safeness,
        "modularity": q,
    }
    if args.emit == "json":
        payload = {
            k: (v if isinstance(v, int) else float(graphio.format_float(v)))
            for k, v in fields.items()
        }
        data = (json.dumps(payload, indent=2) + "\n").encode("utf-8")
    else:
        lines = [
            f"{k}: {v if isinstance(v, int) else graphio.format_float(v)}"
            for k, v in fields.items()
        ]
        data = ("\n".join(lines) + "\n").encode("utf-8")
    _write_out(data, args.output)
    return 0


def cmd_generate(args) -> int:
    params = graphio.PlantedPartitionParams(
        n=args.nodes,
        k=args.communities,
        p_in=args.p_in,
        p_out=args.p_out,
        seed=args.seed,
        min_size=args.min_size,
        max_size=args.max_size,
    )
    graph, truth = graphio.generate_planted_partition(params)
    _write_out(graphio.write_edge_list(graph), args.output)
    truth_lines = "\n".join(" ".join(str(u) for u in sorted(c)) for c in truth) + "\n"
    truth_path = args.truth or (f"{args.output}.communities" if args.output else None)
    if truth_path:
        with open(truth_path, "w") as fh:
            fh.write(truth_lines)
    else:
        sys.stderr.write(truth_lines)
    return 0


def cmd_evaluate(args) -> int:
    graph, table = _load(args)
    detectors = [d.strip() for d in args.detectors.split(",") if d.strip()]
    deceivers = [d.strip() for d in args.deceivers.split(",") if d.strip()]
    budgets = parse_budgets(args.budgets)
    if not detectors or not deceivers or not budgets:
        raise UsageError("need at least one detector, deceiver and budget")
    if args.runs < 1:
        raise UsageError("--runs must be >= 1")
    if any(b < 1 for b in budgets):
        raise UsageError("budgets must be >= 1")
    for name in detectors:
        if name not in DETECTOR_ALIASES:
            raise UsageError(f"unknown detector {name!r}")
    for name in deceivers:
        if name not in DECEIVERS:
            raise UsageError(f"unknown deceiver {name!r}")
    dataset = os.path.splitext(os.path.basename(args.graph))[0]
    reports = []
    for detector in detectors:
        for deceiver in deceivers:
            reports.extend(
                evaluate(
                    graph,
                    detector,
                    deceiver,
                    budgets,
                    runs=args.runs,
                    seed=args.seed,
                    dataset=dataset,
                    jobs=args.jobs,
                )
            )
    _write_out(graphio.write_reports(reports, args.emit, label_table=table), args.output)
    if args.summary:
        for row in aggregate_reports(reports):
            sys.stderr.write(
                f"{row.dataset} {row.detector} {row.deceiver} budget={row.budget}: "
                f"score {graphio.format_float(row.score_after_mean)}"
                f" +/- {graphio.format_float(row.score_after_std)}"
                f" ({row.failures} failed)\n"
            )
    return 0


COMMANDS = {
    "detect": cmd_detect,
    "deceive": cmd_deceive,
    "score": cmd_score,
    "generate": cmd_generate,
    "evaluate": cmd_evaluate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.exit(2, f"{parser.prog}: error: {exc}\n")
    except (DeceptionError, OSError, ValueError) as exc:
        print(f"{parser.prog}: {args.command} failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
