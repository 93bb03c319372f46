"""Command-line entry points.

Exit codes: 0 success, 1 config error, 2 I/O error, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import sys

from .bench import find_percolation_threshold, run_sweep
from .config import load_config
from .errors import ConfigError, ParseError, SidematchError
from .ingest import ingest_edge_list, ingest_labels, restrict_to_lcc


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    rows = run_sweep(cfg)
    print(f"wrote {rows} rows to {cfg.output}")
    return 0


def _cmd_threshold(args) -> int:
    cfg = load_config(args.config)
    result = find_percolation_threshold(cfg)
    with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
        fh.write("# sidematch-threshold-v1\n")
        for line in cfg.echo_lines():
            fh.write(line + "\n")
        fh.write("phi,successes,trials\n")
        for phi, wins, trials in result.probes:
            fh.write(f"{phi},{wins},{trials}\n")
    if result.threshold is None:
        print(f"threshold none <= {result.phi_max}")
    else:
        print(f"threshold {result.threshold}")
    print(f"wrote {len(result.probes)} probes to {cfg.output}")
    return 0


def _cmd_ingest_check(args) -> int:
    ingested = ingest_edge_list(args.edges)
    g = ingested.graph
    print(f"vertices {g.n}")
    print(f"edges {g.num_edges}")
    print(f"self_loops_dropped {ingested.self_loops_dropped}")
    labeling = tokens = None
    if args.labels:
        labeling, tokens = ingest_labels(args.labels, ingested.id_of, g.n)
        print(f"communities {labeling.k}")
        print(f"labeled {labeling.labeled_count}")
    sub, lab, _, _ = restrict_to_lcc(ingested, labeling, tokens)
    print(f"lcc_vertices {sub.n}")
    print(f"lcc_edges {sub.num_edges}")
    if lab is not None:
        print(f"lcc_communities {lab.k}")
        print(f"lcc_labeled {lab.labeled_count}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sidematch",
        description="Graph matching benchmarks: community-degree naive "
                    "matching and seeded percolation on correlated SBM pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run a Monte-Carlo sweep to CSV")
    p_sweep.add_argument("config", help="config file (key = value lines)")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_thr = sub.add_parser(
        "threshold", help="find the minimum seed count that percolates")
    p_thr.add_argument("config", help="config file (key = value lines)")
    p_thr.set_defaults(func=_cmd_threshold)

    p_ing = sub.add_parser(
        "ingest-check", help="parse an edge list (and labels) and report sizes")
    p_ing.add_argument("edges", help="whitespace-separated edge list file")
    p_ing.add_argument("labels", nargs="?", default=None,
                       help="optional 'vertex community' label file")
    p_ing.set_defaults(func=_cmd_ingest_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except SidematchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
