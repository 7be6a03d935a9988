"""Command line entry point: ``fanocore {check,compute,invariants,counterexample}``."""
from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager

from .budget import DEFAULT_NODES, Budget
from .graph import Graph6ParseError, GraphError, parse_graph6, read_graph6_lines, write_graph6
from .harness import (
    BUILTIN_PREFIX,
    CHECKS,
    EXIT_IO,
    EXIT_OK,
    EXIT_REFUTED,
    METRICS,
    builtin_graph,
    dump,
    exit_code,
    normalize_checks,
    run_batch,
)
from .invariants import run_invariants


@contextmanager
def _open_output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _split(value: str) -> list[str]:
    return [x for x in value.split(",") if x.strip()]


def _budget(args) -> Budget:
    nodes = None if args.budget is not None and args.budget <= 0 else args.budget
    return Budget(nodes, args.seconds)


def _batch(args, checks: list[str]) -> int:
    reports = []
    try:
        with _open_output(args.output) as out:
            for record in run_batch(args.input, checks, _budget(args), args.workers):
                reports.append(record)
                out.write(dump(record) + "\n")
                out.flush()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return exit_code(reports)


def cmd_check(args) -> int:
    try:
        checks = normalize_checks(_split(args.checks))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return _batch(args, checks)


def cmd_compute(args) -> int:
    try:
        metrics = normalize_checks(_split(args.metrics))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    bad = [m for m in metrics if m not in METRICS]
    if bad:
        print(f"error: not a metric: {', '.join(bad)}", file=sys.stderr)
        return EXIT_IO
    return _batch(args, metrics)


def cmd_invariants(args) -> int:
    failed = False
    try:
        if args.input.startswith(BUILTIN_PREFIX):
            g = builtin_graph(args.input[len(BUILTIN_PREFIX) :])
            lines = [write_graph6(g)]
        else:
            with open(args.input, "rb") as fh:
                lines = [s for _, s in read_graph6_lines(fh)]
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    parse_failed = False
    with _open_output(args.output) as out:
        for i, line in enumerate(lines):
            record: dict = {"index": i, "graph6": line.decode("ascii", "replace")}
            try:
                g = parse_graph6(line)
            except (Graph6ParseError, GraphError) as exc:
                record["error"] = str(exc)
                parse_failed = True
            else:
                results = run_invariants(g, sample=args.sample)
                record["invariants"] = results
                failed |= not all(results.values())
            out.write(dump(record) + "\n")
    if failed:
        return EXIT_REFUTED
    return EXIT_IO if parse_failed else EXIT_OK


def cmd_counterexample(args) -> int:
    from .gadgets import counterexample_graph, verify_counterexample

    x = counterexample_graph()
    g = x.expanded
    print(f"graph: K4-expansion of Petersen, {g.n} vertices, {g.m} edges")
    if args.emit_g6:
        with open(args.emit_g6, "wb") as fh:
            fh.write(write_graph6(g) + b"\n")
        print(f"graph6 written to {args.emit_g6}")
    start = time.perf_counter()
    report = verify_counterexample(args.mode, _budget(args))
    elapsed = time.perf_counter() - start
    r = report.as_dict()
    print(f"mode: {report.mode}")
    print(
        f"Petersen perfect matchings: {report.petersen_pm_count}; "
        f"pairs sharing exactly one edge: {report.petersen_pairs_sharing_one}/{report.petersen_pairs}"
    )
    print(f"perfect matchings of the expansion: {report.pm_count}")
    print(f"pairs checked: {report.pairs_checked}; pairs whose complement has a circuit: {report.cyclic_pairs}")
    print(f"elapsed: {elapsed:.2f} s")
    if report.all_pairs_cyclic:
        print("verdict: refuted (no two perfect matchings leave an acyclic complement)")
    else:
        print(f"verdict: {report.outcome.value}")
    if args.json:
        print(json.dumps(r))
    return EXIT_OK if report.all_pairs_cyclic and report.petersen_pair_property else EXIT_REFUTED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fanocore", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def budget_flags(sp):
        sp.add_argument(
            "--budget", type=int, default=DEFAULT_NODES,
            help="search-node cap per check (0 = unlimited, default %(default)s)",
        )
        sp.add_argument("--seconds", type=float, default=None, help="wall-clock cap per check")

    sp = sub.add_parser("check", help="run checks over a graph6 file, NDJSON out")
    sp.add_argument("--input", required=True, help="graph6 file, or @k4, @petersen, @k3_3, @counterexample")
    sp.add_argument("--checks", default="all", help=f"comma list from: {', '.join(CHECKS)}, or all")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--output", default=None, help="output file (default stdout)")
    budget_flags(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("compute", help="compute numeric invariants")
    sp.add_argument("--input", required=True)
    sp.add_argument("--metrics", default=",".join(METRICS), help=f"comma list from: {', '.join(METRICS)}")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--output", default=None)
    budget_flags(sp)
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("invariants", help="run the property suite on every input graph")
    sp.add_argument("--input", required=True)
    sp.add_argument("--output", default=None)
    sp.add_argument("--sample", type=int, default=2000, help="join triples sampled per graph")
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("counterexample", help="rebuild and verify the K4-expanded Petersen graph")
    sp.add_argument("--mode", choices=("full", "structured"), default="full")
    sp.add_argument("--emit-g6", default=None, metavar="FILE")
    sp.add_argument("--json", action="store_true", help="also print the report as JSON")
    budget_flags(sp)
    sp.set_defaults(func=cmd_counterexample, budget=0)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
