"""Batch runs over graph6 input: per-graph checks, NDJSON reports, exit codes.

A report line looks like

    {"index": 0, "graph6": "C~", "checks": {"oddness": {"outcome": "witness",
     "value": 0, "witness": [[0, 5]], "millis": 0.1}}, "omega_equal": true}

Witnesses are lists of edge-index lists (one per join) except for
``fano-lines``, whose witness is the edge-indexed list of flow values.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Callable, Iterable, Iterator, Sequence

from .budget import Budget, Outcome
from .cores import PREDICATES, InvariantViolation, check_witness, minimize_core, triple_from_masks
from .factors import complement_odd_components, is_join_mask, is_perfect_matching_mask, make_join
from .fano import FanoFlowError, min_line_fano_flow, validate_fano_flow
from .gadgets import counterexample_graph
from .graph import (
    CubicGraph,
    Graph6ParseError,
    GraphError,
    build_named,
    iter_bits,
    parse_graph6,
    read_graph6_lines,
    write_graph6,
)
from .parity import oddness, weak_oddness

METRICS = ("mu3", "mu3-prime", "oddness", "weak-oddness", "fano-lines", "cyclic-weak-core-k")
CHECKS = tuple(PREDICATES) + METRICS
ALIASES = {"fano-min-lines": "fano-lines", "fr": "fan-raspaud"}

EXIT_OK, EXIT_REFUTED, EXIT_IO, EXIT_BUDGET = 0, 1, 2, 3

BUILTIN_PREFIX = "@"


def normalize_checks(names: Iterable[str]) -> list[str]:
    out = []
    for raw in names:
        name = raw.strip().lower()
        if not name:
            continue
        name = ALIASES.get(name, name)
        if name == "all":
            out.extend(c for c in CHECKS if c not in out)
            continue
        if name not in CHECKS:
            raise ValueError(f"unknown check {raw!r}; choose from {', '.join(CHECKS)}")
        if name not in out:
            out.append(name)
    if not out:
        raise ValueError("no checks selected")
    return out


def builtin_graph(name: str) -> CubicGraph:
    if name == "counterexample":
        return counterexample_graph().expanded
    return build_named(name)


def _edges(bits: int) -> list[int]:
    return list(iter_bits(bits))


def _mask(indices: Sequence[int]) -> int:
    bits = 0
    for e in indices:
        bits |= 1 << e
    return bits


# check runners: each returns (outcome, value, witness) ----------------------


def _run_predicate(name: str) -> Callable:
    def run(g: CubicGraph, budget: Budget):
        from .cores import find_witness

        res = find_witness(g, name, budget)
        wit = [_edges(j.bits) for j in res.witness] if res.witness else None
        return res.outcome, None, wit

    return run


def _run_core(k_max: int) -> Callable:
    def run(g: CubicGraph, budget: Budget):
        res = minimize_core(g, k_max, "l", budget)
        wit = [_edges(m) for m in res.triple.masks()] if res.triple else None
        return res.outcome, res.l2, wit

    return run


def _run_cyclic_k(g: CubicGraph, budget: Budget):
    res = minimize_core(g, 3, "cyclic-feasibility", budget)
    wit = [_edges(m) for m in res.triple.masks()] if res.triple else None
    return res.outcome, res.k, wit


def _run_oddness(g: CubicGraph, budget: Budget):
    value, m = oddness(g)
    return Outcome.WITNESS, value, [_edges(m.bits)]


def _run_weak_oddness(g: CubicGraph, budget: Budget):
    value, j = weak_oddness(g)
    return Outcome.WITNESS, value, [_edges(j.bits)]


def _run_fano(g: CubicGraph, budget: Budget):
    res = min_line_fano_flow(g, budget)
    return res.outcome, res.k, list(res.flow.values) if res.flow else None


RUNNERS: dict[str, Callable] = {name: _run_predicate(name) for name in PREDICATES}
RUNNERS.update(
    {
        "mu3": _run_core(0),
        "mu3-prime": _run_core(3),
        "oddness": _run_oddness,
        "weak-oddness": _run_weak_oddness,
        "fano-lines": _run_fano,
        "cyclic-weak-core-k": _run_cyclic_k,
    }
)


# witness re-validation --------------------------------------------------------


def revalidate(g: CubicGraph, name: str, entry: dict) -> bool:
    """Check a serialized result against its check, independently of the search."""
    if entry["outcome"] != Outcome.WITNESS.value:
        return entry.get("witness") is None
    wit = entry.get("witness")
    value = entry.get("value")
    if wit is None:
        return False
    try:
        if name in PREDICATES:
            masks = [_mask(w) for w in wit]
            if not all(is_join_mask(g, m) for m in masks):
                return False
            return check_witness(g, name, [make_join(g, m) for m in masks])
        if name == "fano-lines":
            return validate_fano_flow(g, wit).k == value
        if name in ("oddness", "weak-oddness"):
            (edges,) = wit
            m = _mask(edges)
            ok = is_perfect_matching_mask(g, m) if name == "oddness" else is_join_mask(g, m)
            return ok and complement_odd_components(g, m) == value
        masks = [_mask(w) for w in wit]
        if len(masks) != 3 or not all(is_join_mask(g, m) for m in masks):
            return False
        t = triple_from_masks(g, *masks)
        if name == "mu3":
            return t.k == 0 and t.l2 == value
        if name == "mu3-prime":
            return t.l2 == value
        if name == "cyclic-weak-core-k":
            return t.k == value and not t.partition[3]
    except (FanoFlowError, InvariantViolation, ValueError):
        return False
    raise ValueError(f"unknown check {name!r}")


# per-graph driver ---------------------------------------------------------------


@dataclass
class Job:
    index: int
    graph6: str
    checks: list[str]
    max_nodes: int | None
    max_seconds: float | None
    graph: CubicGraph | None = field(default=None, repr=False)


def run_checks(g: CubicGraph, checks: Sequence[str], budget: Budget) -> dict:
    results = {}
    for name in checks:
        start = time.perf_counter()
        try:
            outcome, value, wit = RUNNERS[name](g, budget)
        except GraphError:
            outcome, value, wit = Outcome.PRECONDITION_FAILED, None, None
        entry = {
            "outcome": outcome.value,
            "value": value,
            "witness": wit,
            "millis": round((time.perf_counter() - start) * 1000, 3),
        }
        if not revalidate(g, name, entry):
            raise InvariantViolation(f"{name}: produced witness does not re-validate")
        results[name] = entry
    return results


def run_job(job: Job) -> dict:
    record: dict = {"index": job.index, "graph6": job.graph6}
    try:
        g = job.graph if job.graph is not None else parse_graph6(job.graph6)
    except (Graph6ParseError, GraphError) as exc:
        record["error"] = str(exc)
        return record
    record["checks"] = run_checks(g, job.checks, Budget(job.max_nodes, job.max_seconds))
    odd = record["checks"].get("oddness", {}).get("value")
    weak = record["checks"].get("weak-oddness", {}).get("value")
    if odd is not None and weak is not None:
        record["omega_equal"] = odd == weak
    return record


def iter_jobs(source: str, checks: list[str], budget: Budget) -> Iterator[Job]:
    if source.startswith(BUILTIN_PREFIX):
        g = builtin_graph(source[len(BUILTIN_PREFIX) :])
        yield Job(0, write_graph6(g).decode(), checks, budget.max_nodes, budget.max_seconds, g)
        return
    with open(source, "rb") as fh:
        for i, (_, line) in enumerate(read_graph6_lines(fh)):
            yield Job(i, line.decode("ascii", "replace"), checks, budget.max_nodes, budget.max_seconds)


def run_batch(
    source: str,
    checks: Sequence[str],
    budget: Budget | None = None,
    workers: int = 1,
) -> Iterator[dict]:
    """Reports in input order regardless of ``workers``."""
    budget = budget or Budget()
    jobs = iter_jobs(source, normalize_checks(checks), budget)
    if workers <= 1:
        yield from map(run_job, jobs)
        return
    with Pool(workers) as pool:
        yield from pool.imap(run_job, jobs, chunksize=1)


def exit_code(reports: Iterable[dict]) -> int:
    refuted = budget = io_error = False
    for r in reports:
        if "error" in r:
            io_error = True
            continue
        for entry in r["checks"].values():
            refuted |= entry["outcome"] == Outcome.REFUTED.value
            budget |= entry["outcome"] == Outcome.BUDGET_EXCEEDED.value
    if refuted:
        return EXIT_REFUTED
    if io_error:
        return EXIT_IO
    if budget:
        return EXIT_BUDGET
    return EXIT_OK


def dump(record: dict) -> str:
    return json.dumps(record, separators=(",", ":"))


def load_reports(path) -> list[dict]:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def revalidate_report(record: dict) -> dict[str, bool]:
    g = parse_graph6(record["graph6"])
    return {name: revalidate(g, name, entry) for name, entry in record.get("checks", {}).items()}
