"""Acceptance suite: nine end-to-end criteria at their exact tolerances.

Each test records a one-line verdict in RESULTS; the summary hook in
conftest.py prints them after the run.  ``python tests/test_acceptance.py``
runs the same checks without pytest.
"""
from __future__ import annotations

import json
import os
import time
from itertools import combinations, combinations_with_replacement, permutations, product

import pytest

from conftest import bridgeless_fixtures, snarks, small_cubic
from fanocore.budget import Budget, Outcome
from fanocore.cli import main
from fanocore.coloring import is_class_one
from fanocore.cores import InvariantViolation, degrees_in, make_cover_triple, minimize_core
from fanocore.factors import (
    complement_odd_components,
    enumerate_joins,
    enumerate_perfect_matchings,
    is_join_mask,
    join_masks,
    perfect_matching_masks,
)
from fanocore.fano import min_line_fano_flow
from fanocore.gadgets import verify_counterexample
from fanocore.graph import build_named, degree_in, is_bridgeless
from fanocore.harness import run_batch
from fanocore.parity import check_odd_component_bound, oddness, weak_oddness

RESULTS: dict[int, tuple[bool, str]] = {}

CENSUS_PREDICATES = [
    "fan-raspaud",
    "bipartite-core",
    "triangle-free-core",
    "acyclic-e0-3pm",
    "2pm+join",
    "1pm+2joins",
    "acyclic-2pm",
]


def record(number: int, ok: bool, detail: str) -> None:
    RESULTS[number] = (ok, detail)
    assert ok, detail


def summary_lines() -> list[str]:
    lines = []
    for number in range(1, 10):
        if number in RESULTS:
            ok, detail = RESULTS[number]
            lines.append(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
        else:
            lines.append(f"criterion {number}: NOT RUN")
    return lines


# 1 -----------------------------------------------------------------------------


def test_criterion_1_counterexample(capsys):
    start = time.perf_counter()
    structured = verify_counterexample("structured", Budget.unlimited())
    t_structured = time.perf_counter() - start

    start = time.perf_counter()
    code = main(["counterexample", "--mode", "full", "--json"])
    t_full = time.perf_counter() - start
    out = capsys.readouterr().out
    full = json.loads(out.strip().splitlines()[-1])

    ok = (
        code == 0
        and "verdict: refuted" in out
        and "70 vertices, 105 edges" in out
        and full["outcome"] == "refuted"
        and full["pm_count"] == 6144
        and full["pairs_checked"] == 6144 * 6143 // 2
        and full["cyclic_pairs"] == full["pairs_checked"]
        and full["all_pairs_cyclic"] is True
        and structured.outcome == Outcome.REFUTED
        and structured.all_pairs_cyclic
        and {**structured.as_dict(), "mode": ""} == {**full, "mode": ""}
        and t_structured < 10
        and t_full < 30 * 60
    )
    record(
        1,
        ok,
        f"pm_count={full['pm_count']}, {full['cyclic_pairs']}/{full['pairs_checked']} pairs cyclic, "
        f"verdict {full['outcome']}; structured {t_structured:.1f}s, full {t_full:.1f}s",
    )


# 2 -----------------------------------------------------------------------------


def test_criterion_2_petersen_pairs():
    start = time.perf_counter()
    p = build_named("petersen")
    pms = [m.bits for m in enumerate_perfect_matchings(p)]
    shared = [(a & b).bit_count() for a, b in combinations(pms, 2)]
    elapsed = time.perf_counter() - start
    ok = len(pms) == 6 and len(shared) == 15 and all(s == 1 for s in shared) and elapsed < 1
    record(2, ok, f"{len(pms)} matchings, {sum(s == 1 for s in shared)}/{len(shared)} pairs share one edge, {elapsed:.3f}s")


# 3, 4, 5 ----------------------------------------------------------------------------


def _triple_laws(t) -> tuple[bool, bool, bool]:
    """(counting identity and type counts, E0 u E2 degrees in {0,2}, odd-component bound)."""
    g = t.graph
    e0, e1, e2, e3 = (len(p) for p in t.partition)
    a, b, c, d, e, f, gg = t.type_counts
    s = t.sum_nj
    identity = (
        e0 + e1 + e2 + e3 == g.m
        and e0 + s == e2 + 2 * e3
        and s == 3 * a + 2 * b + c + d
        and 2 * e0 == f + 2 * gg
        and 2 * e2 == 2 * b + 2 * d + f
        and 2 * e3 == 3 * a + b + c + gg
        and a + b + c + d + e + f + gg == g.n
    )
    core = t.partition[0].bits | t.partition[2].bits
    structure = all(x in (0, 2) for x in degrees_in(g, core))
    bound = check_odd_component_bound(t).holds
    return identity, structure, bound


@pytest.fixture(scope="module")
def triple_sweep():
    start = time.perf_counter()
    counts = {"triples": 0, "identity": 0, "structure": 0, "bound": 0, "invariant_errors": 0}
    k4 = build_named("k4")
    p = build_named("petersen")
    k4_joins = list(enumerate_joins(k4))
    p_joins = list(enumerate_joins(p))
    p_pms = list(enumerate_perfect_matchings(p))
    groups = [
        ("K4 joins", product(k4_joins, repeat=3), len(k4_joins) ** 3),
        ("Petersen joins", product(p_joins, repeat=3), len(p_joins) ** 3),
        ("Petersen matchings", product(p_pms, repeat=3), len(p_pms) ** 3),
    ]
    for _, triples, _ in groups:
        for j1, j2, j3 in triples:
            counts["triples"] += 1
            try:
                t = make_cover_triple(j1, j2, j3)
            except InvariantViolation:
                counts["invariant_errors"] += 1
                continue
            ident, struct, bound = _triple_laws(t)
            counts["identity"] += ident
            counts["structure"] += struct
            counts["bound"] += bound
    counts["expected"] = sum(n for _, _, n in groups)
    counts["sizes"] = (len(k4_joins), len(p_joins), len(p_pms))
    tight = [check_odd_component_bound(make_cover_triple(*t)) for t in permutations(p_pms, 3)]
    counts["tight"] = all(b.lhs == 6 and b.rhs == 6 for b in tight)
    counts["seconds"] = time.perf_counter() - start
    return counts


def test_criterion_3_counting_identity(triple_sweep):
    c = triple_sweep
    ok = (
        c["sizes"] == (8, 64, 6)
        and c["triples"] == c["expected"] == 8**3 + 64**3 + 6**3
        and c["invariant_errors"] == 0
        and c["identity"] == c["triples"]
        and c["seconds"] < 60
    )
    record(3, ok, f"identity and type counts hold on {c['identity']}/{c['triples']} triples (all, unsampled), {c['seconds']:.1f}s")


def test_criterion_4_core_structure(triple_sweep):
    c = triple_sweep
    ok = c["structure"] == c["triples"] == c["expected"]
    record(4, ok, f"E0 u E2 has degrees in {{0,2}} on {c['structure']}/{c['triples']} triples")


def test_criterion_5_odd_component_bound(triple_sweep):
    c = triple_sweep
    ok = c["bound"] == c["triples"] == c["expected"] and c["tight"]
    record(5, ok, f"bound holds on {c['bound']}/{c['triples']} triples; distinct Petersen matchings tight at 6 = 6: {c['tight']}")


# 6 -----------------------------------------------------------------------------


def _naive_mu3_prime(g) -> int:
    nj = {j: sum(degree_in(g, j, v) == 3 for v in range(g.n)) for j in join_masks(g)}
    best = None
    for a, b, c in combinations_with_replacement(nj, 3):
        l2 = 2 * (g.full_mask & ~(a | b | c)).bit_count() + 3 * (nj[a] + nj[b] + nj[c])
        best = l2 if best is None else min(best, l2)
    return best


def test_criterion_6_canonical_metrics():
    start = time.perf_counter()
    k4 = build_named("k4")
    p = build_named("petersen")
    got = {
        "mu3(K4)": minimize_core(k4, 0).l2,
        "mu3'(K4)": minimize_core(k4, 3).l2,
        "w(K4)": oddness(k4)[0],
        "w'(K4)": weak_oddness(k4)[0],
        "fano(K4)": min_line_fano_flow(k4).k,
        "mu3(P) as l2": minimize_core(p, 0).l2,
        "w(P)": oddness(p)[0],
        "w'(P)": weak_oddness(p)[0],
        "fano(P)": min_line_fano_flow(p).k,
        "cyclic k(P)": minimize_core(p, 3, "cyclic-feasibility").k,
    }
    want = {
        "mu3(K4)": 0, "mu3'(K4)": 0, "w(K4)": 0, "w'(K4)": 0, "fano(K4)": 1,
        "mu3(P) as l2": 6, "w(P)": 2, "w'(P)": 2, "fano(P)": 4, "cyclic k(P)": 0,
    }
    search = minimize_core(p, 3, budget=Budget.unlimited())
    naive = _naive_mu3_prime(p)
    elapsed = time.perf_counter() - start
    ok = (
        got == want
        and search.outcome == Outcome.WITNESS
        and search.l2 == naive
        and search.l2 <= got["mu3(P) as l2"]
        and elapsed < 300
    )
    bad = {k: v for k, v in got.items() if want[k] != v}
    record(
        6,
        ok,
        f"all canonical values match{'' if not bad else ' except ' + str(bad)}; "
        f"mu3'(P) as l2 = {search.l2} (search) = {naive} (naive loop) <= 6; {elapsed:.1f}s",
    )


# 7 -----------------------------------------------------------------------------


def test_criterion_7_fano_range():
    start = time.perf_counter()
    graphs = bridgeless_fixtures() + snarks()
    bad = []
    classes = {1: 0, 2: 0}
    for i, g in enumerate(graphs):
        r = min_line_fano_flow(g)
        colorable = is_class_one(g)
        classes[1 if colorable else 2] += 1
        if r.outcome != Outcome.WITNESS:
            bad.append((i, r.outcome.value))
        elif r.k not in (1, 4, 5, 6) or (r.k == 1) != colorable or r.k > 6:
            bad.append((i, r.k))
    elapsed = time.perf_counter() - start
    ok = len(graphs) >= 20 and classes[2] > 0 and not bad and elapsed < 600
    record(
        7,
        ok,
        f"{len(graphs)} graphs ({classes[1]} class 1, {classes[2]} class 2), "
        f"min lines in {{1,4,5,6}} with 1 iff colorable; violations {bad}; {elapsed:.1f}s",
    )


# 8 -----------------------------------------------------------------------------


def test_criterion_8_snark_census():
    start = time.perf_counter()
    from conftest import DATA

    checks = CENSUS_PREDICATES + ["oddness", "weak-oddness", "mu3-prime"]
    workers = max(1, min(8, os.cpu_count() or 1))
    reports = list(run_batch(str(DATA / "snarks.g6"), checks, Budget(None, None), workers))
    failures = []
    for r in reports:
        if "error" in r:
            failures.append((r["index"], r["error"]))
            continue
        c = r["checks"]
        for name in CENSUS_PREDICATES:
            if c[name]["outcome"] != "witness":
                failures.append((r["index"], name, c[name]["outcome"]))
        w, wp, mu = c["oddness"]["value"], c["weak-oddness"]["value"], c["mu3-prime"]["value"]
        if not (wp <= w and 3 * wp <= mu):
            failures.append((r["index"], "parity", w, wp, mu))
    max_n = max(g.n for g in snarks())
    elapsed = time.perf_counter() - start
    ok = len(reports) >= 90 and max_n <= 26 and not failures and elapsed < 3600
    record(
        8,
        ok,
        f"{len(reports)} snarks of order <= {max_n}: all 7 predicates witnessed, w' <= w and 3w' <= mu3'; "
        f"failures {failures[:5]}; {elapsed:.1f}s",
    )


# 9 -----------------------------------------------------------------------------


def test_criterion_9_oracle_equivalence():
    start = time.perf_counter()
    graphs = [g for g in small_cubic() if g.n <= 10]
    mismatches = []
    for i, g in enumerate(graphs):
        brute = {b for b in range(1 << g.m) if is_join_mask(g, b)}
        if set(join_masks(g)) != brute or len(join_masks(g)) != len(brute):
            mismatches.append((i, "joins"))
        if not is_bridgeless(g):
            continue
        pms = {b for b in brute if b.bit_count() == g.n // 2}
        if pms != set(perfect_matching_masks(g)):
            mismatches.append((i, "matchings"))
        if oddness(g)[0] != min(complement_odd_components(g, b) for b in pms):
            mismatches.append((i, "oddness"))
        if weak_oddness(g)[0] != min(complement_odd_components(g, b) for b in brute):
            mismatches.append((i, "weak oddness"))
    elapsed = time.perf_counter() - start
    ok = len(graphs) == 27 and not mismatches and elapsed < 60
    record(9, ok, f"{len(graphs)} graphs on <= 10 vertices agree with brute force; mismatches {mismatches}; {elapsed:.1f}s")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
