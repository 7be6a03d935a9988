"""Per-graph property suite used by the ``invariants`` subcommand and the tests."""
from __future__ import annotations

import random
from itertools import combinations_with_replacement

from .coloring import is_class_one
from .cores import InvariantViolation, degrees_in, triple_from_masks
from .factors import (
    complement_odd_components,
    is_join_mask,
    join_masks,
    perfect_matching_masks,
)
from .graph import CubicGraph, find_bridges, is_bridgeless, parse_graph6, write_graph6
from .parity import check_odd_component_bound, oddness, weak_oddness

BRUTE_FORCE_MAX_M = 15  # 2^15 edge subsets, graphs on up to 10 vertices
BRIDGE_ORACLE_MAX_N = 14


def bridges_by_deletion(g: CubicGraph) -> list[int]:
    """O(m^2) oracle: an edge is a bridge iff deleting it disconnects g."""
    out = []
    for e in range(g.m):
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for f in g.incidence[v]:
                if f != e:
                    w = g.other(f, v)
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        if len(seen) < g.n:
            out.append(e)
    return out


def brute_force_joins(g: CubicGraph) -> set[int]:
    return {bits for bits in range(1 << g.m) if is_join_mask(g, bits)}


def triple_ok(g: CubicGraph, a: int, b: int, c: int) -> bool:
    """Counting identity, type counts, E0 u E2 degrees and the odd-component bound."""
    try:
        t = triple_from_masks(g, a, b, c)
    except InvariantViolation:
        return False
    e0, _, e2, _ = t.partition
    if any(d not in (0, 2) for d in degrees_in(g, e0.bits | e2.bits)):
        return False
    return check_odd_component_bound(t).holds


def sample_triples(g: CubicGraph, count: int, seed: int = 0):
    joins = join_masks(g)
    rng = random.Random(seed)
    for _ in range(count):
        yield rng.choice(joins), rng.choice(joins), rng.choice(joins)


def run_invariants(g: CubicGraph, sample: int = 2000, seed: int = 0) -> dict[str, bool]:
    out: dict[str, bool] = {}
    out["degree-sum"] = 2 * g.m == 3 * g.n
    out["graph6-roundtrip"] = write_graph6(parse_graph6(write_graph6(g))) == write_graph6(g)
    if g.n <= BRIDGE_ORACLE_MAX_N:
        out["bridges-oracle"] = find_bridges(g) == bridges_by_deletion(g)
    joins = join_masks(g)
    out["join-count"] = len(joins) == 1 << (g.m - g.n + 1) and len(set(joins)) == len(joins)
    if g.m <= BRUTE_FORCE_MAX_M:
        out["join-brute-force"] = set(joins) == brute_force_joins(g)
    if not is_bridgeless(g):
        return out
    pms = perfect_matching_masks(g)
    # the checked quantities do not depend on the order inside a triple
    triples = list(combinations_with_replacement(pms, 3))
    if len(triples) > 5 * sample:
        triples = random.Random(seed).sample(triples, 5 * sample)
    out["matching-triples"] = all(triple_ok(g, *t) for t in triples)
    out["join-triples-sampled"] = all(triple_ok(g, *t) for t in sample_triples(g, sample, seed))
    w, _ = oddness(g)
    wp, _ = weak_oddness(g)
    colorable = is_class_one(g)
    out["weak-oddness-le-oddness"] = wp <= w
    out["oddness-even"] = w % 2 == 0 and wp % 2 == 0
    out["zero-oddness-iff-colorable"] = (w == 0) == colorable == (wp == 0)
    out["oddness-two-iff-weak-two"] = (w == 2) == (wp == 2)
    out["weak-oddness-matches-complements"] = wp == min(complement_odd_components(g, j) for j in joins)
    return out
