#!/usr/bin/env python3
"""Regenerate the graph6 fixtures under tests/data.

Needs networkx (isomorphism dedupe, girth, named generators).  Output is
deterministic: fixed seeds, graphs sorted by (n, graph6).

    python scripts/make_fixtures.py
"""
from __future__ import annotations

import itertools
import random
from pathlib import Path

import networkx as nx

from fanocore.coloring import is_class_one
from fanocore.gadgets import two_cut_connection
from fanocore.graph import CubicGraph, build_named, is_bridgeless, write_graph6

OUT = Path(__file__).resolve().parent.parent / "tests" / "data"

# connected cubic graphs on 4, 6, 8, 10 vertices
CONNECTED_CUBIC_COUNTS = {4: 1, 6: 2, 8: 5, 10: 19}


def to_cubic(h: nx.Graph) -> CubicGraph:
    h = nx.convert_node_labels_to_integers(h, ordering="sorted")
    return CubicGraph(h.number_of_nodes(), h.edges())


def to_nx(g: CubicGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def _short_cycles_through(h: nx.Graph, v, max_len: int = 7) -> tuple[int, ...]:
    counts = [0] * (max_len + 1)
    stack = [(v, [v])]
    while stack:
        x, path = stack.pop()
        for w in h[x]:
            if w == v and len(path) >= 3:
                counts[len(path)] += 1
            elif w not in path and len(path) < max_len:
                stack.append((w, path + [w]))
    return tuple(c // 2 for c in counts[3:])


def vertex_labels(h: nx.Graph) -> dict:
    """WL on a cubic graph sees no difference between vertices, so seed it with
    short-cycle counts and distance profiles."""
    out = {}
    for v in h:
        dist = nx.single_source_shortest_path_length(h, v)
        profile = [0] * (max(dist.values()) + 1)
        for d in dist.values():
            profile[d] += 1
        out[v] = str((_short_cycles_through(h, v), tuple(profile)))
    return out


class IsoSet:
    def __init__(self):
        self.buckets: dict[str, list[nx.Graph]] = {}
        self.items: list[CubicGraph] = []

    def add(self, g: CubicGraph) -> bool:
        h = to_nx(g)
        nx.set_node_attributes(h, vertex_labels(h), "label")
        key = nx.weisfeiler_lehman_graph_hash(h, node_attr="label", iterations=3)
        bucket = self.buckets.setdefault(key, [])
        match = lambda x, y: x["label"] == y["label"]
        if any(nx.is_isomorphic(h, o, node_match=match) for o in bucket):
            return False
        bucket.append(h)
        self.items.append(g)
        return True


def all_small_cubic() -> list[CubicGraph]:
    rng = random.Random(20240601)
    found = IsoSet()
    for n, want in CONNECTED_CUBIC_COUNTS.items():
        have = 0
        tries = 0
        while have < want:
            tries += 1
            if tries > 200000:
                raise RuntimeError(f"could not sample all cubic graphs on {n} vertices")
            h = nx.random_regular_graph(3, n, seed=rng.randrange(1 << 30))
            if not nx.is_connected(h):
                continue
            if found.add(to_cubic(h)):
                have += 1
    return found.items


def cyclically_4_edge_connected(g: CubicGraph) -> bool:
    """No edge cut of size <= 3 separates two cycle-containing sides."""
    for k in (1, 2, 3):
        for cut in itertools.combinations(range(g.m), k):
            parent = list(range(g.n))

            def find(v):
                while parent[v] != v:
                    parent[v] = parent[parent[v]]
                    v = parent[v]
                return v

            dropped = set(cut)
            for i, (u, v) in enumerate(g.edges):
                if i not in dropped:
                    parent[find(u)] = find(v)
            sizes: dict[int, int] = {}
            edge_counts: dict[int, int] = {}
            for v in range(g.n):
                r = find(v)
                sizes[r] = sizes.get(r, 0) + 1
            if len(sizes) < 2:
                continue
            for i, (u, v) in enumerate(g.edges):
                if i not in dropped:
                    r = find(u)
                    edge_counts[r] = edge_counts.get(r, 0) + 1
            cyclic = sum(1 for r in sizes if edge_counts.get(r, 0) >= sizes[r])
            if cyclic >= 2:
                return False
    return True


def is_snark(g: CubicGraph) -> bool:
    return nx.girth(to_nx(g)) >= 5 and not is_class_one(g) and cyclically_4_edge_connected(g)


def dot_product(g1: CubicGraph, ab: int, cd: int, g2: CubicGraph, xy: int, twist: int) -> CubicGraph | None:
    a, b = g1.edges[ab]
    c, d = g1.edges[cd]
    if len({a, b, c, d}) < 4:
        return None
    x, y = g2.edges[xy]
    x1, x2 = (w for w in g2.neighbors[x] if w != y)
    y1, y2 = (w for w in g2.neighbors[y] if w != x)
    if twist & 1:
        x1, x2 = x2, x1
    if twist & 2:
        y1, y2 = y2, y1
    keep = [v for v in range(g2.n) if v not in (x, y)]
    relabel = {v: g1.n + i for i, v in enumerate(keep)}
    edges = [e for i, e in enumerate(g1.edges) if i not in (ab, cd)]
    edges += [(relabel[u], relabel[v]) for u, v in g2.edges if u in relabel and v in relabel]
    edges += [(a, relabel[x1]), (b, relabel[x2]), (c, relabel[y1]), (d, relabel[y2])]
    try:
        return CubicGraph(g1.n + g2.n - 2, edges)
    except ValueError:
        return None


def flower_snark(k: int) -> CubicGraph:
    # vertices a_i, b_i, c_i, d_i; b-cycle, and c/d form one 2k-cycle
    A = lambda i: 4 * (i % k)
    B = lambda i: 4 * (i % k) + 1
    C = lambda i: 4 * (i % k) + 2
    D = lambda i: 4 * (i % k) + 3
    edges = []
    for i in range(k):
        edges += [(A(i), B(i)), (A(i), C(i)), (A(i), D(i)), (B(i), B(i + 1))]
        if i < k - 1:
            edges += [(C(i), C(i + 1)), (D(i), D(i + 1))]
    edges += [(C(k - 1), D(0)), (D(k - 1), C(0))]
    return CubicGraph(4 * k, edges)


def snarks(max_n: int = 26, limit_26: int = 90) -> list[CubicGraph]:
    found = IsoSet()
    seen = IsoSet()  # every candidate tried, snark or not
    p = build_named("petersen")
    found.add(p)
    found.add(flower_snark(5))
    order18 = []
    for ab, cd in itertools.combinations(range(p.m), 2):
        for twist in range(4):
            g = dot_product(p, ab, cd, p, 0, twist)
            if g is not None and seen.add(g) and is_snark(g):
                found.add(g)
                order18.append(g)
    rng = random.Random(7)
    count26 = 0
    combos = []
    for g18 in order18:
        for ab, cd in itertools.combinations(range(g18.m), 2):
            for twist in range(4):
                combos.append((g18, ab, cd, p, 0, twist))
                combos.append((p, ab % p.m, cd % p.m, g18, ab, twist))
    rng.shuffle(combos)
    for g1, ab, cd, g2, xy, twist in combos:
        if count26 >= limit_26:
            break
        g = dot_product(g1, ab, cd, g2, xy, twist)
        if g is None or g.n > max_n:
            continue
        if seen.add(g) and is_snark(g):
            found.add(g)
            count26 += 1
    return found.items


def class_one_and_misc() -> list[CubicGraph]:
    gens = [
        nx.complete_graph(4),
        nx.complete_bipartite_graph(3, 3),
        nx.circular_ladder_graph(3),
        nx.cubical_graph(),
        nx.circular_ladder_graph(5),
        nx.circular_ladder_graph(6),
        nx.circular_ladder_graph(7),
        nx.LCF_graph(8, [4], 8),  # Moebius ladder / Wagner
        nx.LCF_graph(10, [5], 10),
        nx.LCF_graph(12, [5, -5], 6),  # Franklin
        nx.frucht_graph(),
        nx.truncated_tetrahedron_graph(),
        nx.heawood_graph(),
        nx.moebius_kantor_graph(),
        nx.pappus_graph(),
        nx.desargues_graph(),
        nx.dodecahedral_graph(),
    ]
    out = [to_cubic(h) for h in gens]
    k4 = build_named("k4")
    p = build_named("petersen")
    out.append(two_cut_connection(p, 0, k4, 0))  # class 2 with a 2-edge-cut
    out.append(two_cut_connection(p, 0, p, 0))
    out.append(two_cut_connection(k4, 0, k4, 0))
    return out


def write(name: str, graphs: list[CubicGraph]) -> None:
    lines = sorted({write_graph6(g) for g in graphs}, key=lambda s: (len(s), s))
    (OUT / name).write_bytes(b">>graph6<<" + b"\n".join(lines) + b"\n")
    print(f"{name}: {len(lines)} graphs")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    write("cubic_upto10.g6", all_small_cubic())
    misc = class_one_and_misc()
    assert all(is_bridgeless(g) for g in misc)
    write("bridgeless_misc.g6", misc)
    write("snarks.g6", snarks())


if __name__ == "__main__":
    main()
