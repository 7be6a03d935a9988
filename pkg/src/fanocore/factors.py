"""Perfect matchings and joins of cubic graphs.

In a cubic graph a join is an edge set in which every vertex has degree 1
or 3; its complement is an even subgraph (all degrees 0 or 2).  Joins are
enumerated as complements of cycle-space elements, matchings by plain
backtracking.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

from .graph import CubicGraph, EdgeSubset, degree_in, iter_bits, subgraph_components


class JoinError(ValueError):
    pass


@dataclass(frozen=True)
class Join:
    graph: CubicGraph = field(repr=False)
    edges: EdgeSubset = field(repr=False)
    j_vertices: frozenset[int]

    @property
    def bits(self) -> int:
        return self.edges.bits

    @property
    def n_j(self) -> int:
        return len(self.j_vertices)

    @property
    def is_perfect_matching(self) -> bool:
        return not self.j_vertices

    def complement(self) -> EdgeSubset:
        return self.edges.complement()

    def __repr__(self) -> str:
        return f"{type(self).__name__}(edges={self.edges.indices()}, n_j={self.n_j})"


class PerfectMatching(Join):
    pass


def make_join(g: CubicGraph, edges: EdgeSubset | int | Iterable[int]) -> Join:
    """Validate an edge set as a join; perfect matchings come back as PerfectMatching."""
    if isinstance(edges, EdgeSubset):
        bits = edges.bits
    elif isinstance(edges, int):
        bits = edges
    else:
        bits = EdgeSubset.from_edges(g, edges).bits
    if bits & ~g.full_mask:
        raise JoinError("edge set has bits beyond the graph's edge count")
    jv = []
    for v in range(g.n):
        d = degree_in(g, bits, v)
        if d == 3:
            jv.append(v)
        elif d != 1:
            raise JoinError(f"not a join: vertex {v} has degree {d}")
    cls = Join if jv else PerfectMatching
    return cls(g, EdgeSubset(g, bits), frozenset(jv))


def is_join_mask(g: CubicGraph, bits: int) -> bool:
    return all(degree_in(g, bits, v) in (1, 3) for v in range(g.n))


def is_perfect_matching_mask(g: CubicGraph, bits: int) -> bool:
    return all(degree_in(g, bits, v) == 1 for v in range(g.n))


# perfect matchings --------------------------------------------------------


def _matching_masks(g: CubicGraph) -> Iterator[int]:
    covered = [False] * g.n
    inc = g.incidence
    edges = g.edges

    def rec(start: int, bits: int) -> Iterator[int]:
        v = start
        while v < g.n and covered[v]:
            v += 1
        if v == g.n:
            yield bits
            return
        covered[v] = True
        for e in inc[v]:
            a, b = edges[e]
            w = b if a == v else a
            if not covered[w]:
                covered[w] = True
                yield from rec(v + 1, bits | 1 << e)
                covered[w] = False
        covered[v] = False

    yield from rec(0, 0)


@lru_cache(maxsize=64)
def perfect_matching_masks(g: CubicGraph) -> tuple[int, ...]:
    return tuple(_matching_masks(g))


def enumerate_perfect_matchings(g: CubicGraph) -> Iterator[PerfectMatching]:
    """All perfect matchings, lowest uncovered vertex first, edges in index order."""
    for bits in _matching_masks(g):
        yield PerfectMatching(g, EdgeSubset(g, bits), frozenset())


# joins --------------------------------------------------------------------


def fundamental_cycles(g: CubicGraph) -> list[int]:
    """Cycle-space basis from a BFS spanning tree rooted at 0, one per non-tree edge."""
    parent_edge = [-1] * g.n
    depth = [-1] * g.n
    depth[0] = 0
    queue = deque([0])
    tree = 0
    while queue:
        v = queue.popleft()
        for e in g.incidence[v]:
            w = g.other(e, v)
            if depth[w] < 0:
                depth[w] = depth[v] + 1
                parent_edge[w] = e
                tree |= 1 << e
                queue.append(w)
    basis = []
    for e in range(g.m):
        if tree >> e & 1:
            continue
        u, v = g.edges[e]
        cyc = 1 << e
        while u != v:
            if depth[u] < depth[v]:
                u, v = v, u
            pe = parent_edge[u]
            cyc ^= 1 << pe
            u = g.other(pe, u)
        basis.append(cyc)
    return basis


@lru_cache(maxsize=16)
def join_masks(g: CubicGraph) -> tuple[int, ...]:
    """Bitmasks of all 2^(m-n+1) joins, ordered by basis-coefficient integer."""
    basis = fundamental_cycles(g)
    even = [0] * (1 << len(basis))
    for x in range(1, len(even)):
        low = x & -x
        even[x] = even[x ^ low] ^ basis[low.bit_length() - 1]
    full = g.full_mask
    return tuple(full ^ c for c in even)


def enumerate_joins(g: CubicGraph) -> Iterator[Join]:
    for bits in join_masks(g):
        yield make_join(g, bits)


def j_vertex_mask(g: CubicGraph, bits: int) -> int:
    """Vertex bitmask of the degree-3 vertices of a join."""
    out = 0
    for v in range(g.n):
        if degree_in(g, bits, v) == 3:
            out |= 1 << v
    return out


# structure ----------------------------------------------------------------


def has_cycle(g: CubicGraph, bits: int, vertices: Iterable[int] | None = None) -> bool:
    """Does the subgraph with edge set ``bits`` (restricted to ``vertices``) contain a circuit?"""
    verts = list(range(g.n)) if vertices is None else list(vertices)
    inside = set(verts)
    count = 0
    for e in iter_bits(bits):
        u, v = g.edges[e]
        if u in inside and v in inside:
            count += 1
    comps = subgraph_components(g, bits, verts)
    return count > len(verts) - len(comps)


def is_simple_join(j: Join) -> bool:
    """True iff the subgraph induced by the J-vertices is a forest."""
    g = j.graph
    jv = j.j_vertices
    induced = 0
    for e, (u, v) in enumerate(g.edges):
        if u in jv and v in jv:
            induced |= 1 << e
    return not has_cycle(g, induced, sorted(jv))


def odd_components(g: CubicGraph, edges: EdgeSubset | int, vertices: Iterable[int] | None = None) -> int:
    """Number of odd-order components of (vertices, edges); isolated vertices count."""
    bits = edges.bits if isinstance(edges, EdgeSubset) else edges
    verts = list(range(g.n)) if vertices is None else list(vertices)
    return sum(len(c) & 1 for c in subgraph_components(g, bits, verts))


def complement_odd_components(g: CubicGraph, join_bits: int) -> int:
    """|complement of the join|_odd over all of V(g)."""
    return odd_components(g, g.full_mask & ~join_bits)
