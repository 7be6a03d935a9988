"""Cubic graph model, graph6 I/O and a few named graphs.

Edges are indexed lexicographically by their sorted endpoint pair.  Every
enumeration order elsewhere in the package is defined against that index,
so two graphs with the same edge set always behave identically.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

GRAPH6_HEADER = b">>graph6<<"


class GraphError(ValueError):
    """Input is not a connected simple cubic graph."""


class Graph6ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class CubicGraph:
    """Immutable connected simple 3-regular graph on vertices 0..n-1."""

    __slots__ = ("n", "m", "edges", "incidence", "neighbors", "_index", "full_mask")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 4 or n % 2:
            raise GraphError(f"a cubic graph needs an even vertex count >= 4, got {n}")
        canon = []
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            canon.append((u, v) if u < v else (v, u))
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise GraphError(f"parallel edges between {a[0]} and {a[1]} (vertex {a[0]})")
        inc: list[list[int]] = [[] for _ in range(n)]
        for i, (u, v) in enumerate(canon):
            inc[u].append(i)
            inc[v].append(i)
        for v in range(n):
            if len(inc[v]) != 3:
                raise GraphError(f"not cubic: vertex {v} has degree {len(inc[v])}")

        self.n = n
        self.m = len(canon)
        self.edges: tuple[tuple[int, int], ...] = tuple(canon)
        self.incidence: tuple[tuple[int, int, int], ...] = tuple(tuple(x) for x in inc)  # type: ignore[misc]
        self.neighbors: tuple[tuple[int, int, int], ...] = tuple(
            tuple(self.other(e, v) for e in inc[v]) for v in range(n)  # type: ignore[misc]
        )
        self._index = {e: i for i, e in enumerate(canon)}
        self.full_mask = (1 << self.m) - 1
        if not self._connected():
            raise GraphError("graph is disconnected")

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def edge_index(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"no edge between {u} and {v}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def _connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.neighbors[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CubicGraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"CubicGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class EdgeSubset:
    """A set of edges of one graph, stored as an integer bitmask."""

    graph: CubicGraph
    bits: int = 0

    @classmethod
    def from_edges(cls, graph: CubicGraph, indices: Iterable[int]) -> EdgeSubset:
        bits = 0
        for i in indices:
            if not 0 <= i < graph.m:
                raise IndexError(f"edge index {i} out of range 0..{graph.m - 1}")
            bits |= 1 << i
        return cls(graph, bits)

    def _check(self, other: EdgeSubset) -> None:
        if other.graph is not self.graph and other.graph != self.graph:
            raise ValueError("edge subsets belong to different graphs")

    def __and__(self, other: EdgeSubset) -> EdgeSubset:
        self._check(other)
        return EdgeSubset(self.graph, self.bits & other.bits)

    def __or__(self, other: EdgeSubset) -> EdgeSubset:
        self._check(other)
        return EdgeSubset(self.graph, self.bits | other.bits)

    def __xor__(self, other: EdgeSubset) -> EdgeSubset:
        self._check(other)
        return EdgeSubset(self.graph, self.bits ^ other.bits)

    def __sub__(self, other: EdgeSubset) -> EdgeSubset:
        self._check(other)
        return EdgeSubset(self.graph, self.bits & ~other.bits)

    def complement(self) -> EdgeSubset:
        return EdgeSubset(self.graph, self.graph.full_mask & ~self.bits)

    def __contains__(self, e: int) -> bool:
        return bool(self.bits >> e & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def indices(self) -> list[int]:
        return list(iter_bits(self.bits))


def iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def degree_in(g: CubicGraph, bits: int, v: int) -> int:
    a, b, c = g.incidence[v]
    return (bits >> a & 1) + (bits >> b & 1) + (bits >> c & 1)


# graph6 -------------------------------------------------------------------


def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def write_graph6(g: CubicGraph) -> bytes:
    """Encode ``g`` as a graph6 line (no header, no newline)."""
    n = g.n
    nbits = n * (n - 1) // 2
    bitvec = bytearray(nbits + (-nbits) % 6)
    # upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
    for u, v in g.edges:
        bitvec[v * (v - 1) // 2 + u] = 1
    out = bytearray(_encode_n(n))
    for k in range(0, len(bitvec), 6):
        x = 0
        for b in bitvec[k : k + 6]:
            x = (x << 1) | b
        out.append(x + 63)
    return bytes(out)


def _decode_n(data: bytes, start: int) -> tuple[int, int]:
    def group(i: int) -> int:
        if i >= len(data):
            raise Graph6ParseError("truncated vertex count", i)
        c = data[i]
        if not 63 <= c <= 126:
            raise Graph6ParseError(f"invalid graph6 byte {c!r}", i)
        return c - 63

    if group(start) != 63:
        return group(start), start + 1
    if group(start + 1) != 63:
        n = 0
        for i in range(start + 1, start + 4):
            n = (n << 6) | group(i)
        return n, start + 4
    n = 0
    for i in range(start + 2, start + 8):
        n = (n << 6) | group(i)
    return n, start + 8


def decode_graph6(line: bytes | str) -> tuple[int, list[tuple[int, int]]]:
    """Decode a graph6 line into (n, edge list) without any cubic checks."""
    if isinstance(line, str):
        line = line.encode("ascii")
    lead = len(line) - len(line.lstrip())
    data = line.strip()
    if data.startswith(GRAPH6_HEADER):
        lead += len(GRAPH6_HEADER)
        data = data[len(GRAPH6_HEADER) :]
    if not data:
        raise Graph6ParseError("empty graph6 line", lead)
    n, pos = _decode_n(data, 0)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) - pos != need:
        raise Graph6ParseError(
            f"expected {need} adjacency bytes for n={n}, found {len(data) - pos}",
            lead + min(len(data), pos + need),
        )
    edges = []
    k = 0
    u, v = 0, 1
    for i in range(pos, len(data)):
        c = data[i]
        if not 63 <= c <= 126:
            raise Graph6ParseError(f"invalid graph6 byte {c!r}", lead + i)
        x = c - 63
        for shift in range(5, -1, -1):
            if k >= nbits:
                if x >> shift & 1:
                    raise Graph6ParseError("nonzero padding bit", lead + i)
                continue
            if x >> shift & 1:
                edges.append((u, v))
            k += 1
            u += 1
            if u == v:
                u, v = 0, v + 1
    return n, edges


def parse_graph6(line: bytes | str) -> CubicGraph:
    n, edges = decode_graph6(line)
    return CubicGraph(n, edges)


def read_graph6_lines(lines: Iterable[bytes | str]) -> Iterator[tuple[int, bytes]]:
    """Yield (line number, raw line) for every non-blank graph6 line."""
    for i, raw in enumerate(lines):
        if isinstance(raw, str):
            raw = raw.encode("ascii")
        s = raw.strip()
        if i == 0 and s.startswith(GRAPH6_HEADER):
            s = s[len(GRAPH6_HEADER) :].strip()
        if s:
            yield i, s


def load_graph6_file(path) -> list[CubicGraph]:
    with open(path, "rb") as fh:
        return [parse_graph6(s) for _, s in read_graph6_lines(fh)]


# bridges ------------------------------------------------------------------


def find_bridges(g: CubicGraph) -> list[int]:
    """Edge indices of all cut edges (iterative lowpoint DFS)."""
    disc = [-1] * g.n
    low = [0] * g.n
    bridges = []
    timer = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # frame: (vertex, edge used to enter, next incidence slot)
        stack = [(root, -1, 0)]
        while stack:
            v, via, slot = stack[-1]
            if slot < 3:
                stack[-1] = (v, via, slot + 1)
                e = g.incidence[v][slot]
                if e == via:
                    continue
                w = g.other(e, v)
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, e, 0))
                elif disc[w] < low[v]:
                    low[v] = disc[w]
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    if low[v] < low[p]:
                        low[p] = low[v]
                    if low[v] > disc[p]:
                        bridges.append(via)
    return sorted(bridges)


def is_bridgeless(g: CubicGraph) -> bool:
    return not find_bridges(g)


def require_bridgeless(g: CubicGraph) -> None:
    bridges = find_bridges(g)
    if bridges:
        u, v = g.edges[bridges[0]]
        raise GraphError(f"graph has a bridge {u}-{v}")


# named graphs -------------------------------------------------------------


def k4() -> CubicGraph:
    return CubicGraph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])


def k33() -> CubicGraph:
    return CubicGraph(6, [(u, v) for u in range(3) for v in range(3, 6)])


def petersen() -> CubicGraph:
    """Outer 5-circuit 0..4, inner pentagram 5..9, spokes i -- i+5."""
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((5 + i, 5 + (i + 2) % 5))
        edges.append((i, i + 5))
    return CubicGraph(10, edges)


NAMED = {"k4": k4, "k3_3": k33, "petersen": petersen}


def build_named(name: str) -> CubicGraph:
    try:
        return NAMED[name.lower()]()
    except KeyError:
        raise ValueError(f"unknown graph name {name!r}; choose from {sorted(NAMED)}") from None


def subgraph_components(g: CubicGraph, bits: int, vertices: Sequence[int] | None = None) -> list[list[int]]:
    """Connected components of the spanning subgraph (vertices, bits)."""
    verts = range(g.n) if vertices is None else vertices
    inside = set(verts)
    seen: set[int] = set()
    comps = []
    for s in verts:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for e in g.incidence[v]:
                if bits >> e & 1:
                    w = g.other(e, v)
                    if w in inside and w not in seen:
                        seen.add(w)
                        comp.append(w)
                        stack.append(w)
        comps.append(comp)
    return comps
