"""Cover triples of joins, weak cores, and exact searches over them.

``l`` can be half-integral, so it is carried everywhere as ``l2 = 2*l =
2|E0| + 3*sum n(J_i)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Callable, Iterator, Sequence

from .budget import Budget, BudgetExceeded, Meter, Outcome
from .factors import (
    Join,
    PerfectMatching,
    has_cycle,
    is_simple_join,
    join_masks,
    make_join,
    perfect_matching_masks,
)
from .graph import CubicGraph, EdgeSubset, iter_bits, require_bridgeless, subgraph_components


class InvariantViolation(AssertionError):
    pass


# vertex types by sorted coverage of the three incident edges
TYPE_NAMES = "abcdefg"
VERTEX_TYPES = {
    (3, 3, 3): 0,
    (3, 2, 2): 1,
    (3, 1, 1): 2,
    (2, 2, 1): 3,
    (1, 1, 1): 4,
    (2, 1, 0): 5,
    (3, 0, 0): 6,
}


def partition_masks(full: int, a: int, b: int, c: int) -> tuple[int, int, int, int]:
    """(E0, E1, E2, E3) for three edge bitmasks."""
    e3 = a & b & c
    e2 = ((a & b) | (a & c) | (b & c)) & ~e3
    e1 = (a ^ b ^ c) & ~e3
    e0 = full & ~(a | b | c)
    return e0, e1, e2, e3


def type_counts_of(g: CubicGraph, a: int, b: int, c: int) -> tuple[int, ...]:
    counts = [0] * 7
    for v in range(g.n):
        cov = sorted(
            ((a >> e & 1) + (b >> e & 1) + (c >> e & 1) for e in g.incidence[v]), reverse=True
        )
        try:
            counts[VERTEX_TYPES[tuple(cov)]] += 1
        except KeyError:
            raise InvariantViolation(f"vertex {v} has impossible coverage {cov}") from None
    return tuple(counts)


@dataclass(frozen=True)
class CoverTriple:
    joins: tuple[Join, Join, Join]
    partition: tuple[EdgeSubset, EdgeSubset, EdgeSubset, EdgeSubset]
    type_counts: tuple[int, int, int, int, int, int, int]

    @property
    def graph(self) -> CubicGraph:
        return self.joins[0].graph

    @property
    def sum_nj(self) -> int:
        return sum(j.n_j for j in self.joins)

    @property
    def k(self) -> int:
        return sum(not j.is_perfect_matching for j in self.joins)

    @property
    def l2(self) -> int:
        return 2 * len(self.partition[0]) + 3 * self.sum_nj

    def masks(self) -> tuple[int, int, int]:
        return tuple(j.bits for j in self.joins)  # type: ignore[return-value]


def check_triple_invariants(t: CoverTriple) -> None:
    g = t.graph
    e0, e1, e2, e3 = (len(p) for p in t.partition)
    a, b, c, d, e, f, gg = t.type_counts
    s = t.sum_nj
    bits = [p.bits for p in t.partition]
    if e0 + e1 + e2 + e3 != g.m or bits[0] | bits[1] | bits[2] | bits[3] != g.full_mask:
        raise InvariantViolation("E0..E3 do not partition E(G)")
    checks = {
        "|E0| + sum n(J) = |E2| + 2|E3|": e0 + s == e2 + 2 * e3,
        "sum n(J) = 3a+2b+c+d": s == 3 * a + 2 * b + c + d,
        "2|E0| = f + 2g": 2 * e0 == f + 2 * gg,
        "2|E2| = 2b + 2d + f": 2 * e2 == 2 * b + 2 * d + f,
        "2|E3| = 3a + b + c + g": 2 * e3 == 3 * a + b + c + gg,
        "a+..+g = n": a + b + c + d + e + f + gg == g.n,
    }
    bad = [name for name, ok in checks.items() if not ok]
    if bad:
        raise InvariantViolation(f"cover triple violates {bad}")


def make_cover_triple(j1: Join, j2: Join, j3: Join) -> CoverTriple:
    g = j1.graph
    if not (j2.graph == g and j3.graph == g):
        raise ValueError("joins belong to different graphs")
    a, b, c = j1.bits, j2.bits, j3.bits
    parts = tuple(EdgeSubset(g, x) for x in partition_masks(g.full_mask, a, b, c))
    t = CoverTriple((j1, j2, j3), parts, type_counts_of(g, a, b, c))  # type: ignore[arg-type]
    check_triple_invariants(t)
    return t


def triple_from_masks(g: CubicGraph, a: int, b: int, c: int) -> CoverTriple:
    return make_cover_triple(make_join(g, a), make_join(g, b), make_join(g, c))


@dataclass(frozen=True)
class WeakCore:
    edges: EdgeSubset
    k: int
    l2: int

    @property
    def l(self) -> float:
        return self.l2 / 2


def weak_core(t: CoverTriple) -> WeakCore:
    e0, _, e2, e3 = t.partition
    return WeakCore(e0 | e2 | e3, t.k, t.l2)


def degrees_in(g: CubicGraph, bits: int) -> list[int]:
    deg = [0] * g.n
    for e in iter_bits(bits):
        u, v = g.edges[e]
        deg[u] += 1
        deg[v] += 1
    return deg


def is_bipartite_mask(g: CubicGraph, bits: int) -> bool:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for e in g.incidence[v]:
                if bits >> e & 1:
                    w = g.other(e, v)
                    if color[w] < 0:
                        color[w] = color[v] ^ 1
                        stack.append(w)
                    elif color[w] == color[v]:
                        return False
    return True


def is_triangle_free_mask(g: CubicGraph, bits: int) -> bool:
    for e in iter_bits(bits):
        u, v = g.edges[e]
        for f in g.incidence[u]:
            if f == e or not bits >> f & 1:
                continue
            w = g.other(f, u)
            if g.has_edge(v, w) and bits >> g.edge_index(v, w) & 1:
                return False
    return True


def is_cyclic_mask(g: CubicGraph, bits: int) -> bool:
    return all(d in (0, 2) for d in degrees_in(g, bits))


@dataclass(frozen=True)
class CoreProperties:
    is_cyclic: bool
    is_bipartite: bool
    is_triangle_free: bool
    is_simple: bool


def core_properties(t: CoverTriple) -> CoreProperties:
    g = t.graph
    bits = weak_core(t).edges.bits
    return CoreProperties(
        is_cyclic=is_cyclic_mask(g, bits),
        is_bipartite=is_bipartite_mask(g, bits),
        is_triangle_free=is_triangle_free_mask(g, bits),
        is_simple=all(is_simple_join(j) for j in t.joins),
    )


# branch and bound ---------------------------------------------------------

ALL = 3  # a join takes all three edges at the vertex


def _vertex_configs():
    """The 64 ways three joins can meet a vertex.

    For each join i pick slot c_i in {0,1,2} (degree 1) or ALL (degree 3).
    Returns (c, labels per slot as 3-bit masks, J-vertex bitmask).
    """
    out = []
    for c0 in range(4):
        for c1 in range(4):
            for c2 in range(4):
                c = (c0, c1, c2)
                labels = [0, 0, 0]
                jmask = 0
                for i, ci in enumerate(c):
                    if ci == ALL:
                        jmask |= 1 << i
                        for s in range(3):
                            labels[s] |= 1 << i
                    else:
                        labels[ci] |= 1 << i
                out.append((c, tuple(labels), jmask))
    return out


_CONFIGS = _vertex_configs()
_POP = [bin(x).count("1") for x in range(8)]


def _bfs_order(g: CubicGraph) -> list[int]:
    order = [0]
    seen = {0}
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for w in g.neighbors[v]:
            if w not in seen:
                seen.add(w)
                order.append(w)
    return order


@dataclass
class CoreSearchResult:
    outcome: Outcome
    l2: int | None = None
    k: int | None = None
    triple: CoverTriple | None = None
    nodes: int = 0

    @property
    def l(self) -> float | None:
        return None if self.l2 is None else self.l2 / 2


def _residual_table(allowed) -> dict[tuple[int, int, int], tuple[int, int]]:
    """For each partial labelling of a vertex's three slots (-1 = unknown),
    the least extra cost its unknown slots can add, under both bound forms.

    Each unknown edge is shared by two undecided vertices, so each endpoint
    charges half of the edge's cost.  Missing keys are infeasible.
    """
    table: dict[tuple[int, int, int], tuple[int, int]] = {}
    for _, labels, _ in allowed:
        for known in range(8):
            key = tuple(labels[s] if known >> s & 1 else -1 for s in range(3))
            ra = rb = 0
            for s in range(3):
                if not known >> s & 1:
                    lab = labels[s]
                    ra += lab == 0
                    rb += (_POP[lab] == 2) + 2 * (lab == 7)
            old = table.get(key)
            table[key] = (ra, rb) if old is None else (min(old[0], ra), min(old[1], rb))
    return table


class _LabelSearch:
    """DFS over per-edge coverage labels, vertex by vertex in BFS order.

    ``feasible(cost_cap)`` looks for a labelling whose objective is at most
    ``cost_cap``.  The lower bound on a partial labelling is
    max(2|E0| + 3*N, 2|E2| + 4|E3| + N) over the labelled edges, where N
    rounds each join's committed J-vertex count up to even, plus for every
    vertex the cheapest completion of its own unlabelled edges.  Both forms
    equal l2 on a complete labelling.
    """

    def __init__(self, g: CubicGraph, k_max: int, forbid_e3: bool, meter: Meter):
        self.g = g
        self.k_max = k_max
        self.meter = meter
        self.order = _bfs_order(g)
        pos = {v: t for t, v in enumerate(self.order)}
        allowed = [
            cfg
            for cfg in _CONFIGS
            if (k_max > 0 or cfg[2] == 0) and not (forbid_e3 and 7 in cfg[1])
        ]
        self.residual = _residual_table(allowed)
        self.steps = []
        for t, v in enumerate(self.order):
            inc = g.incidence[v]
            known = [s for s in range(3) if pos[g.other(inc[s], v)] < t]
            table: dict[tuple[int, ...], list] = {}
            for c, labels, jmask in allowed:
                if t == 0 and list(c) != sorted(c):
                    continue  # join labels are interchangeable: fix them at the root
                key = tuple(labels[s] for s in known)
                new = tuple((inc[s], labels[s]) for s in range(3) if s not in known)
                d0 = sum(1 for _, lab in new if lab == 0)
                d2 = sum(1 for _, lab in new if _POP[lab] == 2)
                d3 = sum(1 for _, lab in new if lab == 7)
                touched = tuple(sorted({w for e, _ in new for w in g.edges[e]}))
                table.setdefault(key, []).append((new, d0, d2, d3, jmask, touched))
            for opts in table.values():
                opts.sort(key=lambda o: (2 * o[1] + 2 * o[2] + 4 * o[3] + 3 * _POP[o[4]]))
            self.steps.append((tuple(inc[s] for s in known), table))
        self.label = [-1] * g.m
        self.nj = [0, 0, 0]
        empty = self.residual[(-1, -1, -1)]
        self.res = [empty] * g.n
        self.sum_a = empty[0] * g.n
        self.sum_b = empty[1] * g.n

    def feasible(self, cap: int) -> bool:
        self.cap = cap
        return self._rec(0, 0, 0, 0)

    def _rec(self, t: int, e0: int, e2: int, e3: int) -> bool:
        if t == len(self.steps):
            return True
        self.meter.tick()
        known, table = self.steps[t]
        label = self.label
        opts = table.get(tuple(label[e] for e in known))
        if not opts:
            return False
        nj = self.nj
        res = self.res
        residual = self.residual
        inc = self.g.incidence
        for new, d0, d2, d3, jmask, touched in opts:
            if jmask:
                prev = nj[:]
                for i in range(3):
                    if jmask >> i & 1:
                        nj[i] += 1
                if sum(1 for x in nj if x) > self.k_max:
                    nj[:] = prev
                    continue
            n = nj[0] + (nj[0] & 1) + nj[1] + (nj[1] & 1) + nj[2] + (nj[2] & 1)
            a = 2 * (e0 + d0) + 3 * n
            b = 2 * (e2 + d2) + 4 * (e3 + d3) + n
            if a <= self.cap and b <= self.cap:
                for e, lab in new:
                    label[e] = lab
                sa0, sb0 = self.sum_a, self.sum_b
                sa, sb = sa0, sb0
                saved = []
                ok = True
                for w in touched:
                    x, y, z = inc[w]
                    r = residual.get((label[x], label[y], label[z]))
                    if r is None:
                        ok = False
                        break
                    old = res[w]
                    saved.append((w, old))
                    res[w] = r
                    sa += r[0] - old[0]
                    sb += r[1] - old[1]
                if ok and a + sa <= self.cap and b + sb <= self.cap:
                    self.sum_a, self.sum_b = sa, sb
                    if self._rec(t + 1, e0 + d0, e2 + d2, e3 + d3):
                        return True
                for w, old in saved:
                    res[w] = old
                self.sum_a, self.sum_b = sa0, sb0
                for e, _ in new:
                    label[e] = -1
            if jmask:
                nj[:] = prev
        return False

    def triple(self) -> CoverTriple:
        masks = [0, 0, 0]
        for e, lab in enumerate(self.label):
            for i in range(3):
                if lab >> i & 1:
                    masks[i] |= 1 << e
        return triple_from_masks(self.g, *masks)


def minimize_core(
    g: CubicGraph,
    k_max: int = 0,
    objective: str = "l",
    budget: Budget | None = None,
) -> CoreSearchResult:
    """Exact minimum of l2 over weak cores with at most ``k_max`` non-matching joins.

    ``objective="l"``: k_max=0 gives mu3, k_max=3 gives mu3'.
    ``objective="cyclic-feasibility"``: least k (<= k_max) admitting a cyclic
    weak core, i.e. a triple with E3 empty.
    """
    require_bridgeless(g)
    if not 0 <= k_max <= 3:
        raise ValueError("k_max must be in 0..3")
    meter = Meter(budget)
    try:
        if objective == "l":
            search = _LabelSearch(g, k_max, False, meter)
            # l2 <= 2m + 3*3n covers every triple, so the loop always terminates
            for cap in range(0, 2 * g.m + 9 * g.n + 1):
                if search.feasible(cap):
                    t = search.triple()
                    if t.l2 != cap:
                        raise InvariantViolation(f"search cost {cap} != l2 {t.l2}")
                    return CoreSearchResult(Outcome.WITNESS, cap, t.k, t, meter.nodes)
            return CoreSearchResult(Outcome.REFUTED, nodes=meter.nodes)
        if objective == "cyclic-feasibility":
            for k in range(k_max + 1):
                search = _LabelSearch(g, k, True, meter)
                if search.feasible(1 << 30):
                    t = search.triple()
                    return CoreSearchResult(Outcome.WITNESS, t.l2, t.k, t, meter.nodes)
            return CoreSearchResult(Outcome.REFUTED, nodes=meter.nodes)
    except BudgetExceeded:
        return CoreSearchResult(Outcome.BUDGET_EXCEEDED, nodes=meter.nodes)
    raise ValueError(f"unknown objective {objective!r}")


# predicate witnesses ------------------------------------------------------


@dataclass
class WitnessResult:
    outcome: Outcome
    witness: tuple[Join, ...] | None = None
    nodes: int = 0


def _pm(g: CubicGraph, bits: int) -> PerfectMatching:
    j = make_join(g, bits)
    assert isinstance(j, PerfectMatching)
    return j


def _pm_triples(pms: Sequence[int]) -> Iterator[tuple[int, int, int]]:
    return combinations_with_replacement(pms, 3)


def _search_pm_triples(g, meter, accept: Callable[[int, int, int], bool]):
    for a, b, c in _pm_triples(perfect_matching_masks(g)):
        meter.tick()
        if accept(a, b, c):
            return (a, b, c)
    return None


def _core_bits(g: CubicGraph, a: int, b: int, c: int) -> int:
    e0, _, e2, e3 = partition_masks(g.full_mask, a, b, c)
    return e0 | e2 | e3


def _fan_raspaud(g, meter):
    pms = perfect_matching_masks(g)
    for i, a in enumerate(pms):
        for j in range(i, len(pms)):
            d = a & pms[j]
            for c in pms[j:]:
                meter.tick()
                if not d & c:
                    return (a, pms[j], c)
    return None


def _bipartite_core(g, meter):
    return _search_pm_triples(g, meter, lambda a, b, c: is_bipartite_mask(g, _core_bits(g, a, b, c)))


def _triangle_free_core(g, meter):
    return _search_pm_triples(g, meter, lambda a, b, c: is_triangle_free_mask(g, _core_bits(g, a, b, c)))


def _acyclic_3pm(g, meter):
    full = g.full_mask
    return _search_pm_triples(g, meter, lambda a, b, c: not has_cycle(g, full & ~(a | b | c)))


def _acyclic_2pm(g, meter):
    from .kernels import first_acyclic_pair

    pms = perfect_matching_masks(g)
    # the compiled pair scan is charged one node per matching, not per pair
    meter.tick(len(pms))
    hit = first_acyclic_pair(g, pms)
    if hit is None:
        return None
    return (pms[hit[0]], pms[hit[1]])


def _two_pm_join(g, meter, nonmatching_only=False):
    pms = perfect_matching_masks(g)
    joins = [j for j in join_masks(g) if not (nonmatching_only and _is_pm_mask(g, j))]
    for i, a in enumerate(pms):
        for b in pms[i:]:
            d = a & b
            for j in joins:
                meter.tick()
                if not d & j:
                    return (a, b, j)
    return None


def _is_pm_mask(g: CubicGraph, bits: int) -> bool:
    return bits.bit_count() == g.n // 2


def _one_pm_two_joins(g, meter):
    joins = join_masks(g)
    for a in perfect_matching_masks(g):
        for x, j1 in enumerate(joins):
            d = a & j1
            for j2 in joins[x:]:
                meter.tick()
                if not d & j2:
                    return (a, j1, j2)
    return None


PREDICATES: dict[str, Callable] = {
    "fan-raspaud": _fan_raspaud,
    "2pm+join": _two_pm_join,
    "1pm+2joins": _one_pm_two_joins,
    "cyclic-1-weak": lambda g, meter: _two_pm_join(g, meter, nonmatching_only=True),
    "bipartite-core": _bipartite_core,
    "triangle-free-core": _triangle_free_core,
    "acyclic-e0-3pm": _acyclic_3pm,
    "acyclic-2pm": _acyclic_2pm,
}


def find_witness(g: CubicGraph, predicate: str, budget: Budget | None = None) -> WitnessResult:
    """First witness in enumeration order, or REFUTED after an exhaustive search."""
    require_bridgeless(g)
    try:
        search = PREDICATES[predicate]
    except KeyError:
        raise ValueError(f"unknown predicate {predicate!r}; choose from {sorted(PREDICATES)}") from None
    meter = Meter(budget)
    try:
        hit = search(g, meter)
    except BudgetExceeded:
        return WitnessResult(Outcome.BUDGET_EXCEEDED, nodes=meter.nodes)
    if hit is None:
        return WitnessResult(Outcome.REFUTED, nodes=meter.nodes)
    return WitnessResult(Outcome.WITNESS, tuple(make_join(g, x) for x in hit), meter.nodes)


def check_witness(g: CubicGraph, predicate: str, witness: Sequence[Join]) -> bool:
    """Independent re-validation of a witness against its predicate."""
    pm = [j.is_perfect_matching for j in witness]
    bits = [j.bits for j in witness]
    full = g.full_mask
    if predicate in ("fan-raspaud", "bipartite-core", "triangle-free-core", "acyclic-e0-3pm"):
        if len(witness) != 3 or not all(pm):
            return False
        t = make_cover_triple(*witness)
        if predicate == "fan-raspaud":
            return not t.partition[3]
        props = core_properties(t)
        if predicate == "bipartite-core":
            return props.is_bipartite
        if predicate == "triangle-free-core":
            return props.is_triangle_free
        return not has_cycle(g, t.partition[0].bits)
    if predicate == "acyclic-2pm":
        return len(witness) == 2 and all(pm) and not has_cycle(g, full & ~(bits[0] | bits[1]))
    if predicate in ("2pm+join", "cyclic-1-weak"):
        if len(witness) != 3 or not (pm[0] and pm[1]):
            return False
        if predicate == "cyclic-1-weak":
            if pm[2]:
                return False
            return core_properties(make_cover_triple(*witness)).is_cyclic
        return not bits[0] & bits[1] & bits[2]
    if predicate == "1pm+2joins":
        return len(witness) == 3 and pm[0] and not bits[0] & bits[1] & bits[2]
    raise ValueError(f"unknown predicate {predicate!r}")


def core_components(t: CoverTriple) -> list[list[int]]:
    """Vertex sets of the non-trivial components of the weak core."""
    g = t.graph
    bits = weak_core(t).edges.bits
    return [c for c in subgraph_components(g, bits) if len(c) > 1]
