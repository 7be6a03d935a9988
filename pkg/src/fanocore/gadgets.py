"""2-cut connections, K4-expansion, the connector projection, and the
Petersen-based counterexample to the two-matching acyclicity statement."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations

from .budget import Budget, BudgetExceeded, Meter, Outcome
from .factors import Join, JoinError, make_join, perfect_matching_masks
from .graph import CubicGraph, petersen


def two_cut_connection(
    g1: CubicGraph, e1: int, g2: CubicGraph, e2: int, crossed: bool = False
) -> CubicGraph:
    """Delete e1 = u1v1 and e2 = u2v2, add u1u2 and v1v2 (u1v2, v1u2 if crossed).

    Vertices of g2 are shifted by g1.n.
    """
    if not 0 <= e1 < g1.m:
        raise IndexError(f"edge {e1} out of range for the first graph")
    if not 0 <= e2 < g2.m:
        raise IndexError(f"edge {e2} out of range for the second graph")
    off = g1.n
    u1, v1 = g1.edges[e1]
    u2, v2 = (x + off for x in g2.edges[e2])
    if crossed:
        u2, v2 = v2, u2
    edges = [uv for i, uv in enumerate(g1.edges) if i != e1]
    edges += [(a + off, b + off) for i, (a, b) in enumerate(g2.edges) if i != e2]
    edges += [(u1, u2), (v1, v2)]
    return CubicGraph(g1.n + g2.n, edges)


# K4 gadget: vertices (a, b, c, d); the deleted K4 edge is ab
_GADGET_INTERNAL = ((0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class ExpansionMap:
    base: CubicGraph
    expanded: CubicGraph
    connector_pairs: tuple[tuple[int, int], ...]
    gadget_vertices: tuple[tuple[int, int, int, int], ...]

    def gadget_edges(self, i: int) -> tuple[int, ...]:
        """Indices of the five internal edges of gadget i (ac, ad, bc, bd, cd)."""
        vs = self.gadget_vertices[i]
        return tuple(self.expanded.edge_index(vs[p], vs[q]) for p, q in _GADGET_INTERNAL)


def k4_expand(g: CubicGraph) -> ExpansionMap:
    """Replace every edge uv of ``g`` by u-a, v-b where {a,b,c,d} is a K4 minus ab.

    Base vertices keep their labels; gadget i occupies n+4i .. n+4i+3.
    """
    n = g.n
    edges = []
    gadgets = []
    for i, (u, v) in enumerate(g.edges):
        vs = tuple(n + 4 * i + k for k in range(4))
        gadgets.append(vs)
        edges.append((u, vs[0]))
        edges.append((v, vs[1]))
        edges.extend((vs[p], vs[q]) for p, q in _GADGET_INTERNAL)
    expanded = CubicGraph(n + 4 * g.m, edges)
    pairs = tuple(
        (expanded.edge_index(u, vs[0]), expanded.edge_index(v, vs[1]))
        for (u, v), vs in zip(g.edges, gadgets)
    )
    return ExpansionMap(g, expanded, pairs, tuple(gadgets))


class ProjectionError(ValueError):
    pass


def project_con(x: ExpansionMap, f: Join | int) -> Join:
    """Base edges whose two connectors both lie in ``f``."""
    bits = f if isinstance(f, int) else f.bits
    out = 0
    for i, (p, q) in enumerate(x.connector_pairs):
        a, b = bits >> p & 1, bits >> q & 1
        if a != b:
            raise ProjectionError(f"edge set contains exactly one connector of gadget {i}")
        if a:
            out |= 1 << i
    try:
        return make_join(x.base, out)
    except JoinError as exc:
        raise ProjectionError(f"projection is not a join: {exc}") from None


def counterexample_graph() -> ExpansionMap:
    return k4_expand(petersen())


@dataclass
class CounterexampleReport:
    mode: str
    outcome: Outcome
    petersen_pm_count: int = 0
    petersen_pairs: int = 0
    petersen_pairs_sharing_one: int = 0
    pm_count: int = 0
    pairs_checked: int = 0
    cyclic_pairs: int = 0

    @property
    def petersen_pair_property(self) -> bool:
        return self.petersen_pairs > 0 and self.petersen_pairs == self.petersen_pairs_sharing_one

    @property
    def all_pairs_cyclic(self) -> bool:
        return (
            self.outcome == Outcome.REFUTED
            and self.pairs_checked == self.pm_count * (self.pm_count - 1) // 2
            and self.cyclic_pairs == self.pairs_checked
        )

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "outcome": self.outcome.value,
            "petersen_pm_count": self.petersen_pm_count,
            "petersen_pairs": self.petersen_pairs,
            "petersen_pairs_sharing_one": self.petersen_pairs_sharing_one,
            "petersen_pair_property": self.petersen_pair_property,
            "pm_count": self.pm_count,
            "pairs_checked": self.pairs_checked,
            "cyclic_pairs": self.cyclic_pairs,
            "all_pairs_cyclic": self.all_pairs_cyclic,
        }


def _structured_scan(x: ExpansionMap, pms, meter: Meter) -> tuple[int, int]:
    """Group matchings by projection and check only the gadget of a shared base edge.

    If both matchings use the connectors of gadget i, its vertices c and d are
    matched to each other and ac, ad, bc, bd stay uncovered: a 4-circuit.
    The per-matching part (cd present whenever the connectors are) is checked
    for every matching; a pair of groups is then cyclic as soon as the two
    projections share an edge.
    """
    g = x.expanded
    groups: dict[int, int] = defaultdict(int)
    for bits in pms:
        meter.tick()
        con = project_con(x, bits).bits
        for i in range(x.base.m):
            if con >> i & 1:
                ac, ad, bc, bd, cd = x.gadget_edges(i)
                if not bits >> cd & 1 or bits & (1 << ac | 1 << ad | 1 << bc | 1 << bd):
                    raise AssertionError(f"gadget {i} is not closed off by the matching")
        groups[con] += 1
    checked = cyclic = 0
    keys = sorted(groups)
    for p, a in enumerate(keys):
        for b in keys[p:]:
            pairs = groups[a] * (groups[a] - 1) // 2 if a == b else groups[a] * groups[b]
            checked += pairs
            if a & b:
                cyclic += pairs
    return checked, cyclic


def verify_counterexample(mode: str = "structured", budget: Budget | None = None) -> CounterexampleReport:
    """Check that no two perfect matchings of the K4-expanded Petersen graph
    leave an acyclic complement.

    ``full`` walks every unordered pair of matchings; ``structured`` groups
    matchings by their projection onto the Petersen graph.
    """
    if mode not in ("full", "structured"):
        raise ValueError("mode must be 'full' or 'structured'")
    meter = Meter(budget)
    report = CounterexampleReport(mode, Outcome.BUDGET_EXCEEDED)
    p = petersen()
    ppms = perfect_matching_masks(p)
    report.petersen_pm_count = len(ppms)
    for a, b in combinations(ppms, 2):
        report.petersen_pairs += 1
        report.petersen_pairs_sharing_one += (a & b).bit_count() == 1

    x = counterexample_graph()
    try:
        pms = []
        from .factors import _matching_masks

        for bits in _matching_masks(x.expanded):
            meter.tick()
            pms.append(bits)
        report.pm_count = len(pms)
        if mode == "full":
            from .kernels import count_cyclic_pairs

            meter.tick(len(pms) * (len(pms) - 1) // 2)
            report.pairs_checked, report.cyclic_pairs = count_cyclic_pairs(x.expanded, pms)
        else:
            report.pairs_checked, report.cyclic_pairs = _structured_scan(x, pms, meter)
    except BudgetExceeded:
        return report
    report.outcome = Outcome.REFUTED if report.cyclic_pairs == report.pairs_checked else Outcome.WITNESS
    return report
