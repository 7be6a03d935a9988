"""Fano plane, Fano-flows and the minimum-line search.

Points are the nonzero elements of Z2^3 written as integers 1..7; a line is
a triple {x, y, x ^ y}.  Every element is its own inverse, so a flow needs no
orientation: each vertex just sees three distinct values that xor to zero.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .budget import Budget, BudgetExceeded, Meter, Outcome
from .cores import CoverTriple
from .graph import CubicGraph, require_bridgeless

POINTS = tuple(range(1, 8))
LINES: tuple[tuple[int, int, int], ...] = tuple(
    sorted({tuple(sorted((x, y, x ^ y))) for x in POINTS for y in POINTS if x != y})  # type: ignore[misc]
)
# LINE_OF[x][y] is the index of the line through distinct points x and y
LINE_OF = [[-1] * 8 for _ in range(8)]
for _i, _line in enumerate(LINES):
    for _x in _line:
        for _y in _line:
            if _x != _y:
                LINE_OF[_x][_y] = _i


class FanoFlowError(ValueError):
    pass


@dataclass(frozen=True)
class FanoFlow:
    values: tuple[int, ...]
    lines_used: frozenset[tuple[int, int, int]]

    @property
    def k(self) -> int:
        return len(self.lines_used)

    def points_used(self) -> set[int]:
        return set(self.values)


def validate_fano_flow(g: CubicGraph, values: Sequence[int]) -> FanoFlow:
    if len(values) != g.m:
        raise FanoFlowError(f"expected {g.m} values, got {len(values)}")
    for e, x in enumerate(values):
        if not 1 <= x <= 7:
            raise FanoFlowError(f"edge {e} has value {x}, not a nonzero element of Z2^3")
    lines = set()
    for v in range(g.n):
        a, b, c = (values[e] for e in g.incidence[v])
        if a ^ b ^ c:
            raise FanoFlowError(f"values {a}, {b}, {c} at vertex {v} do not sum to zero")
        if len({a, b, c}) != 3:
            raise FanoFlowError(f"values at vertex {v} are not pairwise distinct")
        lines.add(LINES[LINE_OF[a][b]])
    return FanoFlow(tuple(values), frozenset(lines))


def triple_to_flow(t: CoverTriple) -> FanoFlow:
    """Bit i of an edge's value is 1 iff the edge misses the i-th join."""
    if t.partition[3]:
        raise FanoFlowError("the joins have a common edge, which would carry the value 0")
    g = t.graph
    masks = t.masks()
    values = [7 ^ sum((m >> e & 1) << i for i, m in enumerate(masks)) for e in range(g.m)]
    return validate_fano_flow(g, values)


def _edge_order(g: CubicGraph) -> list[int]:
    """Edges in the order BFS from vertex 0 first reaches them."""
    order, seen = [], set()
    visited = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for e in g.incidence[v]:
            if e not in seen:
                seen.add(e)
                order.append(e)
            w = g.other(e, v)
            if w not in visited:
                visited.add(w)
                queue.append(w)
    return order


@dataclass
class FanoSearchResult:
    outcome: Outcome
    k: int | None = None
    flow: FanoFlow | None = None
    nodes: int = 0


# LINE_POINTS[i] is line i as a 7-bit point mask (bit x-1 for point x)
LINE_POINTS = [sum(1 << (x - 1) for x in line) for line in LINES]


class _FlowSearch:
    """Branch and bound over edge values on the number of distinct lines.

    Two assigned edges at a vertex fix its line and force the third value.
    Values are introduced in canonical order (1, then 2, then 4), which is
    safe because linear maps of Z2^3 permute Fano-flows and their lines.
    """

    def __init__(self, g: CubicGraph, meter: Meter):
        self.g = g
        self.meter = meter
        self.order = _edge_order(g)
        self.val = [0] * g.m
        self.cnt = [0] * g.n
        self.xr = [0] * g.n
        self.line_at = [-1] * g.n
        self.line_uses = [0] * 7
        self.n_lines = 0
        self.point_uses = [0] * 8
        self.trail: list[int] = []
        self.best = 8
        self.best_values: list[int] | None = None

    def _assign(self, e: int, x: int) -> bool:
        g = self.g
        queue = [(e, x)]
        while queue:
            e, x = queue.pop()
            if self.val[e]:
                if self.val[e] != x:
                    return False
                continue
            self.val[e] = x
            self.point_uses[x] += 1
            self.trail.append(e)
            ok = True
            for w in g.edges[e]:
                self.cnt[w] += 1
                self.xr[w] ^= x
                c = self.cnt[w]
                if c == 2:
                    s = self.xr[w]
                    if s == 0:
                        ok = False
                        continue
                    line = LINE_OF[x][s]
                    self.line_at[w] = line
                    self.line_uses[line] += 1
                    if self.line_uses[line] == 1:
                        self.n_lines += 1
                        if self.n_lines >= self.best:
                            ok = False
                    for f in g.incidence[w]:
                        if not self.val[f]:
                            queue.append((f, s))
                elif c == 3 and self.xr[w]:
                    ok = False
            if not ok:
                return False
        return True

    def _undo(self, mark: int) -> None:
        g = self.g
        while len(self.trail) > mark:
            e = self.trail.pop()
            x = self.val[e]
            self.val[e] = 0
            self.point_uses[x] -= 1
            for w in g.edges[e]:
                if self.cnt[w] == 2 and self.line_at[w] >= 0:
                    line = self.line_at[w]
                    self.line_at[w] = -1
                    self.line_uses[line] -= 1
                    if self.line_uses[line] == 0:
                        self.n_lines -= 1
                self.cnt[w] -= 1
                self.xr[w] ^= x

    def _propagate(self) -> bool:
        """Once no new line may appear, restrict every open edge to values its
        endpoints can still complete with used lines; assign singletons."""
        g = self.g
        while self.n_lines >= self.best - 1:
            used = [i for i in range(7) if self.line_uses[i]]
            free_all = 0
            for i in used:
                free_all |= LINE_POINTS[i]
            dom = [0] * g.n
            for w in range(g.n):
                c = self.cnt[w]
                if c == 0:
                    dom[w] = free_all
                elif c == 1:
                    x = self.xr[w]
                    d = 0
                    for i in used:
                        if LINE_POINTS[i] >> (x - 1) & 1:
                            d |= LINE_POINTS[i]
                    d &= ~(1 << (x - 1))
                    if not d:
                        return False
                    dom[w] = d
            forced = []
            for e in range(g.m):
                if self.val[e]:
                    continue
                u, w = g.edges[e]
                d = dom[u] & dom[w]
                if not d:
                    return False
                if d & (d - 1) == 0:
                    forced.append((e, d.bit_length()))
            if not forced:
                return True
            for e, x in forced:
                if not self._assign(e, x):
                    return False
        return True

    def _max_value(self) -> int:
        for x in (7, 6, 5, 4, 3, 2, 1):
            if self.point_uses[x]:
                return x
        return 0

    def _candidates(self, e: int) -> list[int]:
        top = self._max_value()
        limit = 1 if top == 0 else 2 if top == 1 else 4 if top <= 3 else 7
        scored = []
        for x in range(1, limit + 1):
            new = set()
            bad = False
            for w in self.g.edges[e]:
                if self.cnt[w] == 1:
                    s = self.xr[w]
                    if s == x:
                        bad = True
                        break
                    line = LINE_OF[x][s]
                    if not self.line_uses[line]:
                        new.add(line)
            if not bad:
                scored.append((len(new), x))
        scored.sort()
        return [x for _, x in scored]

    def run(self, pos: int = 0) -> None:
        order = self.order
        while pos < len(order) and self.val[order[pos]]:
            pos += 1
        if pos == len(order):
            if self.n_lines < self.best:
                self.best = self.n_lines
                self.best_values = self.val[:]
            return
        self.meter.tick()
        e = order[pos]
        for x in self._candidates(e):
            if self.best == 1:
                return
            mark = len(self.trail)
            if self._assign(e, x) and self._propagate():
                self.run(pos + 1)
            self._undo(mark)


def min_line_fano_flow(g: CubicGraph, budget: Budget | None = None) -> FanoSearchResult:
    """Exact minimum number of Fano lines over all Fano-flows of ``g``."""
    require_bridgeless(g)
    meter = Meter(budget)
    search = _FlowSearch(g, meter)
    try:
        search.run()
    except BudgetExceeded:
        return FanoSearchResult(Outcome.BUDGET_EXCEEDED, nodes=meter.nodes)
    if search.best_values is None:
        return FanoSearchResult(Outcome.REFUTED, nodes=meter.nodes)
    flow = validate_fano_flow(g, search.best_values)
    return FanoSearchResult(Outcome.WITNESS, flow.k, flow, meter.nodes)
