from __future__ import annotations

from .graph import CubicGraph


def three_edge_coloring(g: CubicGraph) -> list[int] | None:
    """A proper 3-edge-coloring (colors 0..2) or None for class-2 graphs.

    Plain backtracking over edges in index order; colors used at each vertex
    are tracked as 3-bit masks.
    """
    used = [0] * g.n
    color = [-1] * g.m
    edges = g.edges

    def rec(e: int) -> bool:
        if e == g.m:
            return True
        u, v = edges[e]
        free = 7 & ~(used[u] | used[v])
        # the first edge's color is arbitrary
        for c in (0,) if e == 0 else (0, 1, 2):
            if free >> c & 1:
                bit = 1 << c
                used[u] |= bit
                used[v] |= bit
                color[e] = c
                if rec(e + 1):
                    return True
                used[u] ^= bit
                used[v] ^= bit
        color[e] = -1
        return False

    return color if rec(0) else None


def is_class_one(g: CubicGraph) -> bool:
    return three_edge_coloring(g) is not None
