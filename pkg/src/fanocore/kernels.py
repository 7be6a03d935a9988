"""Compiled pair scans over perfect matchings.

The complement of M1 | M2 in a cubic graph has maximum degree 2: a vertex
where both matchings use the same edge keeps two complement edges, every
other vertex keeps one.  Circuits are therefore the components made only
of such "double" vertices, and one walk per component decides acyclicity.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from .graph import CubicGraph


def mate_array(g: CubicGraph, masks) -> np.ndarray:
    """Row p holds, for every vertex, the index of its edge in matching p."""
    mates = np.empty((len(masks), g.n), dtype=np.int32)
    for p, bits in enumerate(masks):
        row = mates[p]
        for v in range(g.n):
            for e in g.incidence[v]:
                if bits >> e & 1:
                    row[v] = e
                    break
    return mates


def graph_arrays(g: CubicGraph) -> tuple[np.ndarray, np.ndarray]:
    inc = np.array(g.incidence, dtype=np.int32)
    ends = np.array(g.edges, dtype=np.int32)
    return inc, ends


@njit(cache=True)
def _complement_has_cycle(mi, mj, inc, ends, seen, stamp):
    n = mi.shape[0]
    for s in range(n):
        if mi[s] != mj[s] or seen[s] == stamp:
            continue
        seen[s] = stamp
        e = inc[s, 0]
        if e == mi[s]:
            e = inc[s, 1]
        cur = s
        while True:
            w = ends[e, 0] if ends[e, 1] == cur else ends[e, 1]
            if w == s:
                return True
            if mi[w] != mj[w]:
                break
            seen[w] = stamp
            nxt = -1
            for t in range(3):
                f = inc[w, t]
                if f != e and f != mi[w]:
                    nxt = f
            e = nxt
            cur = w
    return False


@njit(cache=True)
def _scan_pairs(mates, inc, ends, stop_on_acyclic):
    """Count cyclic pairs i < j; optionally stop at the first acyclic pair."""
    p = mates.shape[0]
    seen = np.zeros(mates.shape[1], dtype=np.int64)
    stamp = 0
    cyclic = 0
    checked = 0
    for i in range(p):
        for j in range(i + 1, p):
            stamp += 1
            checked += 1
            if _complement_has_cycle(mates[i], mates[j], inc, ends, seen, stamp):
                cyclic += 1
            elif stop_on_acyclic:
                return checked, cyclic, i, j
    return checked, cyclic, -1, -1


def complement_has_cycle(g: CubicGraph, m1: int, m2: int) -> bool:
    mates = mate_array(g, [m1, m2])
    inc, ends = graph_arrays(g)
    seen = np.zeros(g.n, dtype=np.int64)
    return bool(_complement_has_cycle(mates[0], mates[1], inc, ends, seen, 1))


def count_cyclic_pairs(g: CubicGraph, masks) -> tuple[int, int]:
    """(pairs checked, pairs whose complement of the union contains a circuit)."""
    inc, ends = graph_arrays(g)
    checked, cyclic, _, _ = _scan_pairs(mate_array(g, masks), inc, ends, False)
    return int(checked), int(cyclic)


def first_acyclic_pair(g: CubicGraph, masks) -> tuple[int, int] | None:
    """Indices (i, j), i < j, of the first pair with an acyclic complement of the union.

    Pairs with i == j never qualify: the complement of a single matching is a
    2-factor.
    """
    if len(masks) < 2:
        return None
    inc, ends = graph_arrays(g)
    _, _, i, j = _scan_pairs(mate_array(g, masks), inc, ends, True)
    return None if i < 0 else (int(i), int(j))
