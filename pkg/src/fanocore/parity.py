"""Oddness, weak oddness, and the odd-component bound for cover triples."""
from __future__ import annotations

from dataclasses import dataclass

from .cores import CoverTriple
from .factors import (
    Join,
    PerfectMatching,
    complement_odd_components,
    join_masks,
    make_join,
    perfect_matching_masks,
)
from .graph import CubicGraph, require_bridgeless


def _minimize(g: CubicGraph, masks) -> tuple[int, int]:
    best, arg = None, None
    for bits in masks:
        odd = complement_odd_components(g, bits)
        if best is None or odd < best:
            best, arg = odd, bits
            if odd == 0:
                break
    if best is None:
        raise ValueError("graph has no perfect matching")
    return best, arg


def oddness(g: CubicGraph) -> tuple[int, PerfectMatching]:
    """Minimum number of odd circuits over 2-factors, with the first minimizing matching."""
    require_bridgeless(g)
    value, bits = _minimize(g, perfect_matching_masks(g))
    return value, make_join(g, bits)  # type: ignore[return-value]


def weak_oddness(g: CubicGraph) -> tuple[int, Join]:
    """Minimum number of odd components over complements of joins."""
    require_bridgeless(g)
    value, bits = _minimize(g, join_masks(g))
    return value, make_join(g, bits)


@dataclass(frozen=True)
class ParityReport:
    oddness: int
    weak_oddness: int
    matching: PerfectMatching
    join: Join

    @property
    def omega_equal(self) -> bool:
        return self.oddness == self.weak_oddness


def parity_report(g: CubicGraph) -> ParityReport:
    w, m = oddness(g)
    wp, j = weak_oddness(g)
    return ParityReport(w, wp, m, j)


@dataclass(frozen=True)
class BoundCheck:
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def check_odd_component_bound(t: CoverTriple) -> BoundCheck:
    """Sum of odd-component counts of the three join complements against l2."""
    g = t.graph
    lhs = sum(complement_odd_components(g, j.bits) for j in t.joins)
    return BoundCheck(lhs, t.l2)
