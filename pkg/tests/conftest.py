from __future__ import annotations

from pathlib import Path

import pytest

from fanocore.graph import CubicGraph, build_named, is_bridgeless, load_graph6_file

DATA = Path(__file__).parent / "data"


def load(name: str) -> list[CubicGraph]:
    return load_graph6_file(DATA / name)


def small_cubic() -> list[CubicGraph]:
    """All connected cubic graphs on 4..10 vertices (27 of them)."""
    return load("cubic_upto10.g6")


def bridgeless_fixtures() -> list[CubicGraph]:
    out = [g for g in small_cubic() if is_bridgeless(g)]
    out += load("bridgeless_misc.g6")
    return out


def snarks() -> list[CubicGraph]:
    return load("snarks.g6")


def bridged_graph() -> CubicGraph:
    """Two K4s with one edge subdivided each, joined at the subdivision vertices."""
    block = [(0, 4), (4, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    edges = block + [(u + 5, v + 5) for u, v in block] + [(4, 9)]
    return CubicGraph(10, edges)


@pytest.fixture
def k4():
    return build_named("k4")


@pytest.fixture
def k33():
    return build_named("k3_3")


@pytest.fixture
def petersen():
    return build_named("petersen")


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
