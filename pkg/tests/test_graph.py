import pytest

from conftest import DATA, bridged_graph, load, small_cubic
from fanocore.graph import (
    CubicGraph,
    EdgeSubset,
    Graph6ParseError,
    GraphError,
    build_named,
    decode_graph6,
    find_bridges,
    is_bridgeless,
    parse_graph6,
    read_graph6_lines,
    write_graph6,
)
from fanocore.invariants import BRIDGE_ORACLE_MAX_N, bridges_by_deletion

ALL_FIXTURES = ["cubic_upto10.g6", "bridgeless_misc.g6", "snarks.g6"]


def test_k4_graph6_hand_encoding(k4):
    # 'C' = 63 + 4, '~' = 63 + 0b111111
    assert write_graph6(k4) == b"C~"
    g = parse_graph6(b"C~")
    assert g == k4
    assert g.n == 4 and g.m == 6


def test_petersen_graph6_shape(petersen):
    line = write_graph6(petersen)
    assert len(line) == 9
    assert line[0] == 63 + 10


def test_parse_rejects_degree_two_vertex():
    # clear the first upper-triangle bit (edge 0-1): vertices 0 and 1 drop to degree 2
    with pytest.raises(GraphError, match="not cubic"):
        parse_graph6(bytes([67, 63 + 0b011111]))


def test_parse_reports_offset_of_bad_byte():
    with pytest.raises(Graph6ParseError) as info:
        parse_graph6(b"C\x10")
    assert info.value.offset == 1


def test_parse_rejects_truncated_line():
    with pytest.raises(Graph6ParseError):
        parse_graph6(b"I")


def test_header_and_blank_lines_are_skipped():
    lines = [b">>graph6<<C~\n", b"\n", b"  IheA@GUAo  \n"]
    got = [s for _, s in read_graph6_lines(lines)]
    assert got == [b"C~", b"IheA@GUAo"]


def test_edges_are_lexicographic(petersen):
    assert list(petersen.edges) == sorted(petersen.edges)
    assert all(u < v for u, v in petersen.edges)


def test_simple_graph_validation():
    with pytest.raises(GraphError, match="loop"):
        CubicGraph(4, [(0, 0), (1, 2), (1, 3), (2, 3), (0, 1), (0, 2)])
    with pytest.raises(GraphError, match="parallel"):
        CubicGraph(4, [(0, 1), (0, 1), (0, 2), (1, 3), (2, 3), (2, 3)])
    with pytest.raises(GraphError, match="even"):
        CubicGraph(5, [])
    two_k4 = [(u, v) for u in range(4) for v in range(u + 1, 4)]
    two_k4 += [(u + 4, v + 4) for u, v in two_k4]
    with pytest.raises(GraphError, match="disconnected"):
        CubicGraph(8, two_k4)


@pytest.mark.parametrize("name,n,m", [("petersen", 10, 15), ("k4", 4, 6), ("k3_3", 6, 9)])
def test_named_graphs(name, n, m):
    g = build_named(name)
    assert (g.n, g.m) == (n, m)
    assert 2 * g.m == 3 * g.n


def test_petersen_labeling(petersen):
    for i in range(5):
        assert petersen.has_edge(i, (i + 1) % 5)
        assert petersen.has_edge(i, i + 5)
        assert petersen.has_edge(5 + i, 5 + (i + 2) % 5)


def test_k33_is_bipartite(k33):
    side = {0, 1, 2}
    assert all((u in side) != (v in side) for u, v in k33.edges)


def test_unknown_name():
    with pytest.raises(ValueError):
        build_named("heawood")


def test_bridges(k4, petersen):
    assert is_bridgeless(k4)
    assert is_bridgeless(petersen)
    g = bridged_graph()
    assert not is_bridgeless(g)
    assert [g.edges[e] for e in find_bridges(g)] == [(4, 9)]


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_graph6_roundtrip_on_fixtures(name):
    with open(DATA / name, "rb") as fh:
        for _, line in read_graph6_lines(fh):
            g = parse_graph6(line)
            assert 2 * g.m == 3 * g.n
            again = write_graph6(g)
            assert again == line
            assert parse_graph6(again) == g


def test_bridges_match_deletion_oracle():
    graphs = small_cubic() + load("bridgeless_misc.g6") + [bridged_graph()]
    checked = 0
    for g in graphs:
        if g.n <= BRIDGE_ORACLE_MAX_N:
            assert find_bridges(g) == bridges_by_deletion(g)
            checked += 1
    assert checked >= 30


def test_small_census_has_one_bridged_graph():
    assert sum(not is_bridgeless(g) for g in small_cubic()) == 1


def test_edge_subset_ops(k4):
    a = EdgeSubset.from_edges(k4, [0, 1])
    b = EdgeSubset.from_edges(k4, [1, 2])
    assert (a & b).indices() == [1]
    assert (a | b).indices() == [0, 1, 2]
    assert (a ^ b).indices() == [0, 2]
    assert (a - b).indices() == [0]
    assert len(a.complement()) == 4
    assert 0 in a and 2 not in a
    with pytest.raises(ValueError):
        a & EdgeSubset(build_named("petersen"), 1)


def test_decode_n_long_form():
    # n = 64 uses the 4-byte form: '~' followed by three 6-bit groups
    n, edges = decode_graph6(bytes([126, 63, 64, 63]) + b"?" * 336)
    assert n == 64 and edges == []
