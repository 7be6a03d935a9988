"""Randomized properties: relabeling invariance, triple laws, constructions."""
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import bridgeless_fixtures
from fanocore.cores import check_triple_invariants, degrees_in, minimize_core, triple_from_masks
from fanocore.factors import is_join_mask, join_masks, perfect_matching_masks
from fanocore.fano import FanoFlowError, min_line_fano_flow, triple_to_flow
from fanocore.gadgets import k4_expand, project_con, two_cut_connection
from fanocore.graph import CubicGraph, EdgeSubset, find_bridges, parse_graph6, write_graph6
from fanocore.invariants import bridges_by_deletion
from fanocore.parity import check_odd_component_bound, oddness, weak_oddness

SMALL = [g for g in bridgeless_fixtures() if g.n <= 12]
SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def relabel(g, perm):
    return CubicGraph(g.n, [(perm[u], perm[v]) for u, v in g.edges])


@st.composite
def relabeled(draw):
    g = draw(st.sampled_from(SMALL))
    perm = draw(st.permutations(range(g.n)))
    return g, relabel(g, perm)


@st.composite
def join_triples(draw):
    g = draw(st.sampled_from(SMALL))
    joins = join_masks(g)
    idx = st.integers(0, len(joins) - 1)
    return g, tuple(joins[draw(idx)] for _ in range(3))


@SETTINGS
@given(relabeled())
def test_invariants_survive_relabeling(pair):
    g, h = pair
    assert len(perfect_matching_masks(g)) == len(perfect_matching_masks(h))
    assert len(join_masks(h)) == 1 << (h.m - h.n + 1)
    assert oddness(g)[0] == oddness(h)[0]
    assert weak_oddness(g)[0] == weak_oddness(h)[0]
    assert minimize_core(g, 0).l2 == minimize_core(h, 0).l2
    assert min_line_fano_flow(g).k == min_line_fano_flow(h).k


@SETTINGS
@given(relabeled())
def test_graph6_roundtrip_relabeled(pair):
    _, h = pair
    line = write_graph6(h)
    assert parse_graph6(line) == h
    assert write_graph6(parse_graph6(line)) == line


@SETTINGS
@given(join_triples())
def test_triple_laws(data):
    g, (a, b, c) = data
    t = triple_from_masks(g, a, b, c)
    check_triple_invariants(t)
    e0, e1, e2, e3 = (len(p) for p in t.partition)
    assert e0 + t.sum_nj == e2 + 2 * e3
    assert t.l2 == 2 * e0 + 3 * t.sum_nj == 2 * e2 + 4 * e3 + t.sum_nj
    assert all(d in (0, 2) for d in degrees_in(g, t.partition[0].bits | t.partition[2].bits))
    bound = check_odd_component_bound(t)
    assert bound.holds
    if t.k == 0:
        assert t.l2 == 2 * e0 and t.l2 % 2 == 0


@SETTINGS
@given(join_triples())
def test_flow_from_triple_iff_no_common_edge(data):
    g, (a, b, c) = data
    t = triple_from_masks(g, a, b, c)
    try:
        flow = triple_to_flow(t)
    except FanoFlowError:
        assert a & b & c
    else:
        assert not a & b & c
        assert flow.k <= 4 + t.k


@SETTINGS
@given(st.sampled_from(SMALL), st.data())
def test_join_iff_even_complement(g, data):
    bits = data.draw(st.integers(0, g.full_mask))
    comp = g.full_mask & ~bits
    even = all(d in (0, 2) for d in degrees_in(g, comp))
    assert is_join_mask(g, bits) == even


@SETTINGS
@given(st.sampled_from(SMALL), st.sampled_from(SMALL), st.data())
def test_two_cut_connection_properties(g1, g2, data):
    e1 = data.draw(st.integers(0, g1.m - 1))
    e2 = data.draw(st.integers(0, g2.m - 1))
    crossed = data.draw(st.booleans())
    g = two_cut_connection(g1, e1, g2, e2, crossed)
    assert (g.n, g.m) == (g1.n + g2.n, g1.m + g2.m)
    assert not find_bridges(g)
    if g.n <= 14:
        assert bridges_by_deletion(g) == []


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([g for g in SMALL if g.n <= 6]), st.data())
def test_projection_of_expanded_joins(g, data):
    x = k4_expand(g)
    pms = perfect_matching_masks(x.expanded)
    bits = data.draw(st.sampled_from(pms))
    con = project_con(x, bits)
    assert con.is_perfect_matching
    assert con.bits in perfect_matching_masks(g)


@SETTINGS
@given(st.sampled_from(SMALL), st.data())
def test_edge_subset_matches_python_sets(g, data):
    xs = data.draw(st.sets(st.integers(0, g.m - 1)))
    ys = data.draw(st.sets(st.integers(0, g.m - 1)))
    a, b = EdgeSubset.from_edges(g, xs), EdgeSubset.from_edges(g, ys)
    assert set(a & b) == xs & ys
    assert set(a | b) == xs | ys
    assert set(a ^ b) == xs ^ ys
    assert set(a - b) == xs - ys
    assert len(a.complement()) == g.m - len(xs)
