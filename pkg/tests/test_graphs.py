from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from cffcover.errors import BudgetError, DomainError, ParseError, UnsupportedError
from cffcover.graphs import (
    LabeledGraph,
    bi_intersection,
    build_graph,
    complete,
    has_c4,
    induced_matching,
    is_c4_free,
    kminus,
    max_degree,
    max_induced_matching,
    max_matching,
    min_vertex_cover,
    subset_graph,
    vertex_cover_number,
)

EDGELESS = LabeledGraph([(1,), (2,)], [], 1)
SINGLE = LabeledGraph([(1,), (2,)], [(0, 1)], 1)


@st.composite
def bipartite_graphs(draw, max_side=5):
    a = draw(st.integers(1, max_side))
    b = draw(st.integers(1, max_side))
    pairs = [(i, a + j) for i in range(a) for j in range(b)]
    edges = [e for e in pairs if draw(st.booleans())]
    return LabeledGraph([(i,) for i in range(a)] + [(j,) for j in range(b)], edges, a)


def brute_matching(g):
    for k in range(len(g.edges), 0, -1):
        for sub in combinations(g.edges, k):
            verts = [v for e in sub for v in e]
            if len(set(verts)) == 2 * k:
                return k
    return 0


def brute_induced(g):
    best = 0
    for k in range(1, len(g.edges) + 1):
        found = False
        for sub in combinations(g.edges, k):
            verts = [v for e in sub for v in e]
            if len(set(verts)) < 2 * k:
                continue
            if all(not g.has_edge(x, y) for e, f in combinations(sub, 2) for x in e for y in f):
                found = True
                break
        if not found:
            break
        best = k
    return best


def brute_c4(g):
    n = g.n_vertices
    return any(len(set(g.neighbors(u)) & set(g.neighbors(v))) >= 2 for u, v in combinations(range(n), 2))


def test_builder_examples():
    g = bi_intersection(3, 1, 1)
    assert (len(g.left), len(g.right), g.n_edges) == (3, 3, 6)
    g = bi_intersection(4, 2, 1)
    assert (len(g.left), len(g.right), g.n_edges) == (6, 4, 12)
    g = complete(3)
    assert (g.n_vertices, g.n_edges, g.is_bipartite) == (3, 3, False)


def test_build_graph_descriptors():
    assert build_graph("it:4,2,1").edge_key() == bi_intersection(4, 2, 1).edge_key()
    assert build_graph("kminus:3").family == "kminus:3"
    assert build_graph("subset:5,2,3").n_edges == comb(5, 3) * comb(3, 2)
    for bad in ("it:4,1,2", "it:17,2,1", "kminus:0", "wheel:5", "it:4,2"):
        with pytest.raises(DomainError):
            build_graph(bad)


def test_graph_invariants_enforced():
    with pytest.raises(DomainError):
        LabeledGraph([(1,), (2,)], [(0, 0)])
    with pytest.raises(DomainError):
        LabeledGraph([(1,), (2,), (3,)], [(1, 2)], 1)
    with pytest.raises(DomainError):
        LabeledGraph([(1,), (1,)], [])


@pytest.mark.parametrize("g,v", [(bi_intersection(4, 2, 1), 4), (bi_intersection(5, 2, 2), 10), (kminus(3), 3)])
def test_matching_examples(g, v):
    assert max_matching(g) == v
    assert vertex_cover_number(g) == v


def test_vertex_cover_edgeless():
    assert vertex_cover_number(EDGELESS) == 0


def test_matching_requires_bipartite():
    with pytest.raises(UnsupportedError):
        max_matching(complete(4))


@given(bipartite_graphs())
def test_konig(g):
    m = max_matching(g)
    assert m == brute_matching(g)
    cover = min_vertex_cover(g)
    assert len(cover) == m
    assert all(u in cover or v in cover for u, v in g.edges)


@pytest.mark.parametrize("g,v", [(bi_intersection(4, 2, 1), 3), (bi_intersection(4, 2, 2), 6), (SINGLE, 1), (EDGELESS, 0)])
def test_induced_matching_examples(g, v):
    assert max_induced_matching(g) == v


@given(bipartite_graphs(max_side=4))
def test_induced_matching_oracle(g):
    assert max_induced_matching(g) == brute_induced(g)
    chosen = induced_matching(g)
    assert len(chosen) == max_induced_matching(g)
    for e, f in combinations(chosen, 2):
        assert not any(g.has_edge(x, y) or x == y for x in e for y in f)


def test_induced_matching_cap():
    with pytest.raises(BudgetError):
        max_induced_matching(bi_intersection(9, 3, 3))


def test_bollobas_on_it():
    for t in range(2, 8):
        for r in range(1, 6):
            for w in range(1, r + 1):
                if r + w <= min(6, t):
                    assert max_induced_matching(bi_intersection(t, r, w)) == comb(r + w, r)


@pytest.mark.parametrize("g,v", [(bi_intersection(5, 2, 2), True), (kminus(4), False), (bi_intersection(4, 2, 2), True)])
def test_c4_examples(g, v):
    assert is_c4_free(g) == v
    assert has_c4(g) != v


@given(bipartite_graphs())
def test_c4_oracle(g):
    assert has_c4(g) == brute_c4(g)


@pytest.mark.parametrize("g,v", [(bi_intersection(4, 2, 1), 3), (kminus(5), 4), (EDGELESS, 0)])
def test_max_degree(g, v):
    assert max_degree(g) == v


def test_subset_isomorphism():
    for t in range(2, 8):
        for r in range(1, t):
            for w in range(1, r + 1):
                if r + w > t:
                    continue
                g = bi_intersection(t, r, w)
                s = subset_graph(t, r, t - w)
                full = set(range(1, t + 1))
                mapped = {
                    (g.labels[u], tuple(sorted(full - set(g.labels[v])))) for u, v in g.edges
                }
                expect = {(s.labels[u], s.labels[v]) for u, v in s.edges}
                assert mapped == expect


def test_it11_is_kminus():
    for t in range(1, 8):
        g, k = bi_intersection(t, 1, 1), kminus(t)
        assert {(g.labels[u], g.labels[v]) for u, v in g.edges} == {(k.labels[u], k.labels[v]) for u, v in k.edges}


def test_degree_regularity():
    for t, r, w in [(5, 2, 1), (6, 2, 2), (7, 3, 2)]:
        g = bi_intersection(t, r, w)
        assert {g.degree(v) for v in g.left} == {comb(t - r, w)}
        assert {g.degree(v) for v in g.right} == {comb(t - w, r)}


@pytest.mark.parametrize("g", [bi_intersection(4, 2, 1), complete(4), kminus(3), EDGELESS])
def test_serialization_round_trip(g):
    h = LabeledGraph.loads(g.dumps())
    assert (h.labels, h.edges, h.n_left, h.family) == (g.labels, g.edges, g.n_left, g.family)


def test_bad_graph_document():
    with pytest.raises(ParseError):
        LabeledGraph.loads("{not json")
    with pytest.raises(ParseError):
        LabeledGraph.loads('{"kind": "bipartite", "left": [[1]], "right": [[1]], "edges": [[0, 3]]}')
