from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from multicross.graph import (
    EdgeSet,
    complete_multipartite,
    edge_set_between,
    incident_edges,
    induced,
    parse_graph_spec,
    part_by_name,
)

sizes_st = st.lists(st.integers(1, 4), min_size=1, max_size=5)


def test_k5_and_k23():
    k5 = complete_multipartite([1, 1, 1, 1, 1])
    assert (len(k5.vertices), len(k5.edges)) == (5, 10)
    k23 = complete_multipartite([2, 3])
    assert (len(k23.vertices), len(k23.edges)) == (5, 6)


def test_edge_count_by_enumeration():
    sizes = [1, 2, 2, 4]
    expected = sum(sizes[i] * sizes[j] for i in range(4) for j in range(i + 1, 4))
    assert expected == 28
    assert len(complete_multipartite(sizes).edges) == expected


def test_default_ids_are_deterministic():
    g = complete_multipartite([1, 2])
    assert g.parts == (("p0v0",), ("p1v0", "p1v1"))
    assert g.edges == (("p0v0", "p1v0"), ("p0v0", "p1v1"))


def test_named_parts():
    g = complete_multipartite([1, 2, 2, 3], ["X", "Y", "U", "Z"])
    assert g.parts[3] == ("z1", "z2", "z3")
    assert part_by_name(g, "U") == 2


@pytest.mark.parametrize("bad", [[], [0], [2, 0, 1], [-1]])
def test_bad_sizes(bad):
    with pytest.raises(ValueError):
        complete_multipartite(bad)


def test_parse_graph_spec():
    assert [len(p) for p in parse_graph_spec("1,2,2,3").parts] == [1, 2, 2, 3]
    with pytest.raises(ValueError):
        parse_graph_spec("1,a")


def test_edge_set_between_examples():
    assert len(edge_set_between(complete_multipartite([1, 2, 2]), 1, 2)) == 4
    assert len(edge_set_between(complete_multipartite([1, 4, 3]), 0, 1)) == 4
    k23 = complete_multipartite([2, 3])
    assert edge_set_between(k23, 0, 1).ids == k23.edge_set


@pytest.mark.parametrize("i,j", [(0, 0), (0, 5), (-1, 1)])
def test_edge_set_between_errors(i, j):
    with pytest.raises(ValueError):
        edge_set_between(complete_multipartite([1, 2, 2]), i, j)


def test_incident_edges_examples():
    g = complete_multipartite([1, 1, 1, 1, 6], ["X", "Y", "S", "T", "Z"])
    assert len(incident_edges(g, "z3")) == 4
    g = complete_multipartite([1, 2, 2, 6], ["X", "Y", "U", "Z"])
    assert len(incident_edges(g, "z6")) == 5
    k5 = complete_multipartite([1] * 5)
    assert all(len(incident_edges(k5, v)) == 4 for v in k5.vertices)
    with pytest.raises(ValueError):
        incident_edges(k5, "nope")


def test_induced_examples():
    g = complete_multipartite([1, 1, 1, 2, 1], ["X", "Y", "S", "T", "Z"])
    h = induced(g, ["x1", "y1", "s1", "t1", "z1"])
    assert [len(p) for p in h.parts] == [1, 1, 1, 1, 1] and len(h.edges) == 10
    g = complete_multipartite([1, 2, 2, 3], ["X", "Y", "U", "Z"])
    h = induced(g, g.parts[0] + g.parts[1] + g.parts[2])
    assert h.names == ("X", "Y", "U") and len(h.edges) == 8
    same = induced(g, g.vertices)
    assert same.parts == g.parts and same.edges == g.edges
    with pytest.raises(ValueError):
        induced(g, ["q9"])


def test_edges_must_cross_parts():
    g = complete_multipartite([2, 1])
    from multicross.graph import PartitionedGraph

    with pytest.raises(ValueError):
        PartitionedGraph(g.parts, (("p0v0", "p0v1"),))
    with pytest.raises(ValueError):
        PartitionedGraph((("a",), ("a",)), ())


def test_edge_set_rejects_foreign_edges():
    g = complete_multipartite([1, 1])
    with pytest.raises(ValueError):
        EdgeSet(g, frozenset({("p0v0", "zz")}))
    other = complete_multipartite([1, 1])
    with pytest.raises(ValueError):
        g.all_edges() | other.all_edges()


@given(sizes_st)
def test_complete_edge_count(sizes):
    g = complete_multipartite(sizes)
    assert len(g.edges) == sum(sizes[i] * sizes[j] for i in range(len(sizes)) for j in range(i + 1, len(sizes)))
    assert len(set(g.edges)) == len(g.edges)
    assert all(g.part_index[u] != g.part_index[v] for u, v in g.edges)


@given(sizes_st, st.data())
def test_disjoint_union_sizes(sizes, data):
    g = complete_multipartite(sizes)
    edges = list(g.edges)
    mask = data.draw(st.lists(st.booleans(), min_size=len(edges), max_size=len(edges)))
    a = EdgeSet(g, frozenset(e for e, m in zip(edges, mask) if m))
    b = EdgeSet(g, frozenset(e for e, m in zip(edges, mask) if not m))
    assert a.isdisjoint(b)
    assert len(a | b) == len(a) + len(b) == len(edges)
    assert len(a & b) == 0 and (a - b).ids == a.ids


@given(st.lists(st.integers(1, 3), min_size=2, max_size=5), st.data())
def test_incident_meets_between_iff_in_part(sizes, data):
    g = complete_multipartite(sizes)
    i, j = data.draw(st.sampled_from([(i, j) for i in range(len(sizes)) for j in range(len(sizes)) if i != j]))
    v = data.draw(st.sampled_from(g.vertices))
    meets = not incident_edges(g, v).isdisjoint(edge_set_between(g, i, j))
    assert meets == (g.part_index[v] in (i, j))


@given(sizes_st, st.data())
@settings(max_examples=60)
def test_induced_idempotent_and_monotone(sizes, data):
    g = complete_multipartite(sizes)
    vs = data.draw(st.sets(st.sampled_from(g.vertices), min_size=1))
    ws = data.draw(st.sets(st.sampled_from(sorted(vs)), min_size=1))
    h = induced(g, vs)
    again = induced(h, vs)
    assert again.parts == h.parts and again.edges == h.edges
    assert set(induced(g, ws).edges) <= set(h.edges)
