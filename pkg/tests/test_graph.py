import networkx as nx
import numpy as np
import pytest
from conftest import graphs, to_nx
from hypothesis import given
from hypothesis import strategies as st

from chibound.families import is_isomorphic
from chibound.graph import (
    Graph,
    complement,
    complete_graph,
    cycle_graph,
    decode_graph6,
    disjoint_union,
    empty_graph,
    encode_graph6,
    induced_subgraph,
    join,
    pair_index,
    path_graph,
    petersen_graph,
    spider_graph,
    star_graph,
)


def test_build_examples():
    c5 = Graph.build(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert c5.num_edges() == 5 and c5 == cycle_graph(5)
    assert Graph.build(3, []).num_edges() == 0
    assert Graph.build(4, [(0, 1), (0, 1), (1, 2)]).num_edges() == 2


def test_build_rejects_loops_and_range():
    with pytest.raises(ValueError):
        Graph.build(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph.build(3, [(0, 3)])


def test_complement_examples():
    assert complement(complete_graph(4)) == empty_graph(4)
    assert is_isomorphic(complement(cycle_graph(5)), cycle_graph(5))
    assert complement(complement(cycle_graph(7))) == cycle_graph(7)


def test_induced_examples():
    assert induced_subgraph(cycle_graph(5), [0, 1, 2, 3]) == path_graph(4)
    assert induced_subgraph(petersen_graph(), []).n == 0
    g = petersen_graph()
    assert induced_subgraph(g, range(g.n)) == g


def test_induced_relabels_in_label_order():
    g = path_graph(4)  # 0-1-2-3
    h = g.induced([3, 1, 2])
    assert h == path_graph(3)  # 1,2,3 -> 0,1,2


def test_code_bit_order():
    # pair (i<j) sits at bit j(j-1)/2 + i, the graph6 upper-triangle column order
    assert [pair_index(i, j) for j in range(1, 4) for i in range(j)] == list(range(6))
    g = Graph.build(4, [(0, 1)])
    assert g.code() == 1
    assert Graph.from_code(4, 1 << pair_index(2, 3)).has_edge(2, 3)


def test_graph6_known_strings():
    # reference encodings from networkx
    for g in (petersen_graph(), cycle_graph(5), path_graph(7), empty_graph(1), complete_graph(9)):
        ref = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert encode_graph6(g) == ref
        assert decode_graph6(ref) == g


def test_graph6_large_sizes():
    for n in (62, 63, 100, 258):
        g = path_graph(n)
        s = g.to_graph6()
        assert Graph.from_graph6(s) == g
        assert s == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()


def test_graph6_rejects_garbage():
    with pytest.raises(ValueError):
        decode_graph6("D?")  # body too short
    with pytest.raises(ValueError):
        decode_graph6("D?\x7f")
    with pytest.raises(ValueError):
        decode_graph6("")


@given(graphs(max_n=12))
def test_graph6_roundtrip(g):
    assert Graph.from_graph6(g.to_graph6()) == g


@given(graphs())
def test_complement_involution_and_edge_count(g):
    assert g.complement().complement() == g
    assert g.num_edges() + g.complement().num_edges() == g.n * (g.n - 1) // 2


@given(graphs())
def test_matrix_json_roundtrip(g):
    assert Graph.from_matrix(g.to_matrix()) == g
    assert Graph.from_json(g.to_json()) == g
    m = g.to_matrix()
    assert (m == m.T).all() and not np.diag(m).any()


@given(graphs(), st.randoms(use_true_random=False))
def test_relabel_preserves_edges(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert sorted(tuple(sorted((perm[u], perm[v]))) for u, v in g.edges()) == h.edges()


def test_union_and_join():
    u = disjoint_union(complete_graph(2), complete_graph(3))
    assert u.n == 5 and u.num_edges() == 4
    j = join(empty_graph(2), empty_graph(3))
    assert j.num_edges() == 6 and not j.has_edge(0, 1)


def test_named_graphs():
    assert star_graph(3).degrees() == [3, 1, 1, 1]
    sp = spider_graph([2, 2, 1])
    assert sp.n == 6 and sp.num_edges() == 5 and sp.degree(0) == 3
    assert petersen_graph().degrees() == [3] * 10
    with pytest.raises(ValueError):
        cycle_graph(2)
