import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chibound.graph import Graph, complete_graph, empty_graph
from chibound.invariants import Coloring, clique_number
from chibound.merge import (
    AuxiliaryBigraph,
    build_auxiliary,
    hall_violator_exhaustive,
    is_hall_violator,
    merge_all,
    merge_pair,
    perfect_matching,
    union_coloring,
)
from chibound.partitions import VertexPartition
from chibound.sampling import (
    Pattern,
    derive_seed,
    eqi_partition,
    extend_pattern,
    sample_pattern,
)


def singletons(k: int) -> Coloring:
    return Coloring(tuple(range(k)), k)


def bipartite_between(a: int, b: int, cross: bool) -> Graph:
    """Cliques on [0,a) and [a,a+b); all cross edges when ``cross``."""
    edges = [(u, v) for v in range(a + b) for u in range(v) if (u < a) == (v < a)]
    if cross:
        edges += [(u, v) for u in range(a) for v in range(a, a + b)]
    return Graph.build(a + b, edges)


@st.composite
def bigraphs(draw, max_k=12):
    k = draw(st.integers(1, max_k))
    rows = [draw(st.integers(0, 2 ** k - 1)) for _ in range(k)]
    return AuxiliaryBigraph.from_rows(rows)


def test_auxiliary_without_cross_edges_is_complete():
    g = bipartite_between(3, 3, cross=False)
    aux = build_auxiliary(singletons(3), singletons(3), g, ([0, 1, 2], [3, 4, 5]), 3)
    assert aux.num_edges() == 9


def test_auxiliary_with_all_cross_edges():
    g = bipartite_between(3, 3, cross=True)
    aux = build_auxiliary(singletons(3), singletons(3), g, ([0, 1, 2], [3, 4, 5]), 5)
    for i, j in aux.edges():
        assert not aux.left_classes[i] or not aux.right_classes[j]
    assert aux.size == 5


def test_auxiliary_edge_density_singletons():
    dens = []
    for s in range(40):
        pat = Pattern(VertexPartition.from_blocks([range(10), range(10, 20)]),
                      (complete_graph(10), complete_graph(10)))
        g = extend_pattern(pat, s)
        aux = build_auxiliary(singletons(10), singletons(10), g, pat.partition.blocks, 10)
        dens.append(aux.num_edges() / 100)
    assert abs(sum(dens) / len(dens) - 0.5) < 0.05


def test_auxiliary_errors():
    g = bipartite_between(2, 2, cross=False)
    with pytest.raises(ValueError):
        build_auxiliary(singletons(2), singletons(2), g, ([0, 1], [2, 3]), 1)
    with pytest.raises(ValueError):
        build_auxiliary(Coloring((0, 0), 1), singletons(2), g, ([0, 1], [2, 3]), 2)


def test_matching_examples():
    k = 5
    full = AuxiliaryBigraph.from_rows([2 ** k - 1] * k)
    assert perfect_matching(full).perfect
    iso = AuxiliaryBigraph.from_rows([0, 0b11, 0b11])
    res = perfect_matching(iso)
    assert not res.perfect and res.violator == frozenset({0})


@given(bigraphs())
def test_matching_agrees_with_hall_oracle(aux):
    res = perfect_matching(aux)
    assert res.perfect == (hall_violator_exhaustive(aux) is None)
    if res.perfect:
        assert sorted(res.match) == list(range(aux.size))
        assert all(aux.adj[i] >> j & 1 for i, j in enumerate(res.match))
    else:
        assert is_hall_violator(aux, res.violator)


def test_merge_pair_examples():
    g = bipartite_between(4, 4, cross=False)
    out = merge_pair(singletons(4), singletons(4), g, ([0, 1, 2, 3], [4, 5, 6, 7]), 4)
    assert out.success and out.coloring.class_sizes == (2, 2, 2, 2)
    g = bipartite_between(4, 4, cross=True)
    out = merge_pair(singletons(4), singletons(4), g, ([0, 1, 2, 3], [4, 5, 6, 7]), 4)
    assert not out.success and out.violator


def test_merge_all_single_block_unchanged():
    c = Coloring((0, 1, 0), 2)
    pat = Pattern(VertexPartition.from_blocks([[0, 1, 2]]), (Graph.build(3, [(0, 1)]),))
    out = merge_all([c], pat, pat.parts[0], 2, 2)
    assert out.success and out.coloring == c


def test_merge_all_three_blocks_no_cross_edges():
    k = 4
    blocks = [list(range(i * k, (i + 1) * k)) for i in range(3)]
    edges = [(u, v) for b in blocks for v in b for u in b if u < v]
    g = Graph.build(3 * k, edges)
    pat = Pattern(VertexPartition.from_blocks(blocks), tuple(complete_graph(k) for _ in blocks))
    out = merge_all([singletons(k)] * 3, pat, g, k, 1)
    assert out.success and out.coloring.max_class_size <= 4
    assert out.coloring.is_proper(g.induced(out.block))
    assert len(out.trace) == 2


def test_merge_all_failure_reports_stage():
    k = 3
    g = complete_graph(3 * k)
    blocks = [list(range(i * k, (i + 1) * k)) for i in range(3)]
    pat = Pattern(VertexPartition.from_blocks(blocks), tuple(complete_graph(k) for _ in blocks))
    out = merge_all([singletons(k)] * 3, pat, g, k, 1)
    assert not out.success and out.stage == 1
    assert out.trace_json()["failedStage"] == 1


def test_merge_all_rejects_oversized_classes():
    pat = Pattern(VertexPartition.from_blocks([[0, 1], [2]]), (empty_graph(2), empty_graph(1)))
    with pytest.raises(ValueError):
        merge_all([Coloring((0, 0), 1), Coloring((0,), 1)], pat, empty_graph(3), 2, 1)


def test_clique_duc_pattern_success_rate():
    from chibound.experiments import color_part
    cert = ("Clique", "DisjointUnionOfCliques")
    ok = 0
    trials = 500
    for t in range(trials):
        part = eqi_partition(80, 2, seed=derive_seed(4, t, 0))
        pat = sample_pattern(part, cert, derive_seed(4, t, 1))
        g = extend_pattern(pat, derive_seed(4, t, 2))
        cols = [color_part(f, p) for f, p in zip(cert, pat.parts)]
        out = merge_all(cols, pat, g, clique_number(g), 2)
        ok += out.success
    assert ok / trials >= 0.9


def test_union_coloring():
    u = union_coloring([Coloring((0, 1, 2), 3), Coloring((0, 1, 2, 3), 4)])
    assert u.num_colors == 7 and u.n == 7
    c = Coloring((1, 0), 2)
    assert union_coloring([c]) == c
    rnd = random.Random(0)
    g = Graph.build(6, [(u, v) for v in range(6) for u in range(v) if rnd.random() < 0.7])
    blocks = [[0, 3, 5], [1, 2, 4]]
    cols = [Coloring(tuple(range(3)), 3), Coloring(tuple(range(3)), 3)]
    assert union_coloring(cols, blocks).is_proper(g)
