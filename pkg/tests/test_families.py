import itertools

import pytest
from conftest import graphs
from hypothesis import given

from chibound.families import (
    COUNTABLE,
    FamilyClass,
    NoClosedCount,
    component_count,
    components,
    contains_induced,
    family_count,
    find_induced,
    is_induced_embedding,
    is_isomorphic,
    is_member,
    is_member_by_obstructions,
    obstructions,
)
from chibound.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    num_pairs,
    path_graph,
    perfect_matching_graph,
    petersen_graph,
    star_graph,
)


def brute_contains(g: Graph, h: Graph) -> bool:
    for sub in itertools.combinations(range(g.n), h.n):
        for perm in itertools.permutations(sub):
            if all(h.has_edge(x, y) == g.has_edge(perm[x], perm[y])
                   for x in range(h.n) for y in range(x + 1, h.n)):
                return True
    return False


def test_containment_examples():
    assert contains_induced(cycle_graph(5), path_graph(4))
    assert not contains_induced(complete_graph(4), cycle_graph(4))
    assert contains_induced(petersen_graph(), cycle_graph(5))
    assert not contains_induced(petersen_graph(), cycle_graph(4))
    assert contains_induced(path_graph(3), empty_graph(0))


@given(graphs(max_n=7), graphs(min_n=1, max_n=4))
def test_containment_matches_brute_force(g, h):
    phi = find_induced(g, h)
    assert (phi is not None) == brute_contains(g, h)
    if phi is not None:
        assert is_induced_embedding(g, h, phi)


def test_isomorphism():
    assert is_isomorphic(cycle_graph(5), cycle_graph(5).complement())
    assert not is_isomorphic(path_graph(4), star_graph(3))
    assert is_isomorphic(path_graph(4), path_graph(4).complement())


def test_membership_examples():
    assert is_member(perfect_matching_graph(6).complement(), FamilyClass.COMPLEMENT_OF_MATCHING)
    assert not is_member(cycle_graph(5), FamilyClass.DISJOINT_UNION_OF_CLIQUES)
    assert is_member(petersen_graph().complement(), FamilyClass.COMPLEMENT_OF_GIRTH5)
    assert is_member(star_graph(4).complement(), "CoComponentsStarsOrTriangles")
    assert not is_member(path_graph(4), FamilyClass.P4_FREE)


def test_parse():
    assert FamilyClass.parse("Clique") is FamilyClass.CLIQUE
    assert FamilyClass.parse("STABLE_SET") is FamilyClass.STABLE_SET
    with pytest.raises(ValueError):
        FamilyClass.parse("Nope")


def test_obstructions_are_small_and_excluded():
    for cls in FamilyClass:
        for f in obstructions(cls):
            assert f.n <= 4
            assert not is_member(f, cls)
            # minimality: deleting any vertex lands back in the class
            for v in range(f.n):
                assert is_member(f.induced([u for u in range(f.n) if u != v]), cls)


@pytest.mark.parametrize("cls", list(FamilyClass), ids=lambda c: c.value)
def test_structure_agrees_with_obstructions_exhaustively(cls):
    for n in range(6):
        for code in range(2 ** num_pairs(n)):
            g = Graph.from_code(n, code)
            assert is_member(g, cls) == is_member_by_obstructions(g, cls), (n, code)


@pytest.mark.parametrize("cls", COUNTABLE, ids=lambda c: c.value)
def test_family_count_matches_enumeration(cls):
    for n in range(6):
        brute = sum(is_member(Graph.from_code(n, c), cls) for c in range(2 ** num_pairs(n)))
        assert family_count(cls, n) == brute, n


def test_family_count_anchors():
    assert family_count(FamilyClass.COMPLEMENT_OF_MATCHING, 4) == 10
    assert family_count(FamilyClass.DISJOINT_UNION_OF_CLIQUES, 4) == 15
    assert [family_count(FamilyClass.DISJOINT_UNION_OF_CLIQUES, n) for n in range(8)] == \
        [1, 1, 2, 5, 15, 52, 203, 877]
    assert [family_count(FamilyClass.COMPLEMENT_OF_MATCHING, n) for n in range(8)] == \
        [1, 1, 2, 4, 10, 26, 76, 232]
    assert all(family_count(FamilyClass.CLIQUE, n) == 1 for n in range(20))
    assert family_count(FamilyClass.DISJOINT_UNION_OF_CLIQUES, 1000) > 0


def test_component_counts_small():
    # a 2-vertex component is an edge in every case: one labeled choice
    for cls in (FamilyClass.CO_STARS_OR_TRIANGLES, FamilyClass.CO_CLIQUES_OR_STARS,
                FamilyClass.CO_JOIN_CLIQUE_STABLE):
        assert component_count(cls, 2) == 1
    assert component_count(FamilyClass.CO_STARS_OR_TRIANGLES, 3) == 4
    assert component_count(FamilyClass.COMPLEMENT_OF_MATCHING, 3) == 0


def test_no_closed_count():
    with pytest.raises(NoClosedCount):
        family_count(FamilyClass.P4_FREE, 4)
    with pytest.raises(NoClosedCount):
        family_count(FamilyClass.COMPLEMENT_OF_GIRTH5, 4)


@given(graphs(max_n=9))
def test_components_partition_vertices(g):
    comps = components(g)
    union = 0
    for c in comps:
        assert union & c == 0
        union |= c
    assert union == g.full_mask
