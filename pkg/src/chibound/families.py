"""Hereditary part-classes: induced containment, membership, exact counts.

Every class here is closed under induced subgraphs.  Each one has two
independent descriptions: a structural predicate (``is_member``) and a finite
list of minimal forbidden induced subgraphs (``obstructions``), all on at most
four vertices.  The census engine uses the second; tests check they agree.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from math import comb

from .graph import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    iter_bits,
    path_graph,
    popcount,
)
from .invariants import girth


class FamilyClass(str, enum.Enum):
    CLIQUE = "Clique"
    STABLE_SET = "StableSet"
    DISJOINT_UNION_OF_CLIQUES = "DisjointUnionOfCliques"
    COMPLETE_MULTIPARTITE = "CompleteMultipartite"
    COMPLEMENT_OF_MATCHING = "ComplementOfMatching"
    CO_STARS_OR_TRIANGLES = "CoComponentsStarsOrTriangles"
    CO_CLIQUES_OR_STARS = "CoComponentsCliquesOrStars"
    CO_JOIN_CLIQUE_STABLE = "CoComponentsJoinCliqueStable"
    COMPLEMENT_OF_GIRTH5 = "ComplementOfGirth5"
    DISJOINT_UNION_OF_TWO_CLIQUES = "DisjointUnionOfTwoCliques"
    P4_FREE = "P4Free"

    @classmethod
    def parse(cls, tag) -> FamilyClass:
        if isinstance(tag, cls):
            return tag
        for member in cls:
            if tag in (member.value, member.name):
                return member
        raise ValueError(f"unknown family class {tag!r}")


# -- induced containment --------------------------------------------------------

def _search_order(h: Graph) -> list[int]:
    if h.n == 0:
        return []
    deg = h.degrees()
    order = [max(range(h.n), key=lambda v: (deg[v], -v))]
    placed = 1 << order[0]
    while len(order) < h.n:
        rest = [v for v in range(h.n) if not placed >> v & 1]
        v = max(rest, key=lambda v: (popcount(h.rows[v] & placed), deg[v], -v))
        order.append(v)
        placed |= 1 << v
    return order


class _Embedder:
    """Backtracking search for induced embeddings of ``h`` into host graphs."""

    def __init__(self, h: Graph, break_symmetry: bool = True):
        self.h = h
        self.k = h.n
        self.order = _search_order(h)
        pos = {x: i for i, x in enumerate(self.order)}
        self.pos = pos
        self.adj_prev: list[list[int]] = []
        self.non_prev: list[list[int]] = []
        for i, x in enumerate(self.order):
            self.adj_prev.append([j for j in range(i) if h.has_edge(x, self.order[j])])
            self.non_prev.append([j for j in range(i) if not h.has_edge(x, self.order[j])])
        self.later = [
            [(j, h.has_edge(x, self.order[j])) for j in range(i + 1, self.k)]
            for i, x in enumerate(self.order)
        ]
        self.hdeg = [h.degree(x) for x in self.order]
        # symmetry-breaking constraints image(pos a) < image(pos b), enforced at max(a, b)
        self.less_than: list[list[tuple[int, bool]]] = [[] for _ in range(self.k)]
        if break_symmetry and self.k > 1:
            self._build_symmetry_constraints()

    def _build_symmetry_constraints(self) -> None:
        h = self.h
        fixed: list[int] = []
        plain = _Embedder(h, break_symmetry=False)
        for i, x in enumerate(self.order):
            for y in range(h.n):
                if y == x or y in fixed:
                    continue
                pinned = {f: f for f in fixed}
                pinned[x] = y
                if plain.find(h, pinned) is not None:
                    a, b = i, self.pos[y]
                    # image(a) < image(b): checked when the later of the two is placed
                    if b > a:
                        self.less_than[b].append((a, True))
                    else:
                        self.less_than[a].append((b, False))
            fixed.append(x)

    def find(self, g: Graph, pinned: dict[int, int] | None = None) -> dict[int, int] | None:
        k = self.k
        if k == 0:
            return {}
        if k > g.n:
            return None
        grows = g.rows
        gn = g.n
        gdeg = g.degrees()
        feasible = []
        for i in range(k):
            dh = self.hdeg[i]
            mask = 0
            for v in range(gn):
                if gdeg[v] >= dh and gn - 1 - gdeg[v] >= k - 1 - dh:
                    mask |= 1 << v
            x = self.order[i]
            if pinned and x in pinned:
                mask &= 1 << pinned[x]
            feasible.append(mask)
        img = [0] * k
        later, less_than = self.later, self.less_than
        full = (1 << gn) - 1

        # cands[j] holds the images still possible for position j given the
        # vertices already placed; an empty future mask prunes immediately.
        def rec(i: int, cands: list[int]) -> bool:
            cand = cands[i]
            for j, above in less_than[i]:
                if above:
                    cand &= ~((2 << img[j]) - 1)
                else:
                    cand &= (1 << img[j]) - 1
            if i == k - 1:
                if cand:
                    img[i] = (cand & -cand).bit_length() - 1
                    return True
                return False
            while cand:
                low = cand & -cand
                v = low.bit_length() - 1
                img[i] = v
                nxt = cands[:]
                row = grows[v]
                non = full & ~row & ~low
                ok = True
                for j, adjacent in later[i]:
                    m = nxt[j] & (row if adjacent else non)
                    if not m:
                        ok = False
                        break
                    nxt[j] = m
                if ok and rec(i + 1, nxt):
                    return True
                cand ^= low
            return False

        if rec(0, feasible):
            return {self.order[i]: img[i] for i in range(k)}
        return None


@lru_cache(maxsize=256)
def _embedder(h: Graph) -> _Embedder:
    return _Embedder(h)


def find_induced(g: Graph, h: Graph) -> dict[int, int] | None:
    """An embedding ``x -> v`` of ``h`` as an induced subgraph of ``g``, or None."""
    return _embedder(h).find(g)


def contains_induced(g: Graph, h: Graph) -> bool:
    return find_induced(g, h) is not None


def is_induced_embedding(g: Graph, h: Graph, phi: dict[int, int]) -> bool:
    if sorted(phi) != list(range(h.n)) or len(set(phi.values())) != h.n:
        return False
    return all(
        h.has_edge(x, y) == g.has_edge(phi[x], phi[y])
        for x in range(h.n) for y in range(x + 1, h.n)
    )


def is_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or a.num_edges() != b.num_edges():
        return False
    if sorted(a.degrees()) != sorted(b.degrees()):
        return False
    return contains_induced(a, b)


# -- structural membership --------------------------------------------------------

def components(g: Graph) -> list[int]:
    """Connected components as vertex bitmasks, ordered by smallest vertex."""
    seen = 0
    out = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= g.rows[u]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        out.append(comp)
    return out


def _comp_degrees(g: Graph, comp: int) -> list[int]:
    return [popcount(g.rows[v] & comp) for v in iter_bits(comp)]


def _is_clique_comp(g: Graph, comp: int) -> bool:
    m = popcount(comp)
    return all(d == m - 1 for d in _comp_degrees(g, comp))


def _is_star_comp(g: Graph, comp: int) -> bool:
    m = popcount(comp)
    if m <= 2:
        return True
    degs = sorted(_comp_degrees(g, comp))
    return degs[-1] == m - 1 and all(d == 1 for d in degs[:-1])


def _is_triangle_comp(g: Graph, comp: int) -> bool:
    return popcount(comp) == 3 and _is_clique_comp(g, comp)


def _is_complete_split_comp(g: Graph, comp: int) -> bool:
    m = popcount(comp)
    low_degree = 0
    for v in iter_bits(comp):
        if popcount(g.rows[v] & comp) != m - 1:
            low_degree |= 1 << v
    return all(g.rows[v] & low_degree == 0 for v in iter_bits(low_degree))


def _is_disjoint_union_of_cliques(g: Graph) -> bool:
    closed = [r | 1 << v for v, r in enumerate(g.rows)]
    return all(closed[u] == closed[v] for u, v in g.edges())


def is_member(g: Graph, cls) -> bool:
    cls = FamilyClass.parse(cls)
    n = g.n
    if cls is FamilyClass.CLIQUE:
        return g.num_edges() == n * (n - 1) // 2
    if cls is FamilyClass.STABLE_SET:
        return g.num_edges() == 0
    if cls is FamilyClass.DISJOINT_UNION_OF_CLIQUES:
        return _is_disjoint_union_of_cliques(g)
    if cls is FamilyClass.COMPLETE_MULTIPARTITE:
        return _is_disjoint_union_of_cliques(g.complement())
    if cls is FamilyClass.COMPLEMENT_OF_MATCHING:
        return all(d <= 1 for d in g.complement().degrees())
    if cls is FamilyClass.DISJOINT_UNION_OF_TWO_CLIQUES:
        return _is_disjoint_union_of_cliques(g) and len(components(g)) <= 2
    if cls is FamilyClass.COMPLEMENT_OF_GIRTH5:
        return girth(g.complement()) >= 5
    if cls is FamilyClass.P4_FREE:
        return not contains_induced(g, path_graph(4))
    co = g.complement()
    comps = components(co)
    if cls is FamilyClass.CO_STARS_OR_TRIANGLES:
        return all(_is_star_comp(co, c) or _is_triangle_comp(co, c) for c in comps)
    if cls is FamilyClass.CO_CLIQUES_OR_STARS:
        return all(_is_star_comp(co, c) or _is_clique_comp(co, c) for c in comps)
    if cls is FamilyClass.CO_JOIN_CLIQUE_STABLE:
        return all(_is_complete_split_comp(co, c) for c in comps)
    raise ValueError(f"unknown family class {cls!r}")


# -- obstruction sets ---------------------------------------------------------------

def _paw() -> Graph:
    return Graph.build(4, [(0, 1), (1, 2), (0, 2), (0, 3)])


def _diamond() -> Graph:
    return Graph.build(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])


def obstructions(cls) -> list[Graph]:
    """Minimal forbidden induced subgraphs (all on <= 4 vertices)."""
    cls = FamilyClass.parse(cls)
    k2 = complete_graph(2)
    p3 = path_graph(3)
    co_p3 = disjoint_union(complete_graph(2), complete_graph(1))
    s3 = empty_graph(3)
    p4 = path_graph(4)
    c4 = cycle_graph(4)
    table = {
        FamilyClass.CLIQUE: [empty_graph(2)],
        FamilyClass.STABLE_SET: [k2],
        FamilyClass.DISJOINT_UNION_OF_CLIQUES: [p3],
        FamilyClass.COMPLETE_MULTIPARTITE: [co_p3],
        FamilyClass.COMPLEMENT_OF_MATCHING: [co_p3, s3],
        FamilyClass.DISJOINT_UNION_OF_TWO_CLIQUES: [p3, s3],
        FamilyClass.COMPLEMENT_OF_GIRTH5: [s3, c4.complement()],
        FamilyClass.P4_FREE: [p4],
        FamilyClass.CO_STARS_OR_TRIANGLES: [
            x.complement() for x in (p4, c4, _paw(), _diamond(), complete_graph(4))],
        FamilyClass.CO_CLIQUES_OR_STARS: [x.complement() for x in (p4, c4, _paw(), _diamond())],
        FamilyClass.CO_JOIN_CLIQUE_STABLE: [x.complement() for x in (p4, c4, _paw())],
    }
    return table[cls]


def is_member_by_obstructions(g: Graph, cls) -> bool:
    return not any(contains_induced(g, f) for f in obstructions(cls))


# -- exact counting -------------------------------------------------------------------

class NoClosedCount(ValueError):
    pass


COUNTABLE = (
    FamilyClass.CLIQUE,
    FamilyClass.STABLE_SET,
    FamilyClass.DISJOINT_UNION_OF_CLIQUES,
    FamilyClass.COMPLETE_MULTIPARTITE,
    FamilyClass.COMPLEMENT_OF_MATCHING,
    FamilyClass.CO_STARS_OR_TRIANGLES,
    FamilyClass.CO_CLIQUES_OR_STARS,
    FamilyClass.CO_JOIN_CLIQUE_STABLE,
    FamilyClass.DISJOINT_UNION_OF_TWO_CLIQUES,
)

# classes counted through connected components of the graph or of its complement
_COMPONENT_CLASSES = (
    FamilyClass.DISJOINT_UNION_OF_CLIQUES,
    FamilyClass.COMPLETE_MULTIPARTITE,
    FamilyClass.COMPLEMENT_OF_MATCHING,
    FamilyClass.CO_STARS_OR_TRIANGLES,
    FamilyClass.CO_CLIQUES_OR_STARS,
    FamilyClass.CO_JOIN_CLIQUE_STABLE,
)


def component_count(cls, m: int) -> int:
    """Labeled connected components on m vertices allowed in the (complement) structure."""
    cls = FamilyClass.parse(cls)
    if m < 1:
        return 0
    if cls in (FamilyClass.DISJOINT_UNION_OF_CLIQUES, FamilyClass.COMPLETE_MULTIPARTITE):
        return 1
    if cls is FamilyClass.COMPLEMENT_OF_MATCHING:
        return 1 if m <= 2 else 0
    if m <= 2:
        return 1
    if cls is FamilyClass.CO_STARS_OR_TRIANGLES:
        # star with a chosen centre, plus the triangle
        return m + (1 if m == 3 else 0)
    if cls is FamilyClass.CO_CLIQUES_OR_STARS:
        return m + 1
    if cls is FamilyClass.CO_JOIN_CLIQUE_STABLE:
        # the complete graph, or a stable side S with 2 <= |S| <= m-1
        return 2 ** m - m - 1
    raise NoClosedCount(f"{cls.value} is not component-structured")


_count_tables: dict[FamilyClass, list[int]] = {}


def component_structured_counts(cls, n: int) -> list[int]:
    """Counts on 0..n vertices via the first-component recurrence
    a(r) = sum_m C(r-1, m-1) * comp(m) * a(r-m)."""
    cls = FamilyClass.parse(cls)
    table = _count_tables.setdefault(cls, [1])
    comp = [0] + [component_count(cls, m) for m in range(1, n + 1)]
    while len(table) <= n:
        r = len(table)
        table.append(sum(comb(r - 1, m - 1) * comp[m] * table[r - m]
                         for m in range(1, r + 1) if comp[m]))
    return table


def family_count(cls, n: int) -> int:
    """Exact number of labeled graphs on {0..n-1} in the class."""
    cls = FamilyClass.parse(cls)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if cls in (FamilyClass.CLIQUE, FamilyClass.STABLE_SET):
        return 1
    if cls is FamilyClass.DISJOINT_UNION_OF_TWO_CLIQUES:
        return 1 if n == 0 else 2 ** (n - 1)
    if cls in _COMPONENT_CLASSES:
        return component_structured_counts(cls, n)[n]
    raise NoClosedCount(f"no closed count for {cls.value}")
