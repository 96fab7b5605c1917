"""Witnessing partitions.

Conventions: blocks of an (s, c)-partition may be empty, stable blocks come
before clique blocks, and partitions of V(H) are enumerated as t-ary strings
in lexicographic order, so the first witness returned is deterministic.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import cache, lru_cache
from typing import NamedTuple

from .families import (
    FamilyClass,
    contains_induced,
    is_isomorphic,
    is_member,
)
from .graph import Graph, cycle_graph, iter_bits, path_graph
from .invariants import independence_number, maximum_matching

DEFAULT_MU = Fraction(1, 9)


class PartitionShape(NamedTuple):
    s: int  # stable blocks
    c: int  # clique blocks


@dataclass(frozen=True)
class VertexPartition:
    """Ordered partition of {0..n-1}; blocks are sorted tuples."""

    n: int
    blocks: tuple[tuple[int, ...], ...]
    mu: Fraction = DEFAULT_MU

    def __post_init__(self):
        seen = [v for b in self.blocks for v in b]
        if sorted(seen) != list(range(self.n)):
            raise ValueError("blocks must be disjoint and cover 0..n-1")
        object.__setattr__(self, "blocks", tuple(tuple(sorted(b)) for b in self.blocks))

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]], mu=DEFAULT_MU) -> VertexPartition:
        return cls(sum(len(b) for b in blocks), tuple(tuple(b) for b in blocks), Fraction(mu))

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def max_deviation(self) -> float:
        if not self.blocks:
            return 0.0
        mean = self.n / self.k
        return max(abs(s - mean) for s in self.sizes)

    @property
    def is_eqi(self) -> bool:
        """Every block size is within n^(1-mu) of the mean block size."""
        return self.max_deviation() <= self.n ** (1 - float(self.mu))

    def masks(self) -> list[int]:
        out = []
        for b in self.blocks:
            m = 0
            for v in b:
                m |= 1 << v
            out.append(m)
        return out

    def cross_pairs(self) -> int:
        """Number of vertex pairs lying in different blocks."""
        return (self.n * self.n - sum(s * s for s in self.sizes)) // 2

    def to_json(self) -> dict:
        return {"n": self.n, "blocks": [list(b) for b in self.blocks], "mu": str(self.mu),
                "eqi": self.is_eqi}


@dataclass(frozen=True)
class Certificate:
    families: tuple[FamilyClass, ...]

    @classmethod
    def of(cls, *families) -> Certificate:
        return cls(tuple(FamilyClass.parse(f) for f in families))

    def __len__(self) -> int:
        return len(self.families)

    def to_json(self) -> list[str]:
        return [f.value for f in self.families]


# -- (s, c)-partitions -------------------------------------------------------------

def can_partition(h: Graph, shape) -> VertexPartition | None:
    """Partition V(h) into ``shape.s`` stable sets then ``shape.c`` cliques, if possible."""
    s, c = shape
    t = s + c
    n = h.n
    rows = h.rows
    blocks = [0] * t
    assign = [0] * n

    def ok(v: int, b: int) -> bool:
        if b < s:
            return rows[v] & blocks[b] == 0
        return blocks[b] & ~rows[v] == 0

    def rec(v: int) -> bool:
        if v == n:
            return True
        bit = 1 << v
        for b in range(t):
            if ok(v, b):
                blocks[b] |= bit
                assign[v] = b
                if rec(v + 1):
                    return True
                blocks[b] ^= bit
        return False

    if not rec(0):
        return None
    return VertexPartition(n, tuple(tuple(iter_bits(m)) for m in blocks))


@lru_cache(maxsize=512)
def wpn(h: Graph) -> tuple[int, tuple[PartitionShape, ...]]:
    """Witnessing partition number of h and the failing shapes at that level.

    With n = |V(h)|, every shape with s + c >= n succeeds (singletons), so the
    search runs t = n-1, n-2, ..., 0 and stops at the first level with a failure.
    """
    if h.n < 1:
        raise ValueError("wpn needs at least one vertex")
    for t in range(h.n - 1, -1, -1):
        failing = tuple(
            PartitionShape(s, t - s) for s in range(t + 1)
            if can_partition(h, (s, t - s)) is None
        )
        if failing:
            return t, failing
    raise AssertionError("the empty shape always fails on a nonempty graph")


def wpn_report(h: Graph) -> dict:
    t, failing = wpn(h)
    return {"wpn": t, "failingShapes": [[s, c] for s, c in failing]}


# -- witnessing and certified partitions ------------------------------------------------

def _piecewise_partition_exists(n: int, t: int, fits) -> bool:
    """Is there an ordered partition (W_1..W_t) of {0..n-1} with fits(i, W_i) for all i?

    ``fits`` must be hereditary in W, which lets a failing partial block prune.
    """
    blocks = [0] * t

    def rec(v: int) -> bool:
        if v == n:
            return True
        bit = 1 << v
        for i in range(t):
            blocks[i] |= bit
            if fits(i, blocks[i]) and rec(v + 1):
                blocks[i] ^= bit
                return True
            blocks[i] ^= bit
        return False

    return rec(0)


def verify_witnessing(g: Graph, p: VertexPartition, h: Graph) -> bool:
    """True iff no partition W of V(h) has every h[W_i] induced in g[V_i]."""
    t, _ = wpn(h)
    if p.k != t:
        raise ValueError(f"partition has {p.k} blocks but wpn(h) = {t}")
    parts = [g.induced(b) for b in p.blocks]
    memo: dict[tuple[int, int], bool] = {}

    def fits(i: int, w: int) -> bool:
        key = (i, w)
        if key not in memo:
            memo[key] = contains_induced(parts[i], h.induced_mask(w))
        return memo[key]

    return not _piecewise_partition_exists(h.n, t, fits)


def excludes_h(cert: Certificate, h: Graph) -> bool:
    """Condition (ii): no ordered partition of V(h) puts piece i in family i."""
    memo: dict[tuple[int, int], bool] = {}

    def fits(i: int, w: int) -> bool:
        key = (i, w)
        if key not in memo:
            memo[key] = is_member(h.induced_mask(w), cert.families[i])
        return memo[key]

    return not _piecewise_partition_exists(h.n, len(cert), fits)


def check_certificate(g: Graph, p: VertexPartition, cert: Certificate, h: Graph) -> bool:
    if len(cert) != p.k:
        raise ValueError(f"certificate has {len(cert)} families for {p.k} blocks")
    blocks_ok = all(is_member(g.induced(b), f) for b, f in zip(p.blocks, cert.families))
    return blocks_ok and excludes_h(cert, h)


def has_certified_partition(g: Graph, certificates: Sequence[Sequence]) -> bool:
    """Does V(g) split into blocks lying in the families of some certificate?"""
    for cert in certificates:
        fams = [FamilyClass.parse(f) for f in cert]

        def fits(i: int, w: int, fams=fams) -> bool:
            return is_member(g.induced_mask(w), fams[i])

        if _piecewise_partition_exists(g.n, len(fams), fits):
            return True
    return False


# -- nontriviality -------------------------------------------------------------------------

_SHAPES = {"bipartite": (2, 0), "split": (1, 1), "cobipartite": (0, 2)}


@cache
def _excluded_kinds(fam: FamilyClass, max_n: int) -> dict[str, bool | None]:
    found: dict[str, bool | None] = {k: None for k in _SHAPES}
    for n in range(1, max_n + 1):
        for code in range(2 ** (n * (n - 1) // 2)):
            g = Graph.from_code(n, code)
            if is_member(g, fam):
                continue
            for kind, shape in _SHAPES.items():
                if found[kind] is None and can_partition(g, shape) is not None:
                    found[kind] = True
            if all(found.values()):
                return found
    return found


def certificate_nontriviality(cert: Certificate, max_n: int = 6) -> list[dict]:
    """Per family: whether a bipartite, split and co-bipartite non-member exists.

    ``None`` means none was found among graphs with at most ``max_n`` vertices
    ("not established"), not that none exists.
    """
    return [{"family": f.value, **_excluded_kinds(f, max_n)} for f in cert.families]


# -- F(H, s, c) ------------------------------------------------------------------------------

def minimal_completions(h: Graph, shape) -> list[Graph]:
    """Minimal graphs h[U] such that V(h) minus U splits into s stable sets and c cliques.

    Minimal under induced containment, one representative per isomorphism class.
    """
    full = h.full_mask
    cands: list[Graph] = []
    for u in range(1 << h.n):
        if can_partition(h.induced_mask(full ^ u), shape) is None:
            continue
        f = h.induced_mask(u)
        if not any(is_isomorphic(f, x) for x in cands):
            cands.append(f)
    cands.sort(key=lambda f: (f.n, f.num_edges(), f.to_graph6()))
    minimal = []
    for f in cands:
        if not any(x.n < f.n and contains_induced(f, x) for x in cands):
            minimal.append(f)
    return minimal


def criticality_diagnostic(h: Graph, n_max: int, workers: int = 1, bound: int = 8) -> dict:
    """For each shape with s + c = wpn(h) - 1: F(h, s, c) and |Forb(F)_n| for n <= n_max."""
    from .census import enumerate_graphs

    t, _ = wpn(h)
    if t < 2:
        raise ValueError(f"criticality diagnostic needs wpn >= 2, got {t}")
    if n_max > bound:
        raise ValueError(f"n_max={n_max} exceeds the census bound {bound}")
    shapes = []
    for s in range(t):
        c = t - 1 - s
        fam = minimal_completions(h, (s, c))
        counts = [enumerate_graphs(n, fam, workers=workers, bound=bound).passing
                  for n in range(1, n_max + 1)]
        shapes.append({"s": s, "c": c, "completions": [f.to_graph6() for f in fam],
                       "counts": counts})
    return {"h": h.to_graph6(), "wpn": t, "shapes": shapes}


# -- certificates for named H -----------------------------------------------------------------

K = FamilyClass.CLIQUE
S = FamilyClass.STABLE_SET


def is_tree(h: Graph) -> bool:
    from .families import components
    return h.n >= 1 and h.num_edges() == h.n - 1 and len(components(h)) == 1


def is_subdivided_star(h: Graph) -> bool:
    """A star with every edge subdivided once (centre of degree d, n = 2d + 1)."""
    if not is_tree(h) or h.n < 3 or h.n % 2 == 0:
        return False
    d = (h.n - 1) // 2
    for c in range(h.n):
        if h.degree(c) != d:
            continue
        mids = list(iter_bits(h.rows[c]))
        if all(h.degree(m) == 2 for m in mids):
            leaves = [w for m in mids for w in iter_bits(h.rows[m]) if w != c]
            if all(h.degree(w) == 1 for w in leaves):
                return True
    return False


def _cycle_length(h: Graph) -> int | None:
    if h.n >= 3 and all(d == 2 for d in h.degrees()) and is_isomorphic(h, cycle_graph(h.n)):
        return h.n
    return None


def known_certificates(h: Graph) -> list[Certificate]:
    """Certificate sequences for typical H-free graphs, for H a cycle or a tree.

    Cycles: C3 (two stable sets), C4 (clique + stable set), C5 (both shapes of
    the clique/disjoint-union-of-cliques result), C6 (stable set + complement
    of girth five), odd C_k >= 7 and even C_k >= 8 per the cycle structure
    results.  Trees: items for trees without a perfect matching, subdivided
    stars and P6 are applied directly; for other trees with a perfect matching
    the first of the remaining structures that certifies H-freeness is used.
    """
    k = _cycle_length(h)
    if k is not None:
        if k == 3:
            return [Certificate.of(S, S)]
        if k == 4:
            return [Certificate.of(K, S)]
        if k == 5:
            return [Certificate.of(K, FamilyClass.DISJOINT_UNION_OF_CLIQUES),
                    Certificate.of(S, FamilyClass.COMPLETE_MULTIPARTITE)]
        if k == 6:
            return [Certificate.of(S, FamilyClass.COMPLEMENT_OF_GIRTH5)]
        if k == 7:
            return [Certificate.of(K, K, K), Certificate.of(K, K, S)]
        if k % 2 == 1:
            return [Certificate.of(*[K] * ((k - 1) // 2))]
        if k == 8:
            return [Certificate.of(K, K, FamilyClass.CO_JOIN_CLIQUE_STABLE)]
        if k == 10:
            return [Certificate.of(K, K, K, FamilyClass.CO_CLIQUES_OR_STARS)]
        return [Certificate.of(*[K] * ((k - 4) // 2), FamilyClass.CO_STARS_OR_TRIANGLES)]

    if not is_tree(h):
        raise ValueError("certificates are known only for cycles and trees")
    if contains_induced(path_graph(4), h):
        raise ValueError("H is an induced subgraph of P4: every H-free graph is perfect")
    alpha = independence_number(h)
    perfect_matching = 2 * len(maximum_matching(h)) == h.n
    if not perfect_matching:
        certs = [Certificate.of(*[K] * (alpha - 1))]
        if is_subdivided_star(h):
            certs.append(Certificate.of(*[K] * (alpha - 2), S))
        return certs
    if is_isomorphic(h, path_graph(6)):
        return [Certificate.of(K, FamilyClass.CO_JOIN_CLIQUE_STABLE)]
    cm = FamilyClass.COMPLEMENT_OF_MATCHING
    candidates = [
        Certificate.of(*[K] * (alpha - 2), FamilyClass.CO_STARS_OR_TRIANGLES),
        Certificate.of(*[K] * (alpha - 3), cm, cm),
        Certificate.of(*[cm] * (alpha - 1)),
        Certificate.of(*[K] * (alpha - 2), FamilyClass.CO_CLIQUES_OR_STARS),
    ]
    t, _ = wpn(h)
    for cert in candidates:
        if len(cert) == t and excludes_h(cert, h):
            return [cert]
    raise ValueError("no listed structure certifies H-freeness for this tree")
