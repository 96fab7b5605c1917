"""Seeded random generation: eqi-partitions, uniform class members, patterns,
uniform extensions and random greedy girth-5 graphs.

Combinatorial choices (which can involve huge counts) use ``random.Random``;
the bulk cross-pair bits of an extension use a numpy ``Generator``.  Both are
seeded from the caller's 64-bit seed, so outputs depend only on
(parameters, seed).
"""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .families import (
    COUNTABLE,
    FamilyClass,
    component_count,
    component_structured_counts,
)
from .graph import Graph, complete_graph, empty_graph, iter_bits
from .partitions import DEFAULT_MU, Certificate, VertexPartition


def derive_seed(seed: int, *counters: int) -> int:
    """Child seed for stream ``counters`` of ``seed`` (fixed counter scheme)."""
    ss = np.random.SeedSequence([seed % 2**64, *counters])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


# -- eqi-partitions -------------------------------------------------------------------

def eqi_partition(n: int, k: int, mu=DEFAULT_MU, seed: int = 0) -> VertexPartition:
    """Uniform ordered partition of [n] into k blocks of sizes floor(n/k) or ceil(n/k)."""
    mu = Fraction(mu)
    if k < 1:
        raise ValueError("k must be at least 1")
    if not 0 < mu <= 1:
        raise ValueError("mu must lie in (0, 1]")
    if k > n:
        raise ValueError(f"cannot split {n} vertices into {k} nonempty blocks")
    rng = _rng(seed)
    q, r = divmod(n, k)
    big = set(rng.sample(range(k), r))
    sizes = [q + 1 if i in big else q for i in range(k)]
    perm = list(range(n))
    rng.shuffle(perm)
    blocks, pos = [], 0
    for s in sizes:
        blocks.append(tuple(sorted(perm[pos:pos + s])))
        pos += s
    return VertexPartition(n, tuple(blocks), mu)


# -- uniform members -----------------------------------------------------------------------

def _component_edges(cls: FamilyClass, comp: list[int], rng: random.Random) -> list[tuple[int, int]]:
    """Edges of a uniformly chosen allowed component on the vertex list ``comp``."""
    j = len(comp)
    clique = [(comp[a], comp[b]) for a in range(j) for b in range(a + 1, j)]
    if j <= 2 or cls in (FamilyClass.DISJOINT_UNION_OF_CLIQUES, FamilyClass.COMPLETE_MULTIPARTITE,
                         FamilyClass.COMPLEMENT_OF_MATCHING):
        return clique
    idx = rng.randrange(component_count(cls, j))
    if cls is FamilyClass.CO_STARS_OR_TRIANGLES:
        if idx == j:
            return clique
        centre = comp[idx]
        return [(centre, v) for v in comp if v != centre]
    if cls is FamilyClass.CO_CLIQUES_OR_STARS:
        if idx == 0:
            return clique
        centre = comp[idx - 1]
        return [(centre, v) for v in comp if v != centre]
    if cls is FamilyClass.CO_JOIN_CLIQUE_STABLE:
        if idx == 0:
            return clique
        while True:
            mask = rng.getrandbits(j)
            size = mask.bit_count()
            if 2 <= size <= j - 1:
                break
        stable = {comp[a] for a in iter_bits(mask)}
        return [(u, v) for u, v in clique if not (u in stable and v in stable)]
    raise ValueError(f"{cls.value} is not component-structured")


def _sample_component_structure(cls: FamilyClass, m: int, rng: random.Random) -> Graph:
    """Uniform graph whose components are allowed components, by peeling off the
    component of the smallest remaining vertex."""
    counts = component_structured_counts(cls, m)
    remaining = list(range(m))
    edges: list[tuple[int, int]] = []
    while remaining:
        r = len(remaining)
        x = rng.randrange(counts[r])
        size = 0
        for j in range(1, r + 1):
            w = comb(r - 1, j - 1) * component_count(cls, j) * counts[r - j]
            if x < w:
                size = j
                break
            x -= w
        others = rng.sample(remaining[1:], size - 1)
        comp = sorted([remaining[0], *others])
        edges += _component_edges(cls, comp, rng)
        taken = set(comp)
        remaining = [v for v in remaining if v not in taken]
    return Graph.build(m, edges)


def sample_member(cls, m: int, seed=0) -> Graph:
    """A random member of ``cls`` on m vertices.

    Uniform over labeled members for every class with a closed count; the
    complement-of-girth-5 class uses the random greedy process instead.
    """
    cls = FamilyClass.parse(cls)
    if m < 0:
        raise ValueError("m must be nonnegative")
    rng = _rng(seed)
    if cls is FamilyClass.CLIQUE:
        return complete_graph(m)
    if cls is FamilyClass.STABLE_SET:
        return empty_graph(m)
    if cls is FamilyClass.DISJOINT_UNION_OF_TWO_CLIQUES:
        side = [0] + [rng.getrandbits(1) for _ in range(m - 1)]
        return Graph.build(m, [(u, v) for u in range(m) for v in range(u + 1, m) if side[u] == side[v]])
    if cls is FamilyClass.COMPLEMENT_OF_GIRTH5:
        return sample_girth5(m, rng).complement() if m else empty_graph(0)
    if cls is FamilyClass.DISJOINT_UNION_OF_CLIQUES:
        return _sample_component_structure(cls, m, rng)
    if cls in COUNTABLE:
        return _sample_component_structure(cls, m, rng).complement()
    raise ValueError(f"no sampler for {cls.value}")


def sampler_tag(cls) -> str:
    return "greedy" if FamilyClass.parse(cls) is FamilyClass.COMPLEMENT_OF_GIRTH5 else "unrank"


# -- girth five -----------------------------------------------------------------------------

def sample_girth5(m: int, seed=0) -> Graph:
    """Random greedy graph of girth >= 5: pairs in uniform random order, each
    added unless it would close a cycle of length at most 4."""
    if m < 1:
        raise ValueError("m must be at least 1")
    rng = _rng(seed)
    pairs = [(u, v) for v in range(m) for u in range(v)]
    rng.shuffle(pairs)
    rows = [0] * m
    for u, v in pairs:
        ru, rv = rows[u], rows[v]
        if ru & rv:
            continue
        if any(rows[a] & rv for a in iter_bits(ru)):
            continue
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(m, tuple(rows))


# -- patterns and extensions -----------------------------------------------------------------

@dataclass(frozen=True)
class Pattern:
    """One graph per block; part i lives on block i (local labels in block order)."""

    partition: VertexPartition
    parts: tuple[Graph, ...]

    def __post_init__(self):
        if len(self.parts) != self.partition.k:
            raise ValueError("one part per block required")
        for b, g in zip(self.partition.blocks, self.parts):
            if len(b) != g.n:
                raise ValueError(f"part has {g.n} vertices but its block has {len(b)}")

    @property
    def n(self) -> int:
        return self.partition.n

    def num_extensions_log2(self) -> int:
        return self.partition.cross_pairs()


def sample_pattern(partition: VertexPartition, cert: Certificate | Sequence, seed=0) -> Pattern:
    """Parts drawn independently, block i from the i-th family of the certificate."""
    fams = cert.families if isinstance(cert, Certificate) else tuple(FamilyClass.parse(f) for f in cert)
    if len(fams) != partition.k:
        raise ValueError("certificate length must equal the block count")
    parts = tuple(sample_member(f, len(b), derive_seed(seed, i))
                  for i, (f, b) in enumerate(zip(fams, partition.blocks)))
    return Pattern(partition, parts)


def extend_pattern(p: Pattern, seed=0) -> Graph:
    """Parts inside blocks; every cross-block pair an edge with probability 1/2.

    Bits are drawn block pair by block pair (i < j), row-major over the sorted
    block members.
    """
    n = p.n
    gen = np.random.default_rng(seed % 2**64 if isinstance(seed, int) else seed)
    adj = np.zeros((n, n), dtype=bool)
    blocks = [np.asarray(b, dtype=np.intp) for b in p.partition.blocks]
    for b, part in zip(blocks, p.parts):
        if len(b):
            adj[np.ix_(b, b)] = part.to_matrix()
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            bi, bj = blocks[i], blocks[j]
            bits = gen.integers(0, 2, size=(len(bi), len(bj)), dtype=np.uint8).astype(bool)
            adj[np.ix_(bi, bj)] = bits
            adj[np.ix_(bj, bi)] = bits.T
    return Graph.from_matrix(adj)
