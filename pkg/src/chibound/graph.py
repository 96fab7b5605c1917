"""Labeled simple graphs on vertex set {0, ..., n-1}.

Adjacency is stored as one Python int bitmask per vertex, so neighbourhood
intersection is a single ``&``.  The same representation serves the small
census graphs and the Monte Carlo graphs with a few thousand vertices.

Graph codes
-----------
Pairs ``(i, j)`` with ``i < j`` are indexed column-major over the upper
triangle, ``index(i, j) = j*(j-1)/2 + i``.  That is the bit order of graph6,
and the census treats the resulting integer as a binary counter.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass

import numpy as np


def pair_index(i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Graph:
    """Immutable labeled graph.  ``rows[v]`` is the neighbourhood bitmask of v."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")

    # -- construction -----------------------------------------------------

    @classmethod
    def build(cls, n: int, edges: Iterable[Sequence[int]] = ()) -> Graph:
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        rows = [0] * n
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} has an endpoint outside [0, {n})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_code(cls, n: int, code: int) -> Graph:
        rows = [0] * n
        idx = 0
        for j in range(1, n):
            for i in range(j):
                if code >> idx & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                idx += 1
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, adj) -> Graph:
        """Build from a symmetric boolean matrix (numpy array or nested lists)."""
        a = np.asarray(adj, dtype=bool)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("adjacency matrix must be square")
        if n and (a.diagonal().any() or not (a == a.T).all()):
            raise ValueError("adjacency matrix must be symmetric with empty diagonal")
        packed = np.packbits(a, axis=1, bitorder="little")
        rows = tuple(int.from_bytes(packed[v].tobytes(), "little") for v in range(n))
        return cls(n, rows)

    # -- basic queries ----------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return popcount(self.rows[v])

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.rows]

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u in range(self.n):
            for v in iter_bits(self.rows[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def num_edges(self) -> int:
        return sum(popcount(r) for r in self.rows) // 2

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.rows[v]))

    def code(self) -> int:
        c = 0
        for u, v in self.edges():
            c |= 1 << pair_index(u, v)
        return c

    def to_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges():
            a[u, v] = a[v, u] = True
        return a

    # -- derived graphs ---------------------------------------------------

    def complement(self) -> Graph:
        full = self.full_mask
        return Graph(self.n, tuple(full & ~r & ~(1 << v) for v, r in enumerate(self.rows)))

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph on ``vertices``, relabeled in increasing label order."""
        vs = sorted(set(vertices))
        for v in vs:
            if not 0 <= v < self.n:
                raise ValueError(f"vertex {v} outside [0, {self.n})")
        pos = {v: i for i, v in enumerate(vs)}
        mask = 0
        for v in vs:
            mask |= 1 << v
        rows = []
        for v in vs:
            r = 0
            for w in iter_bits(self.rows[v] & mask):
                r |= 1 << pos[w]
            rows.append(r)
        return Graph(len(vs), tuple(rows))

    def induced_mask(self, mask: int) -> Graph:
        return self.induced(iter_bits(mask))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex v renamed to ``perm[v]``."""
        return Graph.build(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_json(cls, obj) -> Graph:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls.build(obj["n"], [tuple(e) for e in obj["edges"]])

    def to_graph6(self) -> str:
        return encode_graph6(self)

    @classmethod
    def from_graph6(cls, s: str) -> Graph:
        return decode_graph6(s)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# Module-level aliases matching the operation names used across the package.

def build(n: int, edges: Iterable[Sequence[int]] = ()) -> Graph:
    return Graph.build(n, edges)


def complement(g: Graph) -> Graph:
    return g.complement()


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Graph:
    return g.induced(vertices)


def disjoint_union(*graphs: Graph) -> Graph:
    rows: list[int] = []
    offset = 0
    for g in graphs:
        rows.extend(r << offset for r in g.rows)
        offset += g.n
    return Graph(offset, tuple(rows))


def join(*graphs: Graph) -> Graph:
    """Disjoint union plus every edge between different operands."""
    return disjoint_union(*(g.complement() for g in graphs)).complement()


# -- graph6 -----------------------------------------------------------------

def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n < 1 << 36:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def encode_graph6(g: Graph) -> str:
    m = num_pairs(g.n)
    code = g.code()
    chars = [_encode_n(g.n)]
    for start in range(0, m, 6):
        val = 0
        for k in range(6):
            idx = start + k
            bit = (code >> idx & 1) if idx < m else 0
            val = (val << 1) | bit
        chars.append(chr(val + 63))
    return "".join(chars)


def decode_graph6(s: str) -> Graph:
    s = s.strip()
    s = s.removeprefix(">>graph6<<")
    data = [ord(ch) - 63 for ch in s]
    if any(not 0 <= d < 64 for d in data):
        raise ValueError(f"invalid graph6 character in {s!r}")
    if data and data[0] == 63:
        if len(data) > 1 and data[1] == 63:
            n = 0
            for d in data[2:8]:
                n = (n << 6) | d
            body = data[8:]
        else:
            n = 0
            for d in data[1:4]:
                n = (n << 6) | d
            body = data[4:]
    elif data:
        n = data[0]
        body = data[1:]
    else:
        raise ValueError("empty graph6 string")
    m = num_pairs(n)
    if len(body) != (m + 5) // 6:
        raise ValueError(f"graph6 body has {len(body)} chars, expected {(m + 5) // 6}")
    code = 0
    idx = 0
    for d in body:
        for k in range(5, -1, -1):
            if idx < m and d >> k & 1:
                code |= 1 << idx
            idx += 1
    return Graph.from_code(n, code)


# -- named graphs -------------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    return empty_graph(n).complement()


def path_graph(n: int) -> Graph:
    return Graph.build(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.build(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves}; vertex 0 is the centre."""
    return Graph.build(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def spider_graph(legs: Sequence[int]) -> Graph:
    """Subdivided star: a centre (vertex 0) with paths of the given lengths attached."""
    edges = []
    nxt = 1
    for length in legs:
        if length < 1:
            raise ValueError("spider legs must have length >= 1")
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.build(nxt, edges)


def double_star(a: int, b: int) -> Graph:
    """Two adjacent centres carrying ``a`` and ``b`` leaves."""
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(a)]
    edges += [(1, 2 + a + i) for i in range(b)]
    return Graph.build(2 + a + b, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.build(10, outer + spokes + inner)


def perfect_matching_graph(n: int) -> Graph:
    if n % 2:
        raise ValueError("perfect matching needs an even vertex count")
    return Graph.build(n, [(2 * i, 2 * i + 1) for i in range(n // 2)])
