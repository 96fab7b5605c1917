"""Exact graph invariants: clique number, chromatic number, girth, matchings,
perfection, and the stable-pair colouring used on complements of girth-5 graphs.
"""

from __future__ import annotations

import math
import sys
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cache

from .graph import Graph, iter_bits, popcount


class SearchLimitExceeded(RuntimeError):
    """Raised when a bounded exact search runs out of nodes.

    ``lower`` is the best value found so far and ``upper`` a proven bound.
    """

    def __init__(self, lower: int, upper: int, witness=()):
        super().__init__(f"node limit exceeded; value in [{lower}, {upper}]")
        self.lower = lower
        self.upper = upper
        self.witness = tuple(witness)


# -- colourings ---------------------------------------------------------------

@dataclass(frozen=True)
class Coloring:
    """Vertex v gets colour ``assignment[v]`` in ``range(num_colors)``.

    ``num_colors`` is the size of the colour index space; classes may be empty
    (merged colourings keep their padding slots).
    """

    assignment: tuple[int, ...]
    num_colors: int

    def __post_init__(self):
        for v, c in enumerate(self.assignment):
            if not 0 <= c < self.num_colors:
                raise ValueError(f"vertex {v} has colour {c} outside [0, {self.num_colors})")

    @classmethod
    def from_classes(cls, classes: Sequence[Iterable[int]], n: int | None = None) -> Coloring:
        classes = [list(c) for c in classes]
        if n is None:
            n = sum(len(c) for c in classes)
        assignment = [-1] * n
        for color, cls_ in enumerate(classes):
            for v in cls_:
                if assignment[v] != -1:
                    raise ValueError(f"vertex {v} assigned twice")
                assignment[v] = color
        if -1 in assignment:
            raise ValueError(f"vertex {assignment.index(-1)} has no colour")
        return cls(tuple(assignment), len(classes))

    @property
    def n(self) -> int:
        return len(self.assignment)

    @property
    def class_sizes(self) -> tuple[int, ...]:
        sizes = [0] * self.num_colors
        for c in self.assignment:
            sizes[c] += 1
        return tuple(sizes)

    @property
    def used_colors(self) -> int:
        return sum(1 for s in self.class_sizes if s)

    @property
    def max_class_size(self) -> int:
        return max(self.class_sizes, default=0)

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_colors)]
        for v, c in enumerate(self.assignment):
            out[c].append(v)
        return out

    def is_proper(self, g: Graph) -> bool:
        if g.n != self.n:
            return False
        return all(self.assignment[u] != self.assignment[v] for u, v in g.edges())

    def to_json(self) -> dict:
        return {"colors": self.used_colors, "classes": [c for c in self.classes() if c]}

    @classmethod
    def from_json(cls, obj: dict, n: int | None = None) -> Coloring:
        return cls.from_classes(obj["classes"], n)


# -- cliques ------------------------------------------------------------------

def _greedy_color_sort(cand: int, rows: Sequence[int]) -> tuple[list[int], list[int]]:
    verts: list[int] = []
    colors: list[int] = []
    k = 0
    while cand:
        k += 1
        avail = cand
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            avail ^= low
            avail &= ~rows[v]
            cand ^= low
            verts.append(v)
            colors.append(k)
    return verts, colors


def maximum_clique(g: Graph, node_limit: int | None = None) -> list[int]:
    """A maximum clique of ``g`` (sorted labels).

    Branch and bound with greedy-colouring bounds over vertices ranked by
    descending degree (ties by label).  Deterministic.
    """
    n = g.n
    if n == 0:
        return []
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    rank = {v: i for i, v in enumerate(order)}
    rows = []
    for v in order:
        r = 0
        for w in iter_bits(g.rows[v]):
            r |= 1 << rank[w]
        rows.append(r)

    best: list[int] = []
    cur: list[int] = []
    nodes = 0
    _, root_colors = _greedy_color_sort((1 << n) - 1, rows)
    root_bound = max(root_colors)

    def expand(cand: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise SearchLimitExceeded(len(best), root_bound, sorted(order[i] for i in best))
        verts, colors = _greedy_color_sort(cand, rows)
        for idx in range(len(verts) - 1, -1, -1):
            if len(cur) + colors[idx] <= len(best):
                return
            v = verts[idx]
            cur.append(v)
            nxt = cand & rows[v]
            if nxt:
                expand(nxt)
            elif len(cur) > len(best):
                best = cur.copy()
            cur.pop()
            cand &= ~(1 << v)

    limit = sys.getrecursionlimit()
    if limit < n + 100:
        sys.setrecursionlimit(n + 100)
    expand((1 << n) - 1)
    return sorted(order[i] for i in best)


def clique_number(g: Graph, node_limit: int | None = None) -> int:
    return len(maximum_clique(g, node_limit))


def maximum_stable_set(g: Graph, node_limit: int | None = None) -> list[int]:
    return maximum_clique(g.complement(), node_limit)


def independence_number(g: Graph, node_limit: int | None = None) -> int:
    return len(maximum_stable_set(g, node_limit))


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    mask = 0
    for v in vs:
        mask |= 1 << v
    return all((g.rows[v] | 1 << v) & mask == mask for v in vs)


def is_stable(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    mask = 0
    for v in vs:
        mask |= 1 << v
    return all(g.rows[v] & mask == 0 for v in vs)


# -- chromatic number ---------------------------------------------------------

def _k_colorable(g: Graph, k: int, seed_clique: Sequence[int]) -> list[int] | None:
    n = g.n
    rows = g.rows
    color = [-1] * n
    classes = [0] * k
    for c, v in enumerate(seed_clique):
        color[v] = c
        classes[c] |= 1 << v
    uncolored = g.full_mask
    for v in seed_clique:
        uncolored &= ~(1 << v)
    degree = g.degrees()
    full = (1 << k) - 1

    def forbidden(v: int) -> int:
        f = 0
        r = rows[v]
        for c in range(k):
            if classes[c] & r:
                f |= 1 << c
        return f

    def solve(uncolored: int, used: int) -> bool:
        if not uncolored:
            return True
        # DSATUR choice: most distinct neighbouring colours, then degree, then label
        best_v, best_key, best_forb = -1, None, 0
        for v in iter_bits(uncolored):
            f = forbidden(v)
            if f == full:
                return False
            key = (popcount(f), degree[v])
            if best_key is None or key > best_key:
                best_v, best_key, best_forb = v, key, f
        v = best_v
        # a fresh colour is only tried once: colours >= used are interchangeable
        avail = ~best_forb & ((1 << min(used + 1, k)) - 1)
        bit = 1 << v
        for c in iter_bits(avail):
            color[v] = c
            classes[c] |= bit
            if solve(uncolored & ~bit, max(used, c + 1)):
                return True
            classes[c] &= ~bit
            color[v] = -1
        return False

    if solve(uncolored, len(seed_clique)):
        return color
    return None


def chromatic_number(g: Graph) -> tuple[int, Coloring]:
    """Exact chromatic number and an optimal colouring.

    Tries k = omega, omega+1, ... with the colours of one maximum clique fixed.
    """
    if g.n == 0:
        return 0, Coloring((), 0)
    clique = maximum_clique(g)
    for k in range(len(clique), g.n + 1):
        color = _k_colorable(g, k, clique)
        if color is not None:
            return k, Coloring(tuple(color), k)
    raise AssertionError("unreachable: n colours always suffice")


# -- girth --------------------------------------------------------------------

def girth(g: Graph) -> float:
    """Length of a shortest cycle, or ``math.inf`` for a forest."""
    best = math.inf
    n = g.n
    for root in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[root] = 0
        q = deque([root])
        while q:
            u = q.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in iter_bits(g.rows[u]):
                if dist[w] == -1:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
        if best == 3:
            break
    return best


# -- matchings ----------------------------------------------------------------

def maximum_matching(g: Graph) -> list[tuple[int, int]]:
    """Maximum-cardinality matching in a general graph (Edmonds' blossom algorithm)."""
    n = g.n
    adj = [list(iter_bits(r)) for r in g.rows]
    match = [-1] * n
    # greedy start
    for v in range(n):
        if match[v] == -1:
            for w in adj[v]:
                if match[w] == -1:
                    match[v], match[w] = w, v
                    break

    def find_augmenting(root: int) -> tuple[int, list[int]]:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        q = deque([root])

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to, parent
                    used[match[to]] = True
                    q.append(match[to])
        return -1, parent

    for root in range(n):
        if match[root] != -1:
            continue
        end, parent = find_augmenting(root)
        v = end
        while v != -1:
            pv = parent[v]
            nxt = match[pv]
            match[v] = pv
            match[pv] = v
            v = nxt
    return sorted((v, match[v]) for v in range(n) if match[v] > v)


def maximum_matching_exhaustive(g: Graph) -> list[tuple[int, int]]:
    """Exact search over pair sets; an independent oracle for small graphs (n <= 24)."""
    rows = g.rows

    @cache
    def best(mask: int) -> int:
        if not mask:
            return 0
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        top = popcount(mask) // 2
        value = best(rest)
        for u in iter_bits(rows[v] & rest):
            value = max(value, 1 + best(rest & ~(1 << u)))
            if value == top:
                break
        return value

    pairs = []
    mask = g.full_mask
    while mask:
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        target = best(mask)
        if best(rest) == target:
            mask = rest
            continue
        for u in iter_bits(rows[v] & rest):
            if 1 + best(rest & ~(1 << u)) == target:
                pairs.append((v, u))
                mask = rest & ~(1 << u)
                break
    return pairs


def is_matching(g: Graph, pairs: Iterable[tuple[int, int]]) -> bool:
    seen: set[int] = set()
    for u, v in pairs:
        if u in seen or v in seen or not g.has_edge(u, v):
            return False
        seen.update((u, v))
    return True


# -- perfection ---------------------------------------------------------------

def find_induced_cycle(g: Graph, length: int) -> list[int] | None:
    """Vertices (in cycle order) of an induced cycle of the given length, if any."""
    if length < 3 or length > g.n:
        return None
    rows = g.rows
    path: list[int] = []

    def extend(last: int, blocked: int, allowed: int, first: int) -> bool:
        # blocked: closed neighbourhoods of path[1:-1] plus path vertices
        k = len(path)
        if k == length - 1:
            cand = rows[last] & rows[first] & allowed & ~blocked
            cand &= ~((1 << (path[1] + 1)) - 1)  # orientation: path[1] < last vertex
            if cand:
                path.append((cand & -cand).bit_length() - 1)
                return True
            return False
        cand = rows[last] & allowed & ~blocked & ~rows[first]
        new_block = blocked | rows[last] | (1 << last)
        for x in iter_bits(cand):
            path.append(x)
            if extend(x, new_block, allowed, first):
                return True
            path.pop()
        return False

    for v0 in range(g.n):
        allowed = g.full_mask & ~((1 << (v0 + 1)) - 1)
        for v1 in iter_bits(rows[v0] & allowed):
            path[:] = [v0, v1]
            if length == 3:
                cand = rows[v0] & rows[v1] & allowed & ~((1 << (v1 + 1)) - 1)
                if cand:
                    return [v0, v1, (cand & -cand).bit_length() - 1]
                continue
            if extend(v1, (1 << v0) | (1 << v1), allowed, v0):
                return list(path)
    return None


def find_odd_hole(g: Graph) -> list[int] | None:
    for length in range(5, g.n + 1, 2):
        cyc = find_induced_cycle(g, length)
        if cyc is not None:
            return cyc
    return None


def is_perfect(g: Graph) -> bool:
    """No induced odd cycle of length >= 5 and no induced complement of one."""
    if find_odd_hole(g) is not None:
        return False
    return find_odd_hole(g.complement()) is None


# -- stable-pair colouring ------------------------------------------------------

def pair_coloring(f: Graph) -> Coloring:
    """Colour classes = pairs of a maximum matching of the complement, plus singletons."""
    pairs = maximum_matching(f.complement())
    matched = {v for p in pairs for v in p}
    classes = [list(p) for p in pairs] + [[v] for v in range(f.n) if v not in matched]
    return Coloring.from_classes(classes, f.n)
