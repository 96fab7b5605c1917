"""Merging per-block colourings of an extension through bipartite matchings.

Two colourings on disjoint blocks combine into one when their colour classes
can be paired so that no extension edge runs between paired classes.  The
pairing is a perfect matching in an auxiliary bipartite graph whose vertices
are the (padded) colour classes; when none exists a Hall violator explains why.
"""

from __future__ import annotations

from collections import Counter, deque
from collections.abc import Sequence
from dataclasses import dataclass, field

from .graph import Graph, iter_bits, popcount
from .invariants import Coloring

INF = float("inf")


@dataclass(frozen=True)
class AuxiliaryBigraph:
    """Colour classes on each side (global vertex tuples, empty ones allowed);
    ``adj[i]`` is the bitmask of right classes compatible with left class i."""

    left_classes: tuple[tuple[int, ...], ...]
    right_classes: tuple[tuple[int, ...], ...]
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.left_classes) != len(self.right_classes):
            raise ValueError("both sides must have the same number of classes")
        if len(self.adj) != len(self.left_classes):
            raise ValueError("one adjacency row per left class")

    @property
    def size(self) -> int:
        return len(self.left_classes)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.adj) for j in iter_bits(row)]

    def num_edges(self) -> int:
        return sum(popcount(r) for r in self.adj)

    def neighborhood(self, left: Sequence[int]) -> int:
        out = 0
        for i in left:
            out |= self.adj[i]
        return out

    @classmethod
    def from_rows(cls, rows: Sequence[int], size: int | None = None) -> AuxiliaryBigraph:
        """Bare bipartite graph (classes left empty); used for matching tests."""
        k = len(rows) if size is None else size
        empty = tuple(() for _ in range(k))
        return cls(empty, empty, tuple(rows))


def _masks_of(classes: Sequence[Sequence[int]]) -> list[int]:
    out = []
    for c in classes:
        m = 0
        for v in c:
            m |= 1 << v
        out.append(m)
    return out


def build_auxiliary(c1: Coloring, c2: Coloring, extension: Graph,
                    blocks: tuple[Sequence[int], Sequence[int]], target: int) -> AuxiliaryBigraph:
    """Auxiliary graph for merging ``c1`` (on blocks[0]) with ``c2`` (on blocks[1]).

    Colourings use local labels: vertex i of a colouring is the i-th smallest
    vertex of its block.  Both sides are padded to exactly ``target`` classes.
    """
    b1, b2 = sorted(blocks[0]), sorted(blocks[1])
    if set(b1) & set(b2):
        raise ValueError("blocks must be disjoint")
    for c, b in ((c1, b1), (c2, b2)):
        if c.n != len(b):
            raise ValueError(f"colouring has {c.n} vertices but its block has {len(b)}")
        if not c.is_proper(extension.induced(b)):
            raise ValueError("input colouring is not proper on its block")
    sides = []
    for c, b in ((c1, b1), (c2, b2)):
        classes = [tuple(b[v] for v in cl) for cl in c.classes() if cl]
        if len(classes) > target:
            raise ValueError(f"target {target} is below the {len(classes)} colours of an input")
        sides.append(tuple(classes) + ((),) * (target - len(classes)))
    left, right = sides
    rmasks = _masks_of(right)
    adj = []
    for cl in left:
        nb = 0
        for v in cl:
            nb |= extension.rows[v]
        adj.append(sum(1 << j for j, rm in enumerate(rmasks) if not nb & rm))
    return AuxiliaryBigraph(left, right, tuple(adj))


# -- matching -----------------------------------------------------------------------

@dataclass(frozen=True)
class MatchingResult:
    """``match[i]`` is the right partner of left vertex i, or -1.  When the
    matching is not perfect, ``violator`` is a left set with |N(S)| < |S|."""

    match: tuple[int, ...]
    violator: frozenset[int] | None

    @property
    def perfect(self) -> bool:
        return self.violator is None

    @property
    def size(self) -> int:
        return sum(1 for j in self.match if j >= 0)


def perfect_matching(aux: AuxiliaryBigraph) -> MatchingResult:
    """Hopcroft-Karp maximum matching; a Hall violator on failure.

    The violator is every left vertex reachable from a free left vertex along
    alternating paths in the last (unsuccessful) search phase: its neighbours
    are all matched back into the set, so it has more members than neighbours.
    """
    k = aux.size
    adj = [list(iter_bits(r)) for r in aux.adj]
    match_l = [-1] * k
    match_r = [-1] * k

    def bfs() -> tuple[list[float], bool]:
        dist = [INF] * k
        q = deque()
        for i in range(k):
            if match_l[i] < 0:
                dist[i] = 0
                q.append(i)
        found = False
        while q:
            i = q.popleft()
            for j in adj[i]:
                i2 = match_r[j]
                if i2 < 0:
                    found = True
                elif dist[i2] == INF:
                    dist[i2] = dist[i] + 1
                    q.append(i2)
        return dist, found

    def dfs(i: int, dist: list[float]) -> bool:
        for j in adj[i]:
            i2 = match_r[j]
            if i2 < 0 or (dist[i2] == dist[i] + 1 and dfs(i2, dist)):
                match_l[i], match_r[j] = j, i
                return True
        dist[i] = INF
        return False

    while True:
        dist, found = bfs()
        if not found:
            break
        for i in range(k):
            if match_l[i] < 0:
                dfs(i, dist)

    if all(j >= 0 for j in match_l):
        return MatchingResult(tuple(match_l), None)
    violator = frozenset(i for i in range(k) if dist[i] < INF)
    return MatchingResult(tuple(match_l), violator)


def hall_violator_exhaustive(aux: AuxiliaryBigraph) -> frozenset[int] | None:
    """Smallest-index-first search over all left subsets for |N(S)| < |S|."""
    k = aux.size
    for s in range(1, 1 << k):
        members = list(iter_bits(s))
        if popcount(aux.neighborhood(members)) < len(members):
            return frozenset(members)
    return None


def is_hall_violator(aux: AuxiliaryBigraph, s) -> bool:
    s = list(s)
    return bool(s) and popcount(aux.neighborhood(s)) < len(s)


# -- merging ------------------------------------------------------------------------

@dataclass(frozen=True)
class MergeOutcome:
    """A merged colouring of ``block`` (local labels, sorted block), or the
    stage and Hall violator at which merging failed."""

    block: tuple[int, ...]
    coloring: Coloring | None = None
    violator: frozenset[int] | None = None
    stage: int | None = None
    trace: tuple[dict, ...] = field(default=(), compare=False)

    @property
    def success(self) -> bool:
        return self.coloring is not None

    def global_assignment(self) -> dict[int, int]:
        if self.coloring is None:
            raise ValueError("merge failed; no colouring")
        return {v: self.coloring.assignment[i] for i, v in enumerate(self.block)}

    def trace_json(self) -> dict:
        out = {"success": self.success, "stages": list(self.trace)}
        if self.success:
            hist = Counter(s for s in self.coloring.class_sizes if s)
            out["classSizeHistogram"] = {str(k): hist[k] for k in sorted(hist)}
            out["colors"] = self.coloring.used_colors
        else:
            out["failedStage"] = self.stage
            out["violator"] = sorted(self.violator)
        return out


def merge_pair(c1: Coloring, c2: Coloring, extension: Graph,
               blocks: tuple[Sequence[int], Sequence[int]], target: int,
               stage: int = 1) -> MergeOutcome:
    aux = build_auxiliary(c1, c2, extension, blocks, target)
    res = perfect_matching(aux)
    union = tuple(sorted([*blocks[0], *blocks[1]]))
    info = {
        "stage": stage,
        "classesPerSide": aux.size,
        "leftNonempty": sum(1 for c in aux.left_classes if c),
        "rightNonempty": sum(1 for c in aux.right_classes if c),
        "auxEdges": aux.num_edges(),
        "matched": res.size,
    }
    if not res.perfect:
        info["violator"] = sorted(res.violator)
        return MergeOutcome(union, None, res.violator, stage, (info,))
    local = {v: i for i, v in enumerate(union)}
    assignment = [0] * len(union)
    for i, j in enumerate(res.match):
        for v in (*aux.left_classes[i], *aux.right_classes[j]):
            assignment[local[v]] = i
    return MergeOutcome(union, Coloring(tuple(assignment), target), None, None, (info,))


def union_coloring(colorings: Sequence[Coloring], blocks: Sequence[Sequence[int]] | None = None) -> Coloring:
    """Disjoint colour ranges per block, on the sorted union of the blocks.

    Without ``blocks`` the colourings are laid end to end.
    """
    if blocks is None:
        starts, pos = [], 0
        for c in colorings:
            starts.append(range(pos, pos + c.n))
            pos += c.n
        blocks = starts
    if len(blocks) != len(colorings):
        raise ValueError("one block per colouring")
    union = sorted(v for b in blocks for v in b)
    local = {v: i for i, v in enumerate(union)}
    assignment = [0] * len(union)
    offset = 0
    for c, b in zip(colorings, blocks):
        for i, v in enumerate(sorted(b)):
            assignment[local[v]] = offset + c.assignment[i]
        offset += c.num_colors
    return Coloring(tuple(assignment), offset)


def merge_all(colorings: Sequence[Coloring], pattern, extension: Graph,
              target: int, b: int) -> MergeOutcome:
    """Fold ``merge_pair`` over the pattern's blocks in order.

    Every stage's output is checked: proper on the merged blocks, within the
    colour budget, classes no larger than 2^(stage) * b.  A violation raises
    AssertionError; a missing matching is reported as a failed outcome.
    """
    blocks = [tuple(sorted(bl)) for bl in pattern.partition.blocks]
    if len(colorings) != len(blocks):
        raise ValueError("one colouring per block required")
    for c in colorings:
        if c.max_class_size > b:
            raise ValueError(f"input class of size {c.max_class_size} exceeds b={b}")
    if len(blocks) == 1:
        return MergeOutcome(blocks[0], colorings[0])
    acc, acc_block = colorings[0], blocks[0]
    trace: list[dict] = []
    for s in range(1, len(blocks)):
        out = merge_pair(acc, colorings[s], extension, (acc_block, blocks[s]), target, stage=s)
        trace.extend(out.trace)
        if not out.success:
            return MergeOutcome(out.block, None, out.violator, s, tuple(trace))
        acc, acc_block = out.coloring, out.block
        if not acc.is_proper(extension.induced(acc_block)):
            raise AssertionError(f"stage {s}: merged colouring is not proper")
        if acc.used_colors > target:
            raise AssertionError(f"stage {s}: {acc.used_colors} colours exceed target {target}")
        if acc.max_class_size > (1 << s) * b:
            raise AssertionError(f"stage {s}: class of size {acc.max_class_size} exceeds {(1 << s) * b}")
    return MergeOutcome(acc_block, acc, None, None, tuple(trace))
