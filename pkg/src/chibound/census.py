"""Exhaustive census of labeled graphs on n vertices.

All ``2**(n(n-1)/2)`` graph codes are visited as a binary counter, split into
contiguous chunks.  Each chunk is processed with numpy: for every vertex
subset S the induced-subgraph codes of all graphs in the chunk are built
incrementally, after which forbidden-subgraph tests, clique/stable tests and
the chromatic-number dynamic program are table lookups and elementwise ops.
Chunk results are merged by exact integer addition, so totals do not depend
on the chunking or on the number of workers.

A scalar path (one ``Graph`` object per code) handles arbitrary Python
predicates and is used as the independent check of the vectorized one.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from multiprocessing import Pool
from pathlib import Path

import numpy as np

from .families import FamilyClass, obstructions
from .graph import Graph, cycle_graph, num_pairs, pair_index

CODE_VERSION = "1"
CSV_SCHEMA = "chibound-census v1"
DEFAULT_CENSUS_BOUND = 8

STAT_COUNT = "count"
STAT_CHI_EQ_OMEGA = "countChiEqOmega"
STAT_PERFECT = "countPerfect"
STAT_CERTIFIED = "countCertified"
NAMED_STATS = (STAT_COUNT, STAT_CHI_EQ_OMEGA, STAT_PERFECT, STAT_CERTIFIED)


@dataclass
class CensusRecord:
    n: int
    total_graphs: int
    passing: int
    statistics: dict[str, int] = field(default_factory=dict)
    filter_name: str = "all"

    def __post_init__(self):
        if self.total_graphs != 2 ** num_pairs(self.n):
            raise ValueError("total_graphs must be 2^(n(n-1)/2)")
        if not 0 <= self.passing <= self.total_graphs:
            raise ValueError("passing must lie in [0, total_graphs]")

    def fraction(self, stat: str) -> float:
        return self.statistics[stat] / self.passing if self.passing else float("nan")

    def csv_columns(self) -> list[str]:
        return ["n", "total", "passing", *self.statistics]

    def csv_row(self) -> list:
        return [self.n, self.total_graphs, self.passing, *self.statistics.values()]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "filter": self.filter_name,
            "totalGraphs": self.total_graphs,
            "passing": self.passing,
            "statistics": dict(self.statistics),
            "codeVersion": CODE_VERSION,
        }

    @classmethod
    def from_json(cls, obj: dict) -> CensusRecord:
        return cls(obj["n"], obj["totalGraphs"], obj["passing"], dict(obj["statistics"]), obj["filter"])


def records_to_csv(records: Sequence[CensusRecord]) -> str:
    buf = io.StringIO()
    buf.write(f"# {CSV_SCHEMA}\n")
    writer = csv.writer(buf, lineterminator="\n")
    if records:
        writer.writerow(records[0].csv_columns())
    for r in records:
        writer.writerow(r.csv_row())
    return buf.getvalue()


# -- lookup tables ---------------------------------------------------------------

@lru_cache(maxsize=64)
def labeled_copy_table(h: Graph) -> np.ndarray:
    """Boolean table over codes on h.n vertices: True at every labeled copy of h."""
    table = np.zeros(2 ** num_pairs(h.n), dtype=bool)
    edges = h.edges()
    for perm in permutations(range(h.n)):
        code = 0
        for u, v in edges:
            code |= 1 << pair_index(perm[u], perm[v])
        table[code] = True
    return table


def _hole_table(k: int) -> np.ndarray:
    c = cycle_graph(k)
    return labeled_copy_table(c) | labeled_copy_table(c.complement())


# -- vectorized chunk kernel ---------------------------------------------------------

@dataclass(frozen=True)
class _Job:
    n: int
    start: int
    stop: int
    forbidden: tuple[Graph, ...]
    stats: tuple[str, ...]
    certificates: tuple[tuple[FamilyClass, ...], ...]


def _subset_codes(n: int, codes: np.ndarray) -> list[np.ndarray]:
    sub: list[np.ndarray] = [None] * (1 << n)  # type: ignore[list-item]
    zero = np.zeros_like(codes)
    sub[0] = zero
    one = codes.dtype.type(1)
    for s in range(1, 1 << n):
        top = s.bit_length() - 1
        prev = s ^ (1 << top)
        if prev == 0:
            sub[s] = zero
            continue
        arr = sub[prev].copy()
        k = s.bit_count()
        members = [v for v in range(top) if prev >> v & 1]
        for i, v in enumerate(members):
            src = codes.dtype.type(pair_index(v, top))
            dst = codes.dtype.type(pair_index(i, k - 1))
            arr |= ((codes >> src) & one) << dst
        sub[s] = arr
    return sub


def _subsets_by_size(n: int) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {k: [] for k in range(n + 1)}
    for s in range(1 << n):
        out[s.bit_count()].append(s)
    return out


def _chromatic_dp(n: int, indep: list[np.ndarray], size: int) -> np.ndarray:
    inf = np.uint8(255)
    chi: list[np.ndarray] = [None] * (1 << n)  # type: ignore[list-item]
    chi[0] = np.zeros(size, dtype=np.uint8)
    for s in range(1, 1 << n):
        low = s & -s
        rest = s ^ low
        best = np.full(size, inf, dtype=np.uint8)
        t = rest
        while True:
            block = t | low
            cand = np.where(indep[block], chi[s ^ block] + np.uint8(1), inf)
            np.minimum(best, cand, out=best)
            if t == 0:
                break
            t = (t - 1) & rest
        chi[s] = best
    return chi[(1 << n) - 1]


def _family_members(n: int, sub: list[np.ndarray], fam: FamilyClass, size: int) -> list[np.ndarray]:
    tables = [(f.n, labeled_copy_table(f)) for f in obstructions(fam)]
    member: list[np.ndarray] = [None] * (1 << n)  # type: ignore[list-item]
    member[0] = np.ones(size, dtype=bool)
    for s in range(1, 1 << n):
        k = s.bit_count()
        ok = np.ones(size, dtype=bool)
        for v in range(n):
            if s >> v & 1:
                ok &= member[s ^ (1 << v)]
        for fk, table in tables:
            if fk == k:
                ok &= ~table[sub[s]]
        member[s] = ok
    return member


def _certified(n: int, sub: list[np.ndarray], certs, size: int) -> np.ndarray:
    full = (1 << n) - 1
    any_cert = np.zeros(size, dtype=bool)
    cache: dict[FamilyClass, list[np.ndarray]] = {}
    for cert in certs:
        members = []
        for fam in cert:
            if fam not in cache:
                cache[fam] = _family_members(n, sub, fam, size)
            members.append(cache[fam])
        reach = members[0]
        for mem in members[1:]:
            nxt: list[np.ndarray] = [None] * (1 << n)  # type: ignore[list-item]
            for s in range(1 << n):
                acc = np.zeros(size, dtype=bool)
                t = s
                while True:
                    acc |= reach[s ^ t] & mem[t]
                    if t == 0:
                        break
                    t = (t - 1) & s
                nxt[s] = acc
            reach = nxt
        any_cert |= reach[full]
    return any_cert


def _run_job(job: _Job) -> tuple[int, dict[str, int]]:
    n = job.n
    dtype = np.uint32 if num_pairs(n) <= 32 else np.uint64
    codes = np.arange(job.start, job.stop, dtype=dtype)
    sub = _subset_codes(n, codes)
    by_size = _subsets_by_size(n)

    mask = np.ones(codes.size, dtype=bool)
    for f in job.forbidden:
        if f.n > n:
            continue
        table = labeled_copy_table(f)
        for s in by_size[f.n]:
            mask &= ~table[sub[s]]
    idx = np.nonzero(mask)[0]
    passing = int(idx.size)
    out: dict[str, int] = {}
    if STAT_COUNT in job.stats:
        out[STAT_COUNT] = passing
    if passing and len(job.stats) > (STAT_COUNT in job.stats):
        sub = [a[idx] for a in sub]
        size = passing
        if STAT_CHI_EQ_OMEGA in job.stats:
            omega = np.zeros(size, dtype=np.uint8)
            indep = []
            for s in range(1 << n):
                k = s.bit_count()
                np.maximum(omega, np.where(sub[s] == (1 << num_pairs(k)) - 1, k, 0).astype(np.uint8), out=omega)
                indep.append(sub[s] == 0)
            chi = _chromatic_dp(n, indep, size)
            out[STAT_CHI_EQ_OMEGA] = int(np.count_nonzero(chi == omega))
        if STAT_PERFECT in job.stats:
            bad = np.zeros(size, dtype=bool)
            for k in range(5, n + 1, 2):
                table = _hole_table(k)
                for s in by_size[k]:
                    bad |= table[sub[s]]
            out[STAT_PERFECT] = int(np.count_nonzero(~bad))
        if STAT_CERTIFIED in job.stats:
            out[STAT_CERTIFIED] = int(np.count_nonzero(_certified(n, sub, job.certificates, size)))
    else:
        for name in job.stats:
            out.setdefault(name, 0)
    return passing, out


# -- public entry points -----------------------------------------------------------

def filter_name(flt) -> str:
    if flt is None:
        return "all"
    if isinstance(flt, Graph):
        return "free:" + flt.to_graph6()
    if callable(flt):
        return getattr(flt, "__name__", "predicate")
    return "free:" + "+".join(sorted(f.to_graph6() for f in flt))


def enumerate_graphs(
    n: int,
    flt=None,
    stats: Sequence[str] | dict[str, Callable[[Graph], bool]] = (),
    certificates: Sequence[Sequence] = (),
    workers: int = 1,
    bound: int = DEFAULT_CENSUS_BOUND,
    chunk_bits: int = 16,
) -> CensusRecord:
    """Census of all labeled graphs on n vertices.

    ``flt`` is None (every graph), a Graph H (H-free graphs), a sequence of
    graphs (free of all of them) or a predicate ``Graph -> bool``.  ``stats``
    lists named statistics (see ``NAMED_STATS``) or maps names to predicates.
    ``countCertified`` counts graphs admitting an ordered partition whose
    blocks lie in the families of one of ``certificates`` (empty blocks allowed).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > bound:
        raise ValueError(f"n={n} exceeds the census bound {bound}")
    total = 2 ** num_pairs(n)
    name = filter_name(flt)
    certs = tuple(tuple(FamilyClass.parse(f) for f in c) for c in certificates)
    scalar = callable(flt) and not isinstance(flt, Graph) or isinstance(stats, dict)
    if not scalar:
        unknown = [s for s in stats if s not in NAMED_STATS]
        if unknown:
            raise ValueError(f"unknown statistics {unknown}")
        if STAT_CERTIFIED in stats and not certs:
            raise ValueError("countCertified needs at least one certificate")
    if scalar:
        passing, out = _scalar_census(n, flt, stats, certs)
        return CensusRecord(n, total, passing, out, name)

    forbidden = () if flt is None else ((flt,) if isinstance(flt, Graph) else tuple(flt))
    step = 1 << chunk_bits
    jobs = [
        _Job(n, lo, min(lo + step, total), forbidden, tuple(stats), certs)
        for lo in range(0, total, step)
    ]
    if workers > 1 and len(jobs) > 1:
        with Pool(workers) as pool:
            results = pool.map(_run_job, jobs)
    else:
        results = [_run_job(j) for j in jobs]
    passing = sum(p for p, _ in results)
    out = {s: sum(r[s] for _, r in results) for s in stats}
    return CensusRecord(n, total, passing, out, name)


def _scalar_census(n, flt, stats, certs) -> tuple[int, dict[str, int]]:
    from .families import contains_induced
    from .invariants import chromatic_number, clique_number, is_perfect
    from .partitions import has_certified_partition

    if flt is None:
        keep = lambda g: True
    elif isinstance(flt, Graph):
        keep = lambda g: not contains_induced(g, flt)
    elif callable(flt):
        keep = flt
    else:
        keep = lambda g: not any(contains_induced(g, f) for f in flt)

    named = {
        STAT_COUNT: lambda g: True,
        STAT_CHI_EQ_OMEGA: lambda g: chromatic_number(g)[0] == clique_number(g),
        STAT_PERFECT: is_perfect,
        STAT_CERTIFIED: lambda g: has_certified_partition(g, certs),
    }
    preds = dict(stats) if isinstance(stats, dict) else {s: named[s] for s in stats}
    counts = {s: 0 for s in preds}
    passing = 0
    for code in range(2 ** num_pairs(n)):
        g = Graph.from_code(n, code)
        if not keep(g):
            continue
        passing += 1
        for s, pred in preds.items():
            if pred(g):
                counts[s] += 1
    return passing, counts


def cached_census(cache_dir, n: int, flt=None, stats=(), certificates=(), **kw) -> CensusRecord:
    """``enumerate_graphs`` with a JSON file cache keyed by (n, filter, stats, code version)."""
    if cache_dir is None:
        return enumerate_graphs(n, flt, stats, certificates, **kw)
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    cert_key = ";".join(",".join(FamilyClass.parse(f).value for f in c) for c in certificates)
    key = f"{filter_name(flt)}|{','.join(stats)}|{cert_key}"
    safe = "".join(ch if ch.isalnum() else "_" for ch in key)
    path = cache_dir / f"census_n{n}_{safe}_v{CODE_VERSION}.json"
    if path.exists():
        return CensusRecord.from_json(json.loads(path.read_text()))
    rec = enumerate_graphs(n, flt, stats, certificates, **kw)
    path.write_text(json.dumps(rec.to_json(), sort_keys=True))
    return rec
