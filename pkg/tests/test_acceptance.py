"""Acceptance criteria, one test each; every test records a PASS/FAIL line that
is printed in the terminal summary (see conftest.py)."""

import random
import time
from functools import cache

from chibound.census import STAT_CHI_EQ_OMEGA, enumerate_graphs
from chibound.experiments import ExperimentConfig, cmd_c6, cmd_merge_stats, color_part
from chibound.families import (
    COUNTABLE,
    FamilyClass,
    contains_induced,
    family_count,
    is_member,
    obstructions,
)
from chibound.graph import Graph, cycle_graph, num_pairs, path_graph
from chibound.invariants import chromatic_number, clique_number, is_perfect
from chibound.merge import (
    AuxiliaryBigraph,
    hall_violator_exhaustive,
    is_hall_violator,
    merge_all,
    perfect_matching,
)
from chibound.partitions import VertexPartition, known_certificates, wpn
from chibound.sampling import (
    Pattern,
    derive_seed,
    eqi_partition,
    extend_pattern,
    sample_member,
    sample_pattern,
)

RESULTS: dict[int, str] = {}


def record(num: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title}"
    if detail:
        line += f" ({detail})"
    RESULTS[num] = line
    print(line)
    assert ok, line


# -- 1 ---------------------------------------------------------------------------------

def test_criterion_01_wpn_exact():
    t0 = time.perf_counter()
    got = {name: wpn(h)[0] for name, h in
           [("C5", cycle_graph(5)), ("C7", cycle_graph(7)), ("C9", cycle_graph(9)), ("P6", path_graph(6))]}
    elapsed = time.perf_counter() - t0
    want = {"C5": 2, "C7": 3, "C9": 4, "P6": 2}
    record(1, "wpn(C5,C7,C9,P6) = (2,3,4,2) in < 60 s", got == want and elapsed < 60,
           f"got {got}, {elapsed:.1f} s")


# -- 2 ---------------------------------------------------------------------------------

def test_criterion_02_perfect_oracle_all_six_vertex_graphs():
    @cache
    def oracle(n: int, code: int) -> bool:
        # chi = omega here and on every one-vertex-deleted induced subgraph
        g = Graph.from_code(n, code)
        if chromatic_number(g)[0] != clique_number(g):
            return False
        for v in range(n):
            if not oracle(n - 1, g.induced([u for u in range(n) if u != v]).code()):
                return False
        return True

    t0 = time.perf_counter()
    mismatches = sum(is_perfect(Graph.from_code(6, c)) != oracle(6, c) for c in range(2 ** 15))
    elapsed = time.perf_counter() - t0
    record(2, "is_perfect matches chi=omega-on-all-induced oracle on all 2^15 graphs",
           mismatches == 0 and elapsed < 600, f"{mismatches} mismatches, {elapsed:.0f} s")


# -- 3 ---------------------------------------------------------------------------------

def _theorem4_graph(shape: int, rng: random.Random) -> Graph:
    n = 9
    perm = list(range(n))
    rng.shuffle(perm)
    cut = rng.randint(0, n)
    b1, b2 = sorted(perm[:cut]), sorted(perm[cut:])
    if shape == 0:
        first, second = FamilyClass.CLIQUE, FamilyClass.DISJOINT_UNION_OF_CLIQUES
    else:
        first, second = FamilyClass.STABLE_SET, FamilyClass.COMPLETE_MULTIPARTITE
    part = VertexPartition.from_blocks([b1, b2])
    pat = Pattern(part, (sample_member(first, len(b1), rng), sample_member(second, len(b2), rng)))
    return extend_pattern(pat, rng.getrandbits(64))


def test_criterion_03_theorem4_graphs_are_perfect():
    rng = random.Random(2024)
    bad = 0
    for i in range(10_000):
        g = _theorem4_graph(i % 2, rng)
        bad += not is_perfect(g)
    record(3, "10^4 nine-vertex graphs with a clique/DUoC or stable/multipartite split are perfect",
           bad == 0, f"{bad} imperfect")


# -- 4 and 7 ---------------------------------------------------------------------------------

FREENESS_TARGETS = [("C5", cycle_graph(5)), ("C7", cycle_graph(7)),
                    ("C8", cycle_graph(8)), ("P6", path_graph(6))]


@cache
def _freeness_runs() -> dict:
    """1000 extensions at n = 60 per (H, certificate); merge bound checked on each."""
    out = {}
    for name, h in FREENESS_TARGETS:
        for ci, cert in enumerate(known_certificates(h)):
            contained = 0
            merges = bound_ok = 0
            for t in range(1000):
                part = eqi_partition(60, len(cert), seed=derive_seed(60, ci, t, 0))
                pat = sample_pattern(part, cert, derive_seed(60, ci, t, 1))
                g = extend_pattern(pat, derive_seed(60, ci, t, 2))
                contained += contains_induced(g, h)
                cols = [color_part(f, p) for f, p in zip(cert.families, pat.parts)]
                b = max(c.max_class_size for c in cols)
                omega = clique_number(g)
                try:
                    res = merge_all(cols, pat, g, omega, b)
                except ValueError:
                    continue  # an input part needs more than omega colours
                if res.success:
                    merges += 1
                    c = res.coloring
                    w = len(cert)
                    bound_ok += (c.is_proper(g.induced(res.block)) and c.used_colors <= omega
                                 and c.max_class_size <= 2 ** (w - 1) * b and len(res.block) == g.n)
            out[(name, ci)] = {"contained": contained, "merges": merges, "boundOk": bound_ok}
    return out


def test_criterion_04_certified_extensions_are_h_free():
    t0 = time.perf_counter()
    runs = _freeness_runs()
    elapsed = time.perf_counter() - t0
    bad = {k: v["contained"] for k, v in runs.items() if v["contained"]}
    record(4, "1000 certified-pattern extensions at n=60 are H-free for C5, C7, C8, P6",
           not bad and elapsed < 1200, f"{len(runs)} certificates, violations {bad}, {elapsed:.0f} s")


@cache
def _merge_stats_report():
    cfg = ExperimentConfig("merge-stats", trials=500, seed=8, b=2, w_values=(2,), c_values=(20, 40, 80))
    return cmd_merge_stats(cfg)


def test_criterion_07_merge_bound():
    runs = _freeness_runs()
    merges = sum(v["merges"] for v in runs.values())
    ok = sum(v["boundOk"] for v in runs.values())
    # merge-stats raises AssertionError on any successful merge that breaks the bound
    try:
        rep = _merge_stats_report()
        stats_ok = True
        stats_merges = sum(r["trials"] - r["failures"] for r in rep.rows)
    except AssertionError:
        stats_ok, stats_merges = False, 0
    record(7, "every successful merge is proper, within target colours, classes <= 2^(w-1) b",
           merges == ok and stats_ok,
           f"{ok}/{merges} pipeline merges and {stats_merges} merge-stats merges checked")


# -- 5 ---------------------------------------------------------------------------------

def test_criterion_05_counts_match_enumeration():
    mismatches = []
    for cls in COUNTABLE:
        for n in range(7):
            brute = sum(is_member(Graph.from_code(n, c), cls) for c in range(2 ** num_pairs(n)))
            if brute != family_count(cls, n):
                mismatches.append((cls.value, n))
        census7 = enumerate_graphs(7, obstructions(cls)).passing
        if census7 != family_count(cls, 7):
            mismatches.append((cls.value, 7))
    anchors = (family_count(FamilyClass.COMPLEMENT_OF_MATCHING, 4),
               family_count(FamilyClass.DISJOINT_UNION_OF_CLIQUES, 4))
    record(5, "family_count equals brute-force census counts for n <= 7 (I(4)=10, B(4)=15)",
           not mismatches and anchors == (10, 15), f"mismatches {mismatches}, anchors {anchors}")


# -- 6 ---------------------------------------------------------------------------------

def test_criterion_06_hall_certificates():
    rng = random.Random(6)
    disagree = unsound = 0
    for _ in range(1000):
        k = rng.randint(1, 12)
        p = rng.random()
        aux = AuxiliaryBigraph.from_rows(
            [sum(1 << j for j in range(k) if rng.random() < p) for _ in range(k)])
        res = perfect_matching(aux)
        disagree += res.perfect != (hall_violator_exhaustive(aux) is None)
        if not res.perfect:
            unsound += not is_hall_violator(aux, res.violator)
    record(6, "perfect_matching verdicts match the exhaustive Hall oracle; violators sound",
           disagree == 0 and unsound == 0, f"{disagree} disagreements, {unsound} unsound violators")


# -- 8 ---------------------------------------------------------------------------------

def test_criterion_08_failure_rate_trend():
    rep = _merge_stats_report()
    rates = [r["failureRate"] for r in rep.rows]
    monotone = all(a >= b for a, b in zip(rates, rates[1:]))
    record(8, "merge failure rate non-increasing over c = 20, 40, 80 and < 0.1 at c = 80",
           monotone and rates[-1] < 0.1, f"rates {rates}")


# -- 9 ---------------------------------------------------------------------------------

def test_criterion_09_c6_lower_bounds():
    rep = cmd_c6(ExperimentConfig("c6", trials=100, seed=9, v2_sizes=(100,)))
    alpha_ok = all(r["alphaV2"] <= 2 for r in rep.rows)
    total_ok = all(r["colorsTotal"] >= 51 for r in rep.rows)
    v2_ok = all(r["colorsV2"] >= 50 for r in rep.rows)
    record(9, "C6 construction at |V2|=100: alpha(G[V2]) <= 2 and >= 51 colours (1 + pair colours of V2)",
           alpha_ok and total_ok and v2_ok,
           f"min colours on V2 {min(r['colorsV2'] for r in rep.rows)}, "
           f"min total {min(r['colorsTotal'] for r in rep.rows)}")


# -- 10 ---------------------------------------------------------------------------------

def test_criterion_10_chi_equals_omega_trend():
    fracs = []
    for n in (4, 5, 6, 7):
        rec = enumerate_graphs(n, cycle_graph(5), [STAT_CHI_EQ_OMEGA])
        fracs.append(rec.fraction(STAT_CHI_EQ_OMEGA))
    monotone = all(a <= b for a, b in zip(fracs, fracs[1:]))
    record(10, "fraction of C5-free graphs with chi = omega nondecreasing over n = 4..7",
           monotone, "fractions " + ", ".join(f"{f:.6f}" for f in fracs))
