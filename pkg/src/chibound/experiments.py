"""Experiment drivers behind the command line: censuses, certified-pattern
pipelines, the C6 construction and merge-failure statistics.

Every driver takes an ``ExperimentConfig`` and returns a ``Report`` whose JSON
form depends only on the config and ``CODE_VERSION`` (no timestamps).
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from collections.abc import Callable, Sequence
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from multiprocessing import Pool

from statsmodels.stats.proportion import proportion_confint

from .census import (
    CODE_VERSION,
    DEFAULT_CENSUS_BOUND,
    NAMED_STATS,
    STAT_CERTIFIED,
    enumerate_graphs,
)
from .families import (
    FamilyClass,
    find_induced,
    is_member,
)
from .graph import (
    Graph,
    complete_graph,
    cycle_graph,
    double_star,
    path_graph,
    petersen_graph,
    spider_graph,
    star_graph,
)
from .invariants import (
    Coloring,
    SearchLimitExceeded,
    clique_number,
    independence_number,
    is_perfect,
    maximum_matching,
    maximum_stable_set,
    pair_coloring,
)
from .merge import merge_all, union_coloring
from .partitions import (
    DEFAULT_MU,
    PartitionShape,
    known_certificates,
    minimal_completions,
    wpn_report,
)
from .sampling import (
    Pattern,
    derive_seed,
    eqi_partition,
    extend_pattern,
    sample_girth5,
    sample_member,
    sample_pattern,
    sampler_tag,
)

# -- named graphs ----------------------------------------------------------------------

_SIMPLE = {"P": path_graph, "C": cycle_graph, "K": complete_graph, "S": star_graph}


def parse_graph(spec: str) -> Graph:
    """Graph from a short name.

    ``P6``, ``C7``, ``K3``, ``S4`` (star with 4 leaves), ``spider:2,2,1``
    (legs of the given lengths), ``dstar:2,3`` (double star), ``petersen``,
    ``co:<name>`` (complement), ``g6:<graph6>``, or bare graph6.
    """
    spec = spec.strip()
    if spec.startswith("co:"):
        return parse_graph(spec[3:]).complement()
    if spec.startswith("g6:"):
        return Graph.from_graph6(spec[3:])
    if spec.lower() == "petersen":
        return petersen_graph()
    m = re.fullmatch(r"(spider|dstar):([\d,\s]+)", spec)
    if m:
        nums = [int(x) for x in m.group(2).split(",") if x.strip()]
        if m.group(1) == "spider":
            return spider_graph(nums)
        if len(nums) != 2:
            raise ValueError("dstar needs two leaf counts")
        return double_star(*nums)
    m = re.fullmatch(r"([PCKS])_?(\d+)", spec)
    if m:
        return _SIMPLE[m.group(1)](int(m.group(2)))
    try:
        return Graph.from_graph6(spec)
    except Exception as exc:
        raise ValueError(f"unknown graph {spec!r}") from exc


# -- config and report ---------------------------------------------------------------------

@dataclass
class ExperimentConfig:
    command: str
    h_graph: str = "C5"
    n: int | None = None
    n_range: tuple[int, int] | None = None
    trials: int = 100
    seed: int = 0
    mu: str = str(DEFAULT_MU)
    workers: int = 1
    out: str | None = None
    fmt: str = "json"
    # command-specific knobs
    certificate: int = 0
    bound: int = DEFAULT_CENSUS_BOUND
    v2_sizes: tuple[int, ...] = (50, 100, 200)
    b: int = 2
    w_values: tuple[int, ...] = (2,)
    c_values: tuple[int, ...] = (20, 40, 80)
    class_size: int = 1
    part_colors: int | None = None
    spot_checks: int = 3
    family: str | None = None
    m: int | None = None
    shape: tuple[int, int] | None = None
    graph: str | None = None
    node_limit: int = 200_000

    def __post_init__(self):
        for name in ("trials", "workers", "b", "class_size", "spot_checks", "node_limit", "bound"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.n is not None and self.n < 1:
            raise ValueError("n must be positive")
        if self.n_range is not None:
            lo, hi = self.n_range
            if lo < 1 or hi < lo:
                raise ValueError("n-range must be lo..hi with 1 <= lo <= hi")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")
        mu = Fraction(self.mu)
        if not 0 < mu <= 1:
            raise ValueError("mu must lie in (0, 1]")
        if self.fmt not in ("csv", "json"):
            raise ValueError("format must be csv or json")

    @property
    def mu_value(self) -> Fraction:
        return Fraction(self.mu)

    def n_values(self) -> list[int]:
        if self.n_range is not None:
            return list(range(self.n_range[0], self.n_range[1] + 1))
        if self.n is not None:
            return [self.n]
        raise ValueError("this command needs --n or --n-range")

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("out")
        return {k: list(v) if isinstance(v, tuple) else v for k, v in d.items()}


@dataclass
class Report:
    config: dict
    rows: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"config": self.config, "rows": self.rows, "summary": self.summary,
                "provenance": {"codeVersion": CODE_VERSION, **self.provenance}}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# chibound-{self.config.get('command', 'report')} v{CODE_VERSION}\n")
        cols: list[str] = []
        for r in self.rows:
            cols += [k for k in r if k not in cols]
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for r in self.rows:
            writer.writerow([_csv_cell(r.get(c, "")) for c in cols])
        return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return v


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers > 1 and len(items) > 1:
        with Pool(workers) as pool:
            return pool.map(fn, items)
    return [fn(x) for x in items]


def _mean(xs: Sequence[float | None]) -> float | None:
    xs = [x for x in xs if x is not None]
    return sum(xs) / len(xs) if xs else None


def _nondecreasing(xs: Sequence[float]) -> bool:
    return all(a <= b for a, b in zip(xs, xs[1:]))


def _nonincreasing(xs: Sequence[float]) -> bool:
    return all(a >= b for a, b in zip(xs, xs[1:]))


# -- census ------------------------------------------------------------------------------

def cmd_census(cfg: ExperimentConfig) -> Report:
    h = parse_graph(cfg.h_graph)
    try:
        certs = [c.families for c in known_certificates(h)]
    except ValueError:
        certs = []
    stats = [s for s in NAMED_STATS if s != STAT_CERTIFIED or certs]
    rows = []
    for n in cfg.n_values():
        rec = enumerate_graphs(n, h, stats, certs, workers=cfg.workers, bound=cfg.bound)
        row = {"n": n, "total": rec.total_graphs, "hFree": rec.passing, **rec.statistics}
        for s in stats[1:]:
            row["frac_" + s] = rec.fraction(s) if rec.passing else None
        rows.append(row)
    fracs = [r["frac_countChiEqOmega"] for r in rows if r["hFree"]]
    summary = {
        "chiEqOmegaNondecreasing": _nondecreasing(fracs),
        "certificates": [[f.value for f in c] for c in certs],
    }
    return Report(cfg.to_json(), rows, summary, {"filter": "free:" + h.to_graph6()})


# -- certified-pattern pipeline --------------------------------------------------------------

def color_part(cls: FamilyClass, g: Graph) -> Coloring:
    """Singletons for a clique, one class for a stable set, otherwise pairs of
    non-adjacent vertices from a maximum matching of the complement."""
    cls = FamilyClass.parse(cls)
    if cls is FamilyClass.CLIQUE:
        return Coloring(tuple(range(g.n)), g.n)
    if cls is FamilyClass.STABLE_SET:
        return Coloring((0,) * g.n, 1 if g.n else 0)
    return pair_coloring(g)


def _pipeline_trial(args) -> dict:
    cfg, n, h, cert, t = args
    partition = eqi_partition(n, len(cert), cfg.mu_value, derive_seed(cfg.seed, t, 0))
    pattern = sample_pattern(partition, cert, derive_seed(cfg.seed, t, 1))
    g = extend_pattern(pattern, derive_seed(cfg.seed, t, 2))
    embedding = find_induced(g, h)
    if embedding is not None:
        raise AssertionError(f"trial {t}: extension contains H at {sorted(embedding.values())}")
    classified = all(is_member(p, f) for p, f in zip(pattern.parts, cert.families))
    omega = clique_number(g)
    colorings = [color_part(f, p) for f, p in zip(cert.families, pattern.parts)]
    b = max((c.max_class_size for c in colorings), default=1) or 1
    try:
        out = merge_all(colorings, pattern, g, omega, b)
        merged = out.success
        stage = out.stage
    except ValueError:
        merged, stage, out = False, 0, None
    if merged:
        final = out.coloring
        full = tuple(final.assignment[out.block.index(v)] for v in range(g.n))
        final = Coloring(full, final.num_colors)
    else:
        final = union_coloring(colorings, partition.blocks)
    if not final.is_proper(g):
        raise AssertionError(f"trial {t}: final colouring is not proper")
    row = {
        "trial": t,
        "omega": omega,
        "b": b,
        "merged": merged,
        "failedStage": stage,
        "colors": final.used_colors,
        "chiEqOmegaWitnessed": final.used_colors == omega,
        "hFree": True,
        "partsClassified": classified,
        # disjoint stable pairs available in the pair-coloured parts, against n^(1 - mu/2)
        "minStablePairs": min((sum(1 for x in c.class_sizes if x == 2)
                               for f, c in zip(cert.families, colorings)
                               if f not in (FamilyClass.CLIQUE, FamilyClass.STABLE_SET)), default=None),
        "stablePairsTarget": n ** (1 - float(cfg.mu_value) / 2),
    }
    if cfg.h_graph.upper() == "C5":
        import random
        rng = random.Random(derive_seed(cfg.seed, t, 3))
        ok = 0
        for _ in range(cfg.spot_checks):
            sub = rng.sample(range(g.n), min(9, g.n))
            ok += is_perfect(g.induced(sorted(sub)))
        row["spotPerfect"] = ok
        if ok != cfg.spot_checks:
            raise AssertionError(f"trial {t}: imperfect induced sample")
    return row


def cmd_pipeline(cfg: ExperimentConfig) -> Report:
    h = parse_graph(cfg.h_graph)
    certs = known_certificates(h)
    if not 0 <= cfg.certificate < len(certs):
        raise ValueError(f"certificate index must be below {len(certs)}")
    cert = certs[cfg.certificate]
    n = cfg.n_values()[0]
    if n < len(cert):
        raise ValueError("n must be at least the number of blocks")
    rows = _map(_pipeline_trial, [(cfg, n, h, cert, t) for t in range(cfg.trials)], cfg.workers)
    k = len(rows)
    summary = {
        "certificate": cert.to_json(),
        "trials": k,
        "allHFree": all(r["hFree"] for r in rows),
        "mergeSuccessRate": sum(r["merged"] for r in rows) / k,
        "chiEqOmegaRate": sum(r["chiEqOmegaWitnessed"] for r in rows) / k,
        "partsClassifiedRate": sum(r["partsClassified"] for r in rows) / k,
    }
    prov = {"samplers": {f.value: sampler_tag(f) for f in cert.families}}
    return Report(cfg.to_json(), rows, summary, prov)


# -- C6 construction -----------------------------------------------------------------------

def _c6_trial(args) -> dict:
    cfg, m, t = args
    partition = eqi_partition(2 * m, 2, cfg.mu_value, derive_seed(cfg.seed, m, t, 0))
    f = sample_girth5(m, derive_seed(cfg.seed, m, t, 1))
    pattern = Pattern(partition, (Graph(m, (0,) * m), f.complement()))
    g = extend_pattern(pattern, derive_seed(cfg.seed, m, t, 2))
    v2 = partition.blocks[1]
    gv2 = g.induced(v2)
    alpha_v2 = independence_number(gv2)
    nu = len(maximum_matching(f))
    pc = pair_coloring(gv2)
    colors_v2 = pc.used_colors
    total = union_coloring([Coloring((0,) * m, 1), pc], partition.blocks)
    if not total.is_proper(g):
        raise AssertionError(f"|V2|={m} trial {t}: combined colouring is not proper")
    try:
        omega_lo = omega_hi = len(maximum_stable_set(f, cfg.node_limit))
        exact = True
    except SearchLimitExceeded as e:
        omega_lo, omega_hi, exact = e.lower, min(e.upper, m - nu), False
    ratio_den = omega_lo ** 2 / math.log(omega_lo) if omega_lo > 1 else None
    return {
        "v2": m,
        "trial": t,
        "alphaV2": alpha_v2,
        "colorsV2": colors_v2,
        "colorsTotal": total.used_colors,
        "colorLowerBoundOk": colors_v2 >= math.ceil(m / 2) and total.used_colors >= math.ceil(m / 2) + 1,
        "omegaV2Lower": omega_lo,
        "omegaV2Upper": omega_hi,
        "omegaExact": exact,
        "ratioColorsOverOmegaSqLog": total.used_colors / ratio_den if ratio_den else None,
        "omegaOverSqrtLLogL": omega_lo / math.sqrt(m * math.log(m)),
    }


def cmd_c6(cfg: ExperimentConfig) -> Report:
    jobs = [(cfg, m, t) for m in cfg.v2_sizes for t in range(cfg.trials)]
    rows = _map(_c6_trial, jobs, cfg.workers)
    trend = []
    for m in cfg.v2_sizes:
        rs = [r for r in rows if r["v2"] == m]
        trend.append({
            "v2": m,
            "meanColorsTotal": sum(r["colorsTotal"] for r in rs) / len(rs),
            "meanOmegaV2Lower": sum(r["omegaV2Lower"] for r in rs) / len(rs),
            "meanRatio": _mean([r["ratioColorsOverOmegaSqLog"] for r in rs]),
            "meanOmegaOverSqrtLLogL": sum(r["omegaOverSqrtLLogL"] for r in rs) / len(rs),
        })
    summary = {
        "alphaV2AtMost2": all(r["alphaV2"] <= 2 for r in rows),
        "colorLowerBoundsHold": all(r["colorLowerBoundOk"] for r in rows),
        "trend": trend,
    }
    return Report(cfg.to_json(), rows, summary, {"samplers": {"ComplementOfGirth5": "greedy"}})


# -- merge statistics --------------------------------------------------------------------------

def _classes_pattern(w: int, c: int, size: int, part_colors: int, seed: int) -> tuple[Pattern, list[Coloring]]:
    """w blocks of part_colors * size vertices, each a complete multipartite graph
    with part_colors classes of the given size (cliques when size is 1)."""
    per = part_colors * size
    partition = eqi_partition(w * per, w, Fraction(1), seed)
    parts, colorings = [], []
    for _ in range(w):
        assignment = tuple(v // size for v in range(per))
        parts.append(Graph.build(per, [(u, v) for v in range(per) for u in range(v)
                                       if assignment[u] != assignment[v]]))
        colorings.append(Coloring(assignment, part_colors))
    return Pattern(partition, tuple(parts)), colorings


def _merge_trial(args) -> tuple[bool, bool]:
    cfg, b, w, c, t = args
    part_colors = cfg.part_colors or c
    pattern, colorings = _classes_pattern(w, c, cfg.class_size, part_colors,
                                          derive_seed(cfg.seed, b, w, c, t, 0))
    g = extend_pattern(pattern, derive_seed(cfg.seed, b, w, c, t, 1))
    out = merge_all(colorings, pattern, g, c, b)
    if out.success:
        full = dict(zip(out.block, out.coloring.assignment))
        merged = Coloring(tuple(full[v] for v in range(g.n)), out.coloring.num_colors)
        if not (merged.is_proper(g) and merged.used_colors <= c
                and merged.max_class_size <= (1 << (w - 1)) * b):
            raise AssertionError(f"cell b={b} w={w} c={c} trial {t}: merge bound violated")
    return out.success


def cmd_merge_stats(cfg: ExperimentConfig) -> Report:
    if cfg.class_size > cfg.b:
        raise ValueError(f"class size {cfg.class_size} exceeds b={cfg.b}")
    for c in cfg.c_values:
        if cfg.part_colors is not None and cfg.part_colors > c:
            raise ValueError(f"parts use {cfg.part_colors} colours but the target is {c}")
    rows = []
    for w in cfg.w_values:
        for c in cfg.c_values:
            jobs = [(cfg, cfg.b, w, c, t) for t in range(cfg.trials)]
            res = _map(_merge_trial, jobs, cfg.workers)
            fails = sum(1 for ok in res if not ok)
            lo, hi = proportion_confint(fails, cfg.trials, alpha=0.05, method="wilson")
            rows.append({"b": cfg.b, "w": w, "c": c, "classSize": cfg.class_size,
                         "trials": cfg.trials, "failures": fails,
                         "failureRate": fails / cfg.trials,
                         "wilsonLow": float(lo), "wilsonHigh": float(hi)})
    monotone = {
        str(w): _nonincreasing([r["failureRate"] for r in rows if r["w"] == w])
        for w in cfg.w_values
    }
    return Report(cfg.to_json(), rows, {"nonincreasingInC": monotone})


# -- small utilities -------------------------------------------------------------------------

def cmd_wpn(cfg: ExperimentConfig) -> Report:
    h = parse_graph(cfg.h_graph)
    rep = wpn_report(h)
    try:
        certs = [c.to_json() for c in known_certificates(h)]
    except ValueError:
        certs = []
    row = {"h": h.to_graph6(), "n": h.n, **rep, "certificates": certs}
    return Report(cfg.to_json(), [row], {"wpn": rep["wpn"]})


def cmd_freeness(cfg: ExperimentConfig) -> Report:
    if cfg.graph is None:
        raise ValueError("freeness needs --graph")
    h = parse_graph(cfg.h_graph)
    g = parse_graph(cfg.graph)
    phi = find_induced(g, h)
    row = {"g": g.to_graph6(), "h": h.to_graph6(), "hFree": phi is None,
           "embedding": None if phi is None else [phi[x] for x in range(h.n)]}
    return Report(cfg.to_json(), [row], {"hFree": phi is None})


def cmd_sample(cfg: ExperimentConfig) -> Report:
    if cfg.family is None or cfg.m is None:
        raise ValueError("sample needs --family and --m")
    cls = FamilyClass.parse(cfg.family)
    g = sample_member(cls, cfg.m, cfg.seed)
    sidecar = {"class": cls.value, "m": cfg.m, "seed": cfg.seed, "sampler": sampler_tag(cls)}
    return Report(cfg.to_json(), [{"graph6": g.to_graph6(), **sidecar}], sidecar)


def cmd_completions(cfg: ExperimentConfig) -> Report:
    if cfg.shape is None:
        raise ValueError("completions needs --shape s,c")
    h = parse_graph(cfg.h_graph)
    shape = PartitionShape(*cfg.shape)
    comps = minimal_completions(h, shape)
    rows = [{"graph6": f.to_graph6(), "n": f.n, "edges": f.num_edges()} for f in comps]
    return Report(cfg.to_json(), rows, {"count": len(rows), "shape": list(shape)})


COMMANDS: dict[str, Callable[[ExperimentConfig], Report]] = {
    "census": cmd_census,
    "pipeline": cmd_pipeline,
    "c6": cmd_c6,
    "merge-stats": cmd_merge_stats,
    "wpn": cmd_wpn,
    "freeness": cmd_freeness,
    "sample": cmd_sample,
    "completions": cmd_completions,
}


def run(cfg: ExperimentConfig) -> Report:
    return COMMANDS[cfg.command](cfg)


__all__ = [
    "COMMANDS", "ExperimentConfig", "Report", "color_part",
    "parse_graph", "run", "cmd_c6", "cmd_census", "cmd_completions", "cmd_freeness",
    "cmd_merge_stats", "cmd_pipeline", "cmd_sample", "cmd_wpn",
]
