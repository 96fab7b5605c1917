#!/usr/bin/env python3
"""Run the standard experiment set and write CSV + JSON reports to an output directory.

    python scripts/reproduce.py --out results            # full runs
    python scripts/reproduce.py --out results --quick    # small smoke versions
    python scripts/reproduce.py --only census c6
"""

from __future__ import annotations

import argparse
import dataclasses
from pathlib import Path

from chibound.experiments import ExperimentConfig, run

FULL: dict[str, ExperimentConfig] = {
    "census_c5": ExperimentConfig("census", h_graph="C5", n_range=(3, 7)),
    "census_c4": ExperimentConfig("census", h_graph="C4", n_range=(3, 7)),
    "pipeline_c7": ExperimentConfig("pipeline", h_graph="C7", n=120, trials=200),
    "pipeline_c5": ExperimentConfig("pipeline", h_graph="C5", n=100, trials=200),
    "pipeline_p6": ExperimentConfig("pipeline", h_graph="P6", n=120, trials=200),
    "pipeline_c8": ExperimentConfig("pipeline", h_graph="C8", n=120, trials=100),
    "c6": ExperimentConfig("c6", trials=100, v2_sizes=(50, 100, 200)),
    "merge_stats": ExperimentConfig("merge-stats", trials=500, b=2, w_values=(1, 2, 3),
                                    c_values=(20, 40, 80)),
    "merge_stats_pairs": ExperimentConfig("merge-stats", trials=500, b=2, w_values=(2,),
                                          c_values=(20, 40, 80), class_size=2),
}

QUICK_OVERRIDES = {"trials": 5, "n_range": (3, 6)}


def quick(cfg: ExperimentConfig) -> ExperimentConfig:
    changes = {k: v for k, v in QUICK_OVERRIDES.items()
               if getattr(cfg, k) is not None and k in dataclasses.asdict(cfg)}
    if cfg.command == "c6":
        changes["v2_sizes"] = (30, 50)
    if cfg.command == "pipeline":
        changes["n"] = min(cfg.n, 60)
    return dataclasses.replace(cfg, **changes)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="results")
    ap.add_argument("--only", nargs="*", help="prefixes of experiment names to run")
    ap.add_argument("--quick", action="store_true")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, cfg in FULL.items():
        if args.only and not any(name.startswith(p) for p in args.only):
            continue
        cfg = dataclasses.replace(cfg, workers=args.workers, seed=args.seed)
        if args.quick:
            cfg = quick(cfg)
        report = run(cfg)
        (out / f"{name}.json").write_text(report.dumps())
        (out / f"{name}.csv").write_text(report.to_csv())
        print(f"{name}: {report.summary}")


if __name__ == "__main__":
    main()
