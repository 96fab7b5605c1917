#!/usr/bin/env python3
"""Minimal completions F(H, s, c) and |Forb(F)_n| for every shape one below wpn(H).

    python scripts/criticality.py C5 C7 P6 --n-max 6
"""

from __future__ import annotations

import argparse
import json

from chibound.experiments import parse_graph
from chibound.partitions import criticality_diagnostic


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("graphs", nargs="+")
    ap.add_argument("--n-max", type=int, default=6)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    for spec in args.graphs:
        rep = criticality_diagnostic(parse_graph(spec), args.n_max, workers=args.workers)
        print(json.dumps({"name": spec, **rep}, sort_keys=True))


if __name__ == "__main__":
    main()
