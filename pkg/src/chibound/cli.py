"""``chibound`` command line.

Exit codes: 0 success, 1 usage error, 2 internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .experiments import COMMANDS, ExperimentConfig, run

EXIT_OK, EXIT_USAGE, EXIT_ASSERT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _range(text: str) -> tuple[int, int]:
    sep = ".." if ".." in text else ("," if "," in text else "-")
    try:
        lo, hi = (int(x) for x in text.split(sep))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}") from exc
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--h-graph", default="C5", help="forbidden graph H (P6, C7, spider:2,2,1, g6:..., ...)")
    common.add_argument("--n", type=int)
    common.add_argument("--n-range", type=_range, help="inclusive range lo..hi")
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--mu", default="1/9")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out", help="output path (stdout when omitted)")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default="json")

    parser = _Parser(prog="chibound", description="Hereditary-family chi-boundedness experiments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("census", parents=[common], help="exhaustive H-free census")
    p.add_argument("--bound", type=int, default=8, help="largest n allowed")

    p = sub.add_parser("pipeline", parents=[common], help="certified-pattern extensions and merged colourings")
    p.add_argument("--certificate", type=int, default=0, help="index into the certificate list of H")
    p.add_argument("--spot-checks", type=int, default=3)

    p = sub.add_parser("c6", parents=[common], help="stable set + complement of a girth-5 graph")
    p.add_argument("--v2-sizes", type=_ints, default=(50, 100, 200))
    p.add_argument("--node-limit", type=int, default=200_000)

    p = sub.add_parser("merge-stats", parents=[common], help="merge failure rates over a (b, w, c) grid")
    p.add_argument("--b", type=int, default=2)
    p.add_argument("--w", dest="w_values", type=_ints, default=(2,))
    p.add_argument("--c", dest="c_values", type=_ints, default=(20, 40, 80))
    p.add_argument("--class-size", type=int, default=1)
    p.add_argument("--part-colors", type=int)

    sub.add_parser("wpn", parents=[common], help="witnessing partition number of H")

    p = sub.add_parser("freeness", parents=[common], help="induced containment of H in a graph")
    p.add_argument("--graph", required=True)

    p = sub.add_parser("sample", parents=[common], help="random class member as graph6 + JSON sidecar")
    p.add_argument("--family", required=True)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("completions", parents=[common], help="minimal completions of H for a shape")
    p.add_argument("--shape", type=_range, required=True, help="s,c as s..c or s-c")
    return parser


def _config(ns: argparse.Namespace) -> ExperimentConfig:
    fields = ExperimentConfig.__dataclass_fields__
    return ExperimentConfig(**{k: v for k, v in vars(ns).items() if k in fields})


def _emit(cfg: ExperimentConfig, report) -> None:
    if cfg.command == "sample":
        line = report.rows[0]["graph6"] + "\n"
        side = json.dumps(report.summary, sort_keys=True) + "\n"
        if cfg.out:
            Path(cfg.out).write_text(line)
            Path(cfg.out + ".json").write_text(side)
        else:
            sys.stdout.write(line + side)
        return
    text = report.to_csv() if cfg.fmt == "csv" else report.dumps()
    if cfg.out:
        out = Path(cfg.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
        if cfg.fmt == "csv":
            out.with_suffix(out.suffix + ".json").write_text(report.dumps())
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        if ns.command == "completions":
            ns.shape = tuple(ns.shape)
        cfg = _config(ns)
        report = run(cfg)
    except UsageError as exc:
        print(f"chibound: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"chibound: invariant violated: {exc}", file=sys.stderr)
        return EXIT_ASSERT
    except ValueError as exc:
        print(f"chibound: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(cfg, report)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())


__all__ = ["COMMANDS", "build_parser", "main"]
