"""Command-line entry point: ``weightlab <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import experiments as E
from .geometry import GridCircle
from .weights import Weight, read_weight_csv

SUBCOMMANDS = ("hardy-sharpness", "weighted-sharpness", "dyadic-suite", "buckley-a2",
               "riesz-constant", "ap-const", "oracle-diff", "sparse-growth")


def read_config(path: str) -> dict:
    """key=value lines; '#' starts a comment. Keys use flag names without dashes."""
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line without '=': {raw!r}")
        k, v = (s.strip() for s in line.split("=", 1))
        out[k.replace("-", "_")] = v
    return out


def _floats(text: str) -> tuple:
    return tuple(float(x) for x in str(text).split(",") if x.strip())


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weightlab", description="Weighted Bergman/Cauchy experiments")
    ap.add_argument("command", choices=SUBCOMMANDS)
    ap.add_argument("--grid-n", type=int, default=None, help="circle grid size (power of two)")
    ap.add_argument("--depth", type=int, default=None, help="radial depth of the polar grid")
    ap.add_argument("--modes", type=int, default=None, help="Taylor modes for extremal functions")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None, help="output path (stdout if omitted)")
    ap.add_argument("--format", choices=("csv", "json"), default="json")
    ap.add_argument("--config", default=None, help="key=value file overriding flag defaults")
    ap.add_argument("--p", type=float, default=None)
    ap.add_argument("--deltas", default=None, help="comma-separated delta sweep")
    ap.add_argument("--power", type=float, default=None, help="ap-const: power weight exponent")
    ap.add_argument("--weight-csv", default=None, help="ap-const: weight samples file")
    ap.add_argument("--workers", type=int, default=1)
    return ap


def parse_args(argv=None) -> argparse.Namespace:
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config:
        conf = read_config(known.config)
        dests = {a.dest: a for a in parser._actions}
        for k, v in conf.items():
            if k not in dests or k in ("command", "help"):
                parser.error(f"unknown config key {k!r}")
            kind = dests[k].type
            conf[k] = kind(v) if kind is not None else v
        # explicit flags still win: config only replaces defaults
        parser.set_defaults(**conf)
    return parser.parse_args(argv)


def run(args: argparse.Namespace) -> E.ExperimentReport:
    kw = {}
    if args.command == "hardy-sharpness":
        kw = dict(N=args.grid_n or 4096, depth=args.depth or 14, modes=args.modes,
                  workers=args.workers, seed=args.seed)
        return E.run_hardy_sharpness(**kw)
    if args.command == "weighted-sharpness":
        if args.deltas:
            kw["delta_list"] = _floats(args.deltas)
        return E.run_weighted_sharpness(p=args.p or 2.0, N=args.grid_n or 4096, depth=args.depth or 14,
                                        seed=args.seed, workers=args.workers, **kw)
    if args.command == "dyadic-suite":
        return E.run_dyadic_suite(N=args.grid_n or 256, seed=args.seed)
    if args.command == "sparse-growth":
        return E.run_sparse_growth(N=args.grid_n or 1024, seed=args.seed)
    if args.command == "buckley-a2":
        if args.deltas:
            kw["delta_list"] = _floats(args.deltas)
        return E.run_buckley_and_a2(N=args.grid_n or 4096, depth=args.depth or 10, seed=args.seed, **kw)
    if args.command == "riesz-constant":
        return E.run_riesz_constant(N=args.grid_n or 4096, seed=args.seed, workers=args.workers)
    if args.command == "oracle-diff":
        return E.run_oracle_diff(N=args.grid_n or 256, depth=args.depth or 8, seed=args.seed)
    if args.command == "ap-const":
        p = args.p or 2.0
        if args.weight_csv:
            w = read_weight_csv(args.weight_csv)
        else:
            g = GridCircle(args.grid_n or 4096)
            w = Weight.power_weight(g, args.power) if args.power is not None else Weight.constant(g)
        return E.run_ap_const(w, p)
    raise AssertionError(args.command)


def _jsonable(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"not serializable: {type(x)}")


def render(report: E.ExperimentReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, default=_jsonable)
    cols = []
    for row in report.rows:
        cols.extend(k for k in row if k not in cols)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for row in report.rows:
        w.writerow({k: _jsonable(v) if isinstance(v, (np.generic, np.ndarray)) else v
                    for k, v in row.items()})
    return buf.getvalue()


def main(argv=None) -> int:
    args = parse_args(argv)
    report = run(args)
    text = render(report, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text + ("" if text.endswith("\n") else "\n"))
    for c in report.checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.value:.6g} ({c.target})", file=sys.stderr)
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
