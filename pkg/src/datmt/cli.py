"""Command line front end: analyze one tree, check a document, run a benchmark.

Exit codes: 0 success, 1 usage error, 2 bad input, 3 the only failures were
per-instance timeouts.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

from . import bench as bench_mod
from .bottomup import mt_bu_checked
from .dsl import emit_result_json, parse_dat
from .enumerative import best_attack
from .errors import DatError
from .milp import export_model, solve_milp
from .model import Dat, big_m, check_well_formed, is_static, is_treelike
from .modular import mt_modular


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="datmt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="compute min time for one document")
    p_an.add_argument("file")
    p_an.add_argument("--algo", required=True,
                      choices=("bu", "enum", "milp", "mod-enum", "mod-milp"))
    p_an.add_argument("--export-lp", metavar="PATH",
                      help="also write the MILP model in LP format")
    p_an.add_argument("--json", action="store_true", help="print a JSON result object")

    p_ck = sub.add_parser("check", help="validate a document and report basic facts")
    p_ck.add_argument("file")

    p_be = sub.add_parser("bench", help="generate a suite and time the algorithms")
    p_be.add_argument("--nmin", required=True, metavar="A..B",
                      help="size range, e.g. 1..30")
    p_be.add_argument("--reps", type=int, default=5, metavar="K")
    p_be.add_argument("--seed", type=int, default=0, metavar="S")
    p_be.add_argument("--timeout-s", type=float, default=60.0, metavar="T")
    p_be.add_argument("--jobs", type=int, default=None, metavar="J",
                      help="worker processes (default: up to 8)")
    p_be.add_argument("--out", required=True, metavar="CSV")
    p_be.add_argument("--algos", default=",".join(bench_mod.DEFAULT_ALGOS),
                      help="comma-separated subset of bu,enum,milp,mod-enum,mod-milp")
    return parser


def _load(path: str) -> Dat:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DatError(f"cannot read {path}: {exc}") from exc
    return parse_dat(text)


def _analyze(args) -> int:
    dat = _load(args.file)
    if args.export_lp:
        Path(args.export_lp).write_text(export_model(dat), encoding="utf-8")

    witness = None
    start = time.perf_counter()
    if args.algo == "bu":
        value = mt_bu_checked(dat)
        if value is None:
            print("bottom-up is only exact for static or treelike trees; "
                  "use enum, milp or a modular variant", file=sys.stderr)
            return 2
    elif args.algo == "enum":
        value, witness = best_attack(dat)
    elif args.algo == "milp":
        result = solve_milp(dat)
        value, witness = result.value, result.witness
    elif args.algo == "mod-enum":
        value = mt_modular(dat, bench_mod.ALGORITHMS["enum"])
    else:
        value = mt_modular(dat, bench_mod.ALGORITHMS["milp"])
    wall_ms = (time.perf_counter() - start) * 1000.0

    if args.json:
        print(emit_result_json(dat, args.file, args.algo, value, witness, wall_ms))
    else:
        shown = "inf" if math.isinf(value) else f"{value:g}"
        print(f"{args.file}: min_time = {shown}  ({args.algo}, {wall_ms:.1f} ms)")
        if witness is not None:
            steps = ", ".join(sorted(dat.names[a] for a in witness.bas))
            print(f"witness steps: {steps}")
    return 0


def _check(args) -> int:
    dat = _load(args.file)
    static = is_static(dat)
    treelike = is_treelike(dat)
    if static or treelike:
        satisfiable = True  # every gate has a child, nothing can conflict
    else:
        satisfiable = not math.isinf(mt_modular(dat, bench_mod.ALGORITHMS["enum"]))
    print(f"nodes: {dat.n_nodes}")
    print(f"basic steps: {len(dat.bas_nodes)}")
    print(f"root: {dat.names[dat.root]}")
    print(f"treelike: {'yes' if treelike else 'no'}")
    print(f"static: {'yes' if static else 'no'}")
    print(f"well-formed: {'yes' if check_well_formed(dat) else 'no'}")
    print(f"big-M: {big_m(dat):g}")
    print(f"satisfiable: {'yes' if satisfiable else 'no'}")
    return 0


def _bench(args) -> int:
    try:
        lo_text, hi_text = args.nmin.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise _Usage(f"--nmin expects A..B, got {args.nmin!r}") from None
    algos = tuple(a.strip() for a in args.algos.split(",") if a.strip())
    for a in algos:
        if a not in bench_mod.ALGORITHMS:
            raise _Usage(f"unknown algorithm {a!r}")
    try:
        cfg = bench_mod.SuiteConfig(lo, hi, args.reps, args.seed, out_path=args.out)
    except ValueError as exc:
        raise _Usage(str(exc)) from None

    suite = bench_mod.generate_suite(cfg)
    records = bench_mod.run_bench(
        suite, algos, args.out, timeout_s=args.timeout_s, jobs=args.jobs)
    problems = bench_mod.check_agreement(records)
    timeouts = sum(1 for r in records if r.status == "timeout")

    print(f"instances: {len(suite)}  records: {len(records)}  timeouts: {timeouts}")
    print(f"records csv: {args.out}")
    print(f"summary csv: {bench_mod.summary_path(args.out)}")
    for label, algo, n, mean_log in bench_mod.summarize(records):
        print(f"  {label:>9}  {algo:<8} n={n:<4} mean_log10_s={mean_log:+.4f}")
    if problems:
        for p in problems:
            print(f"disagreement: {p}", file=sys.stderr)
        return 2
    if timeouts:
        return 3
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _Usage as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.command == "analyze":
            return _analyze(args)
        if args.command == "check":
            return _check(args)
        return _bench(args)
    except _Usage as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except DatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
