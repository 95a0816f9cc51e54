"""Suite generation and four-way timing comparison with CSV output.

Suites are grown by repeatedly gluing random blocks together: a fresh root
with a random gate type over the two old roots, plus one basic step of each
part identified (it gets a new random duration), so every composite shares
at least one step between its parts.  Records carry wall time per
(instance, algorithm); a companion summary aggregates mean log10 time per
20-node size bucket.  Everything except wall time is seed-deterministic.
"""

from __future__ import annotations

import csv
import math
import multiprocessing
import os
import random
import signal
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from . import blocks
from .bottomup import mt_bu_checked
from .dsl import parse_dat, serialize_dat
from .enumerative import mt_enum
from .milp import mt_milp
from .model import Dat, GateType, build_dat
from .modular import mt_modular

CSV_HEADER = ["id", "n_nodes", "n_bas", "algo", "min_time", "wall_ms", "status"]
SUMMARY_HEADER = ["bucket", "algo", "n", "mean_log10_s"]
BUCKET_WIDTH = 20

ALGORITHMS: dict[str, callable] = {
    "bu": mt_bu_checked,
    "enum": mt_enum,
    "milp": mt_milp,
    "mod-enum": lambda dat: mt_modular(dat, mt_enum),
    "mod-milp": lambda dat: mt_modular(dat, mt_milp),
}
DEFAULT_ALGOS = ("bu", "enum", "milp", "mod-enum", "mod-milp")


@dataclass(frozen=True)
class SuiteConfig:
    n_min_lo: int
    n_min_hi: int
    repetitions: int
    seed: int
    blocks: tuple[str, ...] = blocks.BLOCK_NAMES
    out_path: str | None = None

    def __post_init__(self):
        if self.n_min_lo < 1 or self.n_min_hi < self.n_min_lo:
            raise ValueError("need 1 <= low <= high for the size range")
        if self.repetitions < 1:
            raise ValueError("repetitions must be positive")


@dataclass
class BenchRecord:
    dat_id: str
    n_nodes: int
    n_bas: int
    algo: str
    min_time: float | None     # None when there is no value (timeout etc.)
    wall_ms: float
    status: str                # ok | unsat | timeout | inapplicable


def _instantiate(name: str, tag: int) -> Dat:
    """Fresh copy of a block with instance-unique node names."""
    base = blocks.block(name)
    prefix = f"t{tag}_"
    nodes = [(prefix + base.names[v], base.types[v]) for v in range(base.n_nodes)]
    children = {
        prefix + base.names[v]: [prefix + base.names[c] for c in base.children[v]]
        for v in range(base.n_nodes) if not base.is_bas(v)
    }
    durations = {prefix + base.names[v]: d for v, d in base.durations.items()}
    return build_dat(nodes, children, durations)


def combine(t1: Dat, t2: Dat, rng: random.Random) -> Dat:
    """Glue two trees under a fresh random-type root and share one step.

    A random basic step of each part is identified (keeping the first
    part's name) and redrawn uniformly from [1, 10]; the shared step gives
    the result two parents, so it is never treelike.
    """
    gate = rng.choice((GateType.OR, GateType.AND, GateType.SAND))
    b1 = t1.names[rng.choice(sorted(t1.bas_nodes))]
    b2 = t2.names[rng.choice(sorted(t2.bas_nodes))]
    shared_duration = rng.uniform(1.0, 10.0)

    used = set(t1.names) | set(t2.names)
    k = 0
    while f"c{k}" in used:
        k += 1
    root_name = f"c{k}"

    def rename(name: str) -> str:
        return b1 if name == b2 else name

    nodes = [(t1.names[v], t1.types[v]) for v in range(t1.n_nodes)]
    nodes += [
        (t2.names[v], t2.types[v]) for v in range(t2.n_nodes) if t2.names[v] != b2
    ]
    nodes.append((root_name, gate))

    children = {
        t1.names[v]: [t1.names[c] for c in t1.children[v]]
        for v in range(t1.n_nodes) if not t1.is_bas(v)
    }
    children.update({
        t2.names[v]: [rename(t2.names[c]) for c in t2.children[v]]
        for v in range(t2.n_nodes) if not t2.is_bas(v)
    })
    children[root_name] = [t1.names[t1.root], rename(t2.names[t2.root])]

    durations = {t1.names[v]: d for v, d in t1.durations.items()}
    durations.update({t2.names[v]: d for v, d in t2.durations.items() if t2.names[v] != b2})
    durations[b1] = shared_duration

    return build_dat(nodes, children, durations, root_hint=root_name)


def generate_suite(cfg: SuiteConfig) -> list[tuple[str, Dat]]:
    """Deterministic list of (id, tree): grow by combining until big enough."""
    master = random.Random(cfg.seed)
    suite = []
    tag = 0
    for n_min in range(cfg.n_min_lo, cfg.n_min_hi + 1):
        for rep in range(cfg.repetitions):
            rng = random.Random(master.getrandbits(64))
            tag += 1
            dat = _instantiate(rng.choice(cfg.blocks), tag)
            while dat.n_nodes < n_min:
                tag += 1
                dat = combine(dat, _instantiate(rng.choice(cfg.blocks), tag), rng)
            suite.append((f"n{n_min:03d}r{rep}", dat))
    return suite


class _Timeout(Exception):
    pass


def _timed_run(fn, dat: Dat, budget_s: float):
    """(value, wall_ms, timed_out); SIGALRM-based, main thread only."""
    use_alarm = (
        budget_s > 0
        and math.isfinite(budget_s)
        and threading.current_thread() is threading.main_thread()
    )
    if use_alarm:
        def _handler(signum, frame):
            raise _Timeout()
        previous = signal.signal(signal.SIGALRM, _handler)
        signal.setitimer(signal.ITIMER_REAL, budget_s)
    start = time.perf_counter()
    try:
        value = fn(dat)
        timed_out = False
    except _Timeout:
        value = None
        timed_out = True
    finally:
        if use_alarm:
            signal.setitimer(signal.ITIMER_REAL, 0.0)
            signal.signal(signal.SIGALRM, previous)
    wall_ms = (time.perf_counter() - start) * 1000.0
    return value, wall_ms, timed_out


def _bench_task(task) -> BenchRecord:
    dat_id, text, n_nodes, n_bas, algo, timeout_s = task
    dat = parse_dat(text)
    value, wall_ms, timed_out = _timed_run(ALGORITHMS[algo], dat, timeout_s)
    if timed_out:
        status, min_time = "timeout", None
    elif value is None:
        status, min_time = "inapplicable", None
    elif math.isinf(value):
        status, min_time = "unsat", value
    else:
        status, min_time = "ok", value
    return BenchRecord(dat_id, n_nodes, n_bas, algo, min_time, wall_ms, status)


def run_bench(
    suite: list[tuple[str, Dat]],
    algorithms=DEFAULT_ALGOS,
    out_csv: str | Path | None = None,
    timeout_s: float = 60.0,
    jobs: int | None = None,
) -> list[BenchRecord]:
    """Run every selected algorithm on every instance; optionally write CSV.

    Instances are independent, so with ``jobs`` > 1 they run in worker
    processes; each record is still timed single-threaded inside its worker
    and the record order stays deterministic.
    """
    tasks = [
        (dat_id, serialize_dat(dat), dat.n_nodes, len(dat.bas_nodes), algo, timeout_s)
        for dat_id, dat in suite
        for algo in algorithms
    ]
    if jobs is None:
        jobs = min(8, os.cpu_count() or 1)
    if jobs <= 1 or len(tasks) <= 1:
        records = [_bench_task(t) for t in tasks]
    else:
        with multiprocessing.get_context("fork").Pool(jobs) as pool:
            records = pool.map(_bench_task, tasks, chunksize=1)
    if out_csv is not None:
        write_records_csv(records, out_csv)
        write_summary_csv(summarize(records), summary_path(out_csv))
    return records


def _format_min_time(record: BenchRecord) -> str:
    if record.min_time is None:
        return ""
    if math.isinf(record.min_time):
        return "inf"
    return repr(record.min_time)


def write_records_csv(records, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER)
        for r in records:
            w.writerow([
                r.dat_id, r.n_nodes, r.n_bas, r.algo,
                _format_min_time(r), f"{r.wall_ms:.3f}", r.status,
            ])


def summary_path(out_csv) -> Path:
    p = Path(out_csv)
    return p.with_name(p.stem + ".summary.csv")


def bucket_label(n_nodes: int) -> str:
    lo = ((n_nodes - 1) // BUCKET_WIDTH) * BUCKET_WIDTH + 1
    return f"{lo}-{lo + BUCKET_WIDTH - 1}"


def summarize(records) -> list[tuple[str, str, int, float]]:
    """Mean log10 wall seconds per (size bucket, algorithm), completed runs only."""
    groups: dict[tuple[int, str], list[float]] = {}
    for r in records:
        if r.status in ("ok", "unsat"):
            key = ((r.n_nodes - 1) // BUCKET_WIDTH, r.algo)
            groups.setdefault(key, []).append(max(r.wall_ms / 1000.0, 1e-7))
    rows = []
    for (bucket, algo), walls in sorted(groups.items()):
        mean_log = sum(math.log10(w) for w in walls) / len(walls)
        label = f"{bucket * BUCKET_WIDTH + 1}-{(bucket + 1) * BUCKET_WIDTH}"
        rows.append((label, algo, len(walls), mean_log))
    return rows


def write_summary_csv(rows, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(SUMMARY_HEADER)
        for label, algo, n, mean_log in rows:
            w.writerow([label, algo, n, f"{mean_log:.4f}"])


def check_agreement(records) -> list[str]:
    """Cross-algorithm consistency: one message per disagreeing instance."""
    by_id: dict[str, list[BenchRecord]] = {}
    for r in records:
        if r.status in ("ok", "unsat"):
            by_id.setdefault(r.dat_id, []).append(r)
    problems = []
    for dat_id, group in sorted(by_id.items()):
        base = group[0]
        for other in group[1:]:
            if math.isinf(base.min_time) and math.isinf(other.min_time):
                continue
            if math.isinf(base.min_time) or math.isinf(other.min_time):
                problems.append(f"{dat_id}: {base.algo} and {other.algo} disagree on satisfiability")
                continue
            if abs(base.min_time - other.min_time) > 1e-6 * (1.0 + abs(base.min_time)):
                problems.append(
                    f"{dat_id}: {base.algo}={base.min_time!r} vs {other.algo}={other.min_time!r}"
                )
    return problems
