"""Acceptance suite: one check per shipped criterion, each printing a verdict.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  The random suites are seeded, so every run checks the same trees.
"""

import contextlib
import csv
import math
import random
import time

import pytest

from datmt import (
    attack_duration,
    attack_schedule,
    build_model,
    check_well_formed,
    generating_set,
    is_static,
    is_successful,
    is_treelike,
    make_attack,
    mt_bu,
    mt_bu_checked,
    mt_enum,
    mt_milp,
    mt_modular,
    parse_dat,
    serialize_dat,
    solve_milp,
    structurally_equal,
    verify_time_assignment,
)
from datmt.bench import SuiteConfig, generate_suite
from datmt.blocks import TROJAN
from datmt.cli import main
from datmt.errors import DatError
from datmt.mip import OPTIMAL, solve_mip
from dattools import (
    brute_force_mt,
    nonbu,
    nonmono,
    random_attack,
    random_dat,
    sand_aa,
    wellformed,
)
from test_mip import brute_force_mip, random_problem


@contextlib.contextmanager
def criterion(number: int, title: str):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number:02d} {title}: FAIL")
        raise
    print(f"ACCEPTANCE {number:02d} {title}: PASS")


@pytest.fixture(scope="module")
def random_suite():
    """200 seeded trees (up to 12 steps, shared subgraphs) with MILP results."""
    rng = random.Random(20260811)
    out = []
    for _ in range(200):
        dat = random_dat(rng, max_bas=12)
        out.append((dat, solve_milp(dat)))
    return out


def test_criterion_01_trojan_golden(capsys):
    with capsys.disabled(), criterion(1, "Trojan war golden values"):
        start = time.perf_counter()
        dat = parse_dat(TROJAN)
        assert mt_bu_checked(dat) is None
        assert mt_enum(dat) == 6.0
        assert mt_milp(dat) == 6.0
        assert mt_modular(dat, mt_enum) == 6.0
        assert mt_modular(dat, mt_milp) == 6.0
        assert time.perf_counter() - start < 1.0


def test_criterion_02_bottom_up_regression(capsys):
    with capsys.disabled(), criterion(2, "shared-step bottom-up regression"):
        dat = nonbu()
        assert mt_bu(dat) == 7.0  # the documented wrong answer on this shape
        assert mt_enum(dat) == 9.0
        assert mt_milp(dat) == 9.0


def test_criterion_03_unsatisfiability(capsys):
    with capsys.disabled(), criterion(3, "self-sequence unsatisfiability"):
        dat = sand_aa()
        assert not check_well_formed(dat)
        assert generating_set(dat) == frozenset()
        enc = build_model(dat)
        sol = solve_mip(enc.problem)
        assert sol.status == OPTIMAL
        assert sol.objective > enc.big_m - 1.0  # the big-M detection region
        assert math.isinf(mt_milp(dat))


def test_criterion_04_semantics_fixtures(capsys):
    with capsys.disabled(), criterion(4, "success semantics fixtures"):
        dat = nonmono()
        a, b, c = (dat.index[n] for n in ("a", "b", "c"))
        assert is_successful(dat, make_attack({a, c}, [(a, c)]))
        assert not is_successful(dat, make_attack({a, b, c}, [(a, c)]))
        wf = wellformed()
        wa, wb = wf.index["a"], wf.index["b"]
        assert is_successful(wf, make_attack({wa, wb}, []))


def test_criterion_05_cross_algorithm_oracle(capsys, random_suite):
    with capsys.disabled(), criterion(5, "four-way agreement on 200 random trees"):
        start = time.perf_counter()
        for dat, milp_result in random_suite:
            reference = mt_enum(dat)
            values = [
                milp_result.value,
                mt_modular(dat, mt_enum),
                mt_modular(dat, mt_milp),
            ]
            if math.isinf(reference):
                assert all(math.isinf(v) for v in values)
            else:
                for v in values:
                    assert abs(v - reference) <= 1e-6 * (1.0 + abs(reference))
            if is_static(dat) or is_treelike(dat):
                assert mt_bu_checked(dat) == pytest.approx(reference)
        assert time.perf_counter() - start < 300.0


def test_criterion_06_brute_force_oracle(capsys):
    with capsys.disabled(), criterion(6, "exhaustive oracle on tiny trees"):
        rng = random.Random(1877)
        for _ in range(50):
            dat = random_dat(rng, max_bas=5, n_gates=rng.randint(1, 4))
            assert mt_enum(dat) == brute_force_mt(dat)


def test_criterion_07_milp_self_verification(capsys, random_suite):
    with capsys.disabled(), criterion(7, "solver self-checks and variants"):
        for dat, milp_result in random_suite:
            assert verify_time_assignment(dat, milp_result.assignment)
        # generic solver equals exhaustive binary enumeration
        rng = random.Random(4099)
        for _ in range(100):
            p = random_problem(rng, rng.randint(0, 10), rng.randint(0, 8))
            expected = brute_force_mip(p)
            sol = solve_mip(p)
            if expected is None:
                assert sol.status != OPTIMAL
            else:
                assert sol.status == OPTIMAL
                assert abs(sol.objective - expected) <= 1e-6 * (1.0 + abs(expected))
        # both published forms of the pair constraint give the same optima
        for dat, milp_result in random_suite[::4]:
            other = mt_milp(dat, "figure")
            if math.isinf(milp_result.value):
                assert math.isinf(other)
            else:
                assert abs(other - milp_result.value) <= 1e-6 * (1.0 + milp_result.value)


def test_criterion_08_attack_assignment_bridge(capsys, random_suite):
    with capsys.disabled(), criterion(8, "attacks from times and times from attacks"):
        for dat, milp_result in random_suite:
            if math.isinf(milp_result.value):
                assert milp_result.witness is None
                continue
            witness = milp_result.witness
            assert witness is not None
            assert is_successful(dat, witness)
            duration = attack_duration(witness, dat.durations)
            assert abs(duration - milp_result.value) <= 1e-6 * (1.0 + milp_result.value)
        rng = random.Random(515)
        checked = 0
        while checked < 120:
            dat = random_dat(rng, max_bas=8)
            attack = random_attack(rng, dat)
            if not is_successful(dat, attack):
                continue
            checked += 1
            f = attack_schedule(dat, attack)
            assert f[dat.root] <= attack_duration(attack, dat.durations)


def test_criterion_09_benchmark_methodology(capsys, tmp_path):
    with capsys.disabled(), criterion(9, "benchmark pipeline determinism"):
        out = tmp_path / "bench.csv"
        code = main([
            "bench", "--nmin", "1..30", "--reps", "3", "--seed", "7",
            "--out", str(out),
        ])
        # slow composed instances may exhaust their per-record budget; that
        # is recorded, not fatal (absolute timings are machine-bound)
        assert code in (0, 3)
        with open(out) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["id", "n_nodes", "n_bas", "algo", "min_time", "wall_ms", "status"]
        assert len(rows) == 1 + 90 * 5
        records = rows[1:]
        assert {r[6] for r in records} <= {"ok", "unsat", "timeout", "inapplicable"}
        # full agreement across every algorithm that produced a value
        by_id = {}
        for r in records:
            if r[6] in ("ok", "unsat"):
                by_id.setdefault(r[0], []).append((r[3], r[4]))
        assert len(by_id) == 90
        for dat_id, pairs in by_id.items():
            assert len(pairs) >= 2, dat_id
            base = pairs[0][1]
            for _, value in pairs[1:]:
                if base == "inf" or value == "inf":
                    assert base == value, dat_id
                else:
                    assert abs(float(base) - float(value)) <= 1e-6 * (1 + abs(float(base)))
        # the size-bucket summary exists and covers the suite
        with open(out.with_name("bench.summary.csv")) as fh:
            srows = list(csv.reader(fh))
        assert srows[0] == ["bucket", "algo", "n", "mean_log10_s"]
        assert len(srows) > 1
        # regenerating the suite from the same seed is bit-identical
        a = generate_suite(SuiteConfig(1, 30, 3, 7))
        b = generate_suite(SuiteConfig(1, 30, 3, 7))
        assert [serialize_dat(d) for _, d in a] == [serialize_dat(d) for _, d in b]


def test_criterion_10_parser_robustness(capsys):
    with capsys.disabled(), criterion(10, "format round-trip and fuzzing"):
        rng = random.Random(31337)
        for _ in range(500):
            dat = random_dat(rng, max_bas=8)
            assert structurally_equal(dat, parse_dat(serialize_dat(dat)))
        alphabet = "abors dn123.#\n\t_"
        for _ in range(500):
            text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 120)))
            try:
                parse_dat(text)
            except DatError:
                pass
