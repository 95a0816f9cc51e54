"""Attack posets: success, duration, order, schedules, extraction."""

import math
import random

import pytest

from datmt import (
    attack_duration,
    attack_leq,
    attack_schedule,
    extract_attack,
    is_successful,
    make_attack,
    reaches,
)
from datmt.attacks import EMPTY_ATTACK
from datmt.errors import (
    MissingDuration,
    NotAStrictOrder,
    NotExactAssignment,
    UnknownBas,
    UnknownNode,
)
from dattools import (
    maximal_chain_duration,
    nonmono,
    random_attack,
    random_dat,
    sand_aa,
    trojan,
    wellformed,
)

INF = math.inf


def ids(dat, *names):
    return [dat.index[n] for n in names]


class TestMakeAttack:
    def test_closure_is_added(self):
        o = make_attack({1, 2, 3}, [(1, 2), (2, 3)])
        assert (1, 3) in o.order

    def test_reflexive_pair_rejected(self):
        with pytest.raises(NotAStrictOrder):
            make_attack({1}, [(1, 1)])

    def test_cycle_rejected(self):
        with pytest.raises(NotAStrictOrder):
            make_attack({1, 2}, [(1, 2), (2, 1)])

    def test_pairs_must_cover_bas(self):
        with pytest.raises(UnknownBas):
            make_attack({1}, [(1, 2)])

    def test_simple_pair(self):
        o = make_attack({0, 2}, [(0, 2)])
        assert o.bas == frozenset((0, 2))
        assert o.order == frozenset(((0, 2),))


class TestReaches:
    def test_nonmono_success_pair(self):
        dat = nonmono()
        a, b, c = ids(dat, "a", "b", "c")
        assert is_successful(dat, make_attack({a, c}, [(a, c)]))
        assert not is_successful(dat, make_attack({a, b, c}, [(a, c)]))

    def test_wellformed_unordered_attack_succeeds(self):
        dat = wellformed()
        a, b = ids(dat, "a", "b")
        assert is_successful(dat, make_attack({a, b}, []))

    def test_trojan_single_step(self):
        dat = trojan()
        assert is_successful(dat, make_attack(ids(dat, "s"), []))
        assert not is_successful(dat, EMPTY_ATTACK)

    def test_self_sequence_never_succeeds(self):
        dat = sand_aa()
        assert not is_successful(dat, make_attack([dat.index["a"]], []))

    def test_reaches_inner_node(self):
        dat = trojan()
        w, h, t = ids(dat, "w", "h", "t")
        o = make_attack({w, h, t}, [(w, h), (h, t)])
        assert reaches(dat, o, dat.index["horse"])
        assert not reaches(dat, o, dat.index["ram"])

    def test_unknown_node_and_bas(self):
        dat = trojan()
        with pytest.raises(UnknownNode):
            reaches(dat, EMPTY_ATTACK, 99)
        with pytest.raises(UnknownBas):
            reaches(dat, make_attack({dat.root}, []), dat.root)


class TestDuration:
    def test_trojan_chains(self):
        dat = trojan()
        w, r, a = ids(dat, "w", "r", "a")
        o1 = make_attack({w, r, a}, [(w, r), (r, a)])
        assert attack_duration(o1, dat.durations) == 7.0

    def test_antichain_takes_the_longest_step(self):
        o = make_attack({0, 1}, [])
        assert attack_duration(o, {0: 2.0, 1: 3.0}) == 3.0

    def test_empty_attack(self):
        assert attack_duration(EMPTY_ATTACK, {}) == 0.0

    def test_missing_duration(self):
        with pytest.raises(MissingDuration):
            attack_duration(make_attack({5}, []), {})

    def test_matches_explicit_chain_enumeration(self):
        rng = random.Random(21)
        for _ in range(150):
            dat = random_dat(rng, max_bas=6)
            o = random_attack(rng, dat)
            expected = maximal_chain_duration(o, dat.durations)
            assert attack_duration(o, dat.durations) == pytest.approx(expected)

    def test_monotone_in_the_attack_order(self):
        rng = random.Random(22)
        for _ in range(200):
            dat = random_dat(rng, max_bas=6)
            small = random_attack(rng, dat)
            extra_steps = small.bas | {v for v in dat.bas_nodes if rng.random() < 0.3}
            big = make_attack(extra_steps, small.order)
            assert attack_leq(small, big)
            assert attack_duration(small, dat.durations) <= attack_duration(
                big, dat.durations
            )


class TestAttackOrder:
    def test_examples(self):
        o_small = make_attack({0}, [])
        o_big = make_attack({0, 1}, [(0, 1)])
        assert attack_leq(o_small, o_big)
        assert not attack_leq(make_attack({0, 1}, [(0, 1)]), make_attack({0, 1}, [(1, 0)]))
        assert attack_leq(o_big, o_big)


class TestSchedule:
    def test_trojan_horse_route(self):
        dat = trojan()
        w, h, t = ids(dat, "w", "h", "t")
        o = make_attack({w, h, t}, [(w, h), (h, t)])
        f = attack_schedule(dat, o)
        assert f[w] == 2.0
        assert f[h] == 5.0
        assert f[t] == 6.0
        assert f[dat.root] == 6.0
        assert f[dat.index["ram"]] == INF

    def test_empty_attack_is_all_infinite(self):
        dat = trojan()
        f = attack_schedule(dat, EMPTY_ATTACK)
        assert all(f[a] == INF for a in dat.bas_nodes)
        assert f[dat.root] == INF

    def test_single_step_route(self):
        dat = trojan()
        s = dat.index["s"]
        f = attack_schedule(dat, make_attack({s}, []))
        assert f[s] == 3652.0
        assert f[dat.root] == 3652.0

    def test_root_time_bounded_by_duration_on_successful_attacks(self):
        rng = random.Random(23)
        checked = 0
        while checked < 80:
            dat = random_dat(rng, max_bas=6)
            o = random_attack(rng, dat)
            if not is_successful(dat, o):
                continue
            checked += 1
            f = attack_schedule(dat, o)
            assert f[dat.root] <= attack_duration(o, dat.durations)


class TestExtract:
    def test_round_trip_from_schedule(self):
        dat = trojan()
        w, h, t = ids(dat, "w", "h", "t")
        o = make_attack({w, h, t}, [(w, h), (h, t)])
        f = attack_schedule(dat, o)
        got = extract_attack(dat, f, 6.0)
        assert got.bas == frozenset((w, h, t))
        assert (w, h) in got.order and (h, t) in got.order
        assert is_successful(dat, got)

    def test_zero_cutoff_gives_empty_attack(self):
        dat = trojan()
        f = {v: float(v + 1) for v in range(dat.n_nodes)}
        assert extract_attack(dat, f, 0.0) == EMPTY_ATTACK

    def test_all_infinite_gives_empty_attack(self):
        dat = trojan()
        f = {v: INF for v in range(dat.n_nodes)}
        assert extract_attack(dat, f, 100.0) == EMPTY_ATTACK

    def test_missing_entry_is_an_error(self):
        with pytest.raises(NotExactAssignment):
            extract_attack(trojan(), {}, 1.0)

    def test_schedule_extract_round_trip_stays_successful(self):
        rng = random.Random(24)
        checked = 0
        while checked < 80:
            dat = random_dat(rng, max_bas=6)
            o = random_attack(rng, dat)
            if not is_successful(dat, o):
                continue
            checked += 1
            duration = attack_duration(o, dat.durations)
            back = extract_attack(dat, attack_schedule(dat, o), duration)
            assert is_successful(dat, back)
            assert attack_duration(back, dat.durations) <= duration + 1e-9
