"""Linear bottom-up pass: exact on treelike and static trees, guarded entry."""

import random
import time

from datmt import build_dat, mt_bu, mt_bu_checked, mt_enum, mt_milp
from dattools import nonbu, random_static_dat, random_treelike_dat, trojan


def test_nonbu_documented_wrong_value():
    # the shared middle step makes the naive pass blend two sequences
    dat = nonbu()
    assert mt_bu(dat) == 7.0
    assert mt_enum(dat) == 9.0


def test_static_dag_example():
    dat = build_dat(
        [("g", "and"), ("o1", "or"), ("o2", "or"),
         ("a", "bas"), ("b", "bas"), ("c", "bas")],
        {"g": ["o1", "o2"], "o1": ["a", "b"], "o2": ["b", "c"]},
        {"a": 2, "b": 3, "c": 4},
    )
    assert mt_bu(dat) == 3.0
    assert mt_bu_checked(dat) == 3.0  # static, so the guard accepts it
    assert mt_enum(dat) == 3.0


def test_sequential_chain():
    dat = build_dat(
        [("g", "sand"), ("a", "bas"), ("b", "bas")],
        {"g": ["a", "b"]},
        {"a": 2, "b": 3},
    )
    assert mt_bu(dat) == 5.0


def test_checked_rejects_dynamic_dags():
    assert mt_bu_checked(nonbu()) is None
    assert mt_bu_checked(trojan()) is None


def test_on_treelike_trees_all_engines_agree():
    rng = random.Random(41)
    for _ in range(60):
        dat = random_treelike_dat(rng, max_bas=8)
        value = mt_bu(dat)
        assert mt_bu_checked(dat) == value
        assert mt_enum(dat) == value
        assert abs(mt_milp(dat) - value) <= 1e-6 * (1 + value)


def test_on_static_trees_matches_enumeration():
    rng = random.Random(42)
    for _ in range(60):
        dat = random_static_dat(rng, max_bas=12)
        assert mt_bu(dat) == mt_enum(dat)


def test_duplicating_an_or_child_changes_nothing():
    rng = random.Random(43)
    from datmt import GateType

    for _ in range(30):
        dat = random_treelike_dat(rng, max_bas=8)
        children = {}
        for v in range(dat.n_nodes):
            if dat.is_bas(v):
                continue
            kids = [dat.names[c] for c in dat.children[v]]
            if dat.types[v] is GateType.OR:
                kids = kids + [kids[-1]]
            children[dat.names[v]] = kids
        doubled = build_dat(
            [(dat.names[v], dat.types[v]) for v in range(dat.n_nodes)],
            children,
            {dat.names[v]: d for v, d in dat.durations.items()},
        )
        assert mt_bu(doubled) == mt_bu(dat)


def test_shared_subdags_are_evaluated_once():
    # a ladder of shared conjunctions has exponentially many paths; a
    # single-visit pass still finishes instantly
    nodes = [("s0", "bas")]
    children = {}
    durations = {"s0": 1.0}
    prev = "s0"
    for i in range(1, 120):
        name = f"g{i}"
        nodes.append((name, "and"))
        children[name] = [prev, prev]
        prev = name
    dat = build_dat(nodes, children, durations)
    start = time.perf_counter()
    assert mt_bu(dat) == 1.0
    assert time.perf_counter() - start < 0.1
