"""Enumerative min-time: bottom-up generating sets of candidate attacks.

For every node a set of attacks reaching it is assembled from its children
with two poset operators: a least-upper-bound join and a sequentialization
that forces one group of steps before another.  The root set contains all
minimal successful attacks, so the cheapest member is the min time.

On DAG-shaped trees a later join can pull a shared step into the scope of a
sequential gate that was combined earlier, which would silently drop the
ordering that gate demands.  Candidates therefore remember which sequential
gates they passed through, and joins re-impose those orderings over the
grown step set.  On treelike input this changes nothing.

Growth is exponential in the worst case; this is the reference algorithm
the other engines are checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .attacks import Attack, attack_duration, attack_leq
from .model import Dat, GateType, transitive_closure

# above this size a generating set gets a minimality sweep (quadratic but
# usually shrinks the set a lot); supersets of the minimal attacks stay valid
PRUNE_THRESHOLD = 64


def poset_join(o1: Attack, o2: Attack) -> Attack | None:
    """Least attack containing both, or None when their orders conflict."""
    steps = o1.bas | o2.bas
    closed = transitive_closure(o1.order | o2.order)
    if any(a == b for a, b in closed):
        return None
    return Attack(steps, closed)


def sequentialize(x: frozenset[int], y: frozenset[int], o: Attack) -> Attack | None:
    """Force every executed step in ``x`` before every executed step in ``y``."""
    forced = {(a, b) for a in o.bas & x for b in o.bas & y}
    closed = transitive_closure(o.order | forced)
    if any(a == b for a, b in closed):
        return None
    return Attack(o.bas, closed)


def seq_join(x: frozenset[int], y: frozenset[int], o1: Attack, o2: Attack) -> Attack | None:
    """Join then sequentialize; None when either step is undefined."""
    joined = poset_join(o1, o2)
    if joined is None:
        return None
    return sequentialize(x, y, joined)


@dataclass(frozen=True)
class _Candidate:
    """An attack plus the sequential-gate slots it must keep satisfied.

    Each obligation ``(v, i)`` stands for "everything executed below child
    ``i`` of sequential gate ``v`` precedes everything executed below child
    ``i + 1``" and is re-imposed whenever the step set grows.
    """

    attack: Attack
    obligations: frozenset[tuple[int, int]]


def _saturate(dat: Dat, steps: frozenset[int], order, obligations) -> frozenset | None:
    forced = set(order)
    for v, i in obligations:
        kids = dat.children[v]
        for a in steps & dat._bas_sets[kids[i]]:
            for b in steps & dat._bas_sets[kids[i + 1]]:
                forced.add((a, b))
    closed = transitive_closure(forced)
    if any(a == b for a, b in closed):
        return None
    return closed


def _combine(dat: Dat, c1: _Candidate, c2: _Candidate) -> _Candidate | None:
    steps = c1.attack.bas | c2.attack.bas
    obligations = c1.obligations | c2.obligations
    order = _saturate(dat, steps, c1.attack.order | c2.attack.order, obligations)
    if order is None:
        return None
    return _Candidate(Attack(steps, order), obligations)


def _canonical(cands: Iterable[_Candidate]) -> list[_Candidate]:
    unique = set(cands)
    return sorted(
        unique,
        key=lambda c: (sorted(c.attack.bas), sorted(c.attack.order), sorted(c.obligations)),
    )


def _prune_dominated(cands: list[_Candidate]) -> list[_Candidate]:
    kept = []
    for c in cands:
        dominated = any(
            p != c and attack_leq(p.attack, c.attack) and p.obligations <= c.obligations
            for p in cands
        )
        if not dominated:
            kept.append(c)
    return kept


def _join_all(dat: Dat, lists: list[list[_Candidate]]) -> list[_Candidate]:
    acc = lists[0]
    for nxt in lists[1:]:
        acc = _canonical(
            j for c1 in acc for c2 in nxt
            if (j := _combine(dat, c1, c2)) is not None
        )
        if len(acc) > PRUNE_THRESHOLD:
            acc = _prune_dominated(acc)
    return acc


def _candidate_sets(dat: Dat) -> list[_Candidate]:
    g: list[list[_Candidate]] = [[] for _ in range(dat.n_nodes)]
    for v in dat.topo_order:
        t = dat.types[v]
        kids = dat.children[v]
        if t is GateType.BAS:
            g[v] = [_Candidate(Attack(frozenset((v,)), frozenset()), frozenset())]
        elif t is GateType.OR:
            g[v] = _canonical(c for kid in kids for c in g[kid])
        elif t is GateType.AND:
            g[v] = _join_all(dat, [g[c] for c in kids])
        else:  # sequential: join the choices, then order consecutive groups
            joined = _join_all(dat, [g[c] for c in kids])
            own = frozenset((v, i) for i in range(len(kids) - 1))
            out = []
            for c in joined:
                order = _saturate(dat, c.attack.bas, c.attack.order, own)
                if order is not None:
                    out.append(_Candidate(Attack(c.attack.bas, order), c.obligations | own))
            g[v] = _canonical(out)
        if len(g[v]) > PRUNE_THRESHOLD:
            g[v] = _prune_dominated(g[v])
    return g[dat.root]


def generating_set(dat: Dat) -> frozenset[Attack]:
    """Attacks reaching the root, including every minimal successful attack.

    Empty exactly when the tree cannot be attacked at all.
    """
    return frozenset(c.attack for c in _candidate_sets(dat))


def best_attack(dat: Dat) -> tuple[float, Attack | None]:
    """Min time together with a witness attack attaining it (None if unsatisfiable)."""
    best_value = math.inf
    best: Attack | None = None
    for c in _candidate_sets(dat):
        t = attack_duration(c.attack, dat.durations)
        if t < best_value:
            best_value, best = t, c.attack
    return best_value, best


def mt_enum(dat: Dat) -> float:
    """Min time by enumeration; infinity when no successful attack exists."""
    return best_attack(dat)[0]
