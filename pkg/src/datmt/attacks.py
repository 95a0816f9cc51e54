"""Attacks as strict posets, success checking, durations and schedules.

An attack is a set of executed basic steps plus a strict partial order on
them; ``a`` before ``a'`` means ``a'`` may only start once ``a`` finished.
Orders are stored transitively closed so subset comparison is meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    MissingDuration,
    NotAStrictOrder,
    NotExactAssignment,
    UnknownBas,
)
from .model import Dat, GateType, big_m, transitive_closure

INF = math.inf

TimeAssignment = dict[int, float]


@dataclass(frozen=True)
class Attack:
    """Executed basic steps and a transitively closed strict order on them."""

    bas: frozenset[int]
    order: frozenset[tuple[int, int]]

    def __repr__(self) -> str:
        steps = ",".join(map(str, sorted(self.bas)))
        rel = ",".join(f"{a}<{b}" for a, b in sorted(self.order))
        return f"Attack({{{steps}}}, {{{rel}}})"


EMPTY_ATTACK = Attack(frozenset(), frozenset())


def make_attack(bas: Iterable[int], order_pairs: Iterable[tuple[int, int]]) -> Attack:
    """Close ``order_pairs`` transitively and wrap the result as an attack.

    Raises ``UnknownBas`` when a pair mentions an element outside ``bas``
    and ``NotAStrictOrder`` when the closure relates an element to itself.
    """
    steps = frozenset(bas)
    pairs = set(order_pairs)
    for a, b in pairs:
        if a not in steps:
            raise UnknownBas(a)
        if b not in steps:
            raise UnknownBas(b)
    closed = transitive_closure(pairs)
    for a, b in closed:
        if a == b:
            raise NotAStrictOrder(a)
    return Attack(steps, closed)


def _reached_vector(dat: Dat, attack: Attack) -> list[bool]:
    for a in attack.bas:
        if not 0 <= a < dat.n_nodes or not dat.is_bas(a):
            raise UnknownBas(a)
    executed_below = [attack.bas & dat._bas_sets[v] for v in range(dat.n_nodes)]
    order = attack.order
    reached = [False] * dat.n_nodes
    for v in dat.topo_order:
        t = dat.types[v]
        kids = dat.children[v]
        if t is GateType.BAS:
            reached[v] = v in attack.bas
        elif t is GateType.OR:
            reached[v] = any(reached[c] for c in kids)
        elif t is GateType.AND:
            reached[v] = all(reached[c] for c in kids)
        else:  # sequential
            ok = all(reached[c] for c in kids)
            for i in range(len(kids) - 1):
                if not ok:
                    break
                earlier = executed_below[kids[i]]
                later = executed_below[kids[i + 1]]
                ok = all((a, b) in order for a in earlier for b in later)
            reached[v] = ok
    return reached


def reaches(dat: Dat, attack: Attack, v: int) -> bool:
    """Whether the attack reaches node ``v`` (one bottom-up sweep, no recursion)."""
    dat.check_node(v)
    return _reached_vector(dat, attack)[v]


def is_successful(dat: Dat, attack: Attack) -> bool:
    return _reached_vector(dat, attack)[dat.root]


def _completion_times(attack: Attack, durations: Mapping[int, float]) -> dict[int, float]:
    """Earliest finish time of each executed step under the attack's order."""
    preds: dict[int, list[int]] = {a: [] for a in attack.bas}
    for a, b in attack.order:
        preds[b].append(a)
    finish: dict[int, float] = {}
    # in a closed strict order the predecessor count grows strictly along
    # chains, so it doubles as a topological key
    for a in sorted(attack.bas, key=lambda s: (len(preds[s]), s)):
        if a not in durations:
            raise MissingDuration(a)
        finish[a] = durations[a] + max((finish[p] for p in preds[a]), default=0.0)
    return finish


def attack_duration(attack: Attack, durations: Mapping[int, float]) -> float:
    """Length of the heaviest chain: parallel-aware total time of the attack."""
    finish = _completion_times(attack, durations)
    return max(finish.values(), default=0.0)


def attack_leq(o1: Attack, o2: Attack) -> bool:
    """Attack order: componentwise subset on steps and (closed) order pairs."""
    return o1.bas <= o2.bas and o1.order <= o2.order


def propagate_times(dat: Dat, bas_times: Mapping[int, float]) -> TimeAssignment:
    """Extend completion times on basic steps to every gate, exactly.

    OR takes the minimum and AND the maximum over children.  A sequential
    gate finishes with its last child, but becomes unreachable (infinite)
    when a child is unreachable or when some step below a later child
    starts before some step below the preceding child has finished.
    """
    f: TimeAssignment = {}
    for v in dat.topo_order:
        t = dat.types[v]
        kids = dat.children[v]
        if t is GateType.BAS:
            f[v] = bas_times.get(v, INF)
        elif t is GateType.OR:
            f[v] = min(f[c] for c in kids)
        elif t is GateType.AND:
            f[v] = max(f[c] for c in kids)
        else:
            f[v] = _sequential_value(dat, f, kids)
    return f


def _sequential_value(dat: Dat, f: TimeAssignment, kids: tuple[int, ...]) -> float:
    if any(f[c] == INF for c in kids):
        return INF
    for i in range(len(kids) - 1):
        for a in dat._bas_sets[kids[i]]:
            fa = f[a]
            if fa == INF:
                continue
            for b in dat._bas_sets[kids[i + 1]]:
                if f[b] - dat.durations[b] < fa:
                    return INF
    return f[kids[-1]]


def attack_schedule(dat: Dat, attack: Attack) -> TimeAssignment:
    """Earliest-finish schedule of an attack, extended to all nodes.

    Executed steps run as early as their order allows; everything else is
    unreachable.  For a successful attack the root time never exceeds the
    attack duration.
    """
    finish = _completion_times(attack, dat.durations)
    return propagate_times(dat, finish)


def extract_attack(dat: Dat, f: Mapping[int, float], cutoff: float) -> Attack:
    """Read an attack off a completion-time vector.

    Takes every basic step finishing by ``cutoff`` and orders ``a`` before
    ``a'`` whenever ``a`` finishes by the time ``a'`` starts (up to a
    floating-point slack of ``1e-9 * big_m``).
    """
    eps = 1e-9 * big_m(dat)
    chosen = []
    for a in dat.bas_nodes:
        if a not in f:
            raise NotExactAssignment(f"no completion time for basic step {dat.names[a]!r}")
        if f[a] <= cutoff:
            chosen.append(a)
    pairs = []
    for a in chosen:
        for b in chosen:
            if f[a] <= f[b] - dat.durations[b] + eps:
                pairs.append((a, b))
    try:
        return make_attack(chosen, pairs)
    except NotAStrictOrder as exc:
        raise NotExactAssignment(
            f"times order step {exc.element!r} before itself"
        ) from exc


def hasse_pairs(attack: Attack) -> list[tuple[int, int]]:
    """Transitive reduction of the attack order (for compact output)."""
    out = []
    for a, b in sorted(attack.order):
        if not any((a, c) in attack.order and (c, b) in attack.order for c in attack.bas):
            out.append((a, b))
    return out
