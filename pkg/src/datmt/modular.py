"""Modular decomposition: analyze one-entry subDAGs separately and contract.

A module is a gate whose descendants are reachable from the rest of the
tree only through it.  Its min time can be computed in isolation and the
whole subDAG replaced by a single basic step with that duration, without
changing the min time of the surrounding tree.  Static or treelike modules
go to the fast bottom-up pass; everything else goes to the supplied inner
algorithm.  Modules of a tree are laminar, so processing them smallest
first keeps every later contraction valid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .bottomup import mt_bu
from .errors import NotAModule, UnsatisfiableModule
from .model import Dat, GateType, build_dat, is_static, is_treelike

InnerAlgorithm = Callable[[Dat], float]


def find_modules(dat: Dat) -> frozenset[int]:
    """Gates v such that every proper descendant has all parents below v."""
    out = []
    for v in range(dat.n_nodes):
        if dat.is_bas(v):
            continue
        scope = dat.descendants(v)
        if all(
            all(p in scope for p in dat.parents[u])
            for u in scope if u != v
        ):
            out.append(v)
    return frozenset(out)


def subdag(dat: Dat, v: int) -> Dat:
    """The tree spanned by ``v`` and its descendants, rooted at ``v``."""
    dat.check_node(v)
    keep = dat.descendants(v)
    nodes = [(dat.names[u], dat.types[u]) for u in sorted(keep)]
    children = {
        dat.names[u]: [dat.names[c] for c in dat.children[u]]
        for u in sorted(keep) if not dat.is_bas(u)
    }
    durations = {dat.names[u]: dat.durations[u] for u in keep if dat.is_bas(u)}
    return build_dat(nodes, children, durations, root_hint=dat.names[v])


def contract_module(dat: Dat, v: int, mt_v: float) -> Dat:
    """Replace module ``v`` and its subDAG by one basic step of duration ``mt_v``.

    The new step keeps the display name of ``v`` so callers can track it.
    Raises ``UnsatisfiableModule`` when ``mt_v`` is infinite: the whole tree
    is unsatisfiable and no contraction makes sense.
    """
    if v not in find_modules(dat):
        raise NotAModule(dat.names[v])
    if math.isinf(mt_v):
        raise UnsatisfiableModule(dat.names[v])
    scope = dat.descendants(v)
    dropped = scope - {v}
    nodes = []
    children = {}
    durations = {}
    for u in range(dat.n_nodes):
        if u in dropped:
            continue
        name = dat.names[u]
        if u == v:
            nodes.append((name, GateType.BAS))
            durations[name] = mt_v
        elif dat.is_bas(u):
            nodes.append((name, GateType.BAS))
            durations[name] = dat.durations[u]
        else:
            nodes.append((name, dat.types[u]))
            children[name] = [dat.names[c] for c in dat.children[u]]
    return build_dat(nodes, children, durations, root_hint=dat.names[dat.root])


@dataclass(frozen=True)
class ModuleStep:
    node: str
    size: int          # nodes in the module's subDAG when it was processed
    algorithm: str     # "bottom-up" or "inner"
    value: float


@dataclass(frozen=True)
class ModulePlan:
    steps: tuple[ModuleStep, ...]


@dataclass(frozen=True)
class ModularResult:
    value: float
    plan: ModulePlan


def prune_dead_branch(dat: Dat, v: int) -> Dat | None:
    """Remove ``v`` as unreachable and fold the consequences upward.

    A disjunction survives losing a child as long as one is left; every
    other gate dies with it.  Subtrees that end up orphaned disappear.
    Returns None when the root itself dies (the tree is unsatisfiable).
    """
    dead = {v}
    for u in dat.topo_order:
        if u == v or dat.is_bas(u):
            continue
        kids = dat.children[u]
        if dat.types[u] is GateType.OR:
            if all(c in dead for c in kids):
                dead.add(u)
        elif any(c in dead for c in kids):
            dead.add(u)
    if dat.root in dead:
        return None

    keep: set[int] = set()
    stack = [dat.root]
    while stack:
        u = stack.pop()
        if u in keep:
            continue
        keep.add(u)
        for c in dat.children[u]:
            if c not in dead:
                stack.append(c)
    nodes = [(dat.names[u], dat.types[u]) for u in sorted(keep)]
    children = {
        dat.names[u]: [dat.names[c] for c in dat.children[u] if c not in dead]
        for u in sorted(keep) if not dat.is_bas(u)
    }
    durations = {dat.names[u]: dat.durations[u] for u in keep if dat.is_bas(u)}
    return build_dat(nodes, children, durations, root_hint=dat.names[dat.root])


def run_modular(dat: Dat, inner: InnerAlgorithm) -> ModularResult:
    """Process the modules found on the input tree, smallest subDAG first.

    The root is always a module and always comes last; its value is the
    answer.  A module that cannot be completed is pruned as an unreachable
    branch: the surrounding tree may still be satisfiable through other
    disjuncts, and when it is not the root dies with it.
    """
    if dat.is_bas(dat.root):
        return ModularResult(dat.durations[dat.root], ModulePlan(()))
    ordered = sorted(
        find_modules(dat),
        key=lambda v: (len(dat.descendants(v)), v),
    )
    names = [dat.names[v] for v in ordered]

    work = dat
    steps = []
    for name in names:
        if name not in work.index:
            continue  # vanished with a pruned branch
        v = work.index[name]
        part = subdag(work, v)
        if is_static(part) or is_treelike(part):
            algo, value = "bottom-up", mt_bu(part)
        else:
            algo, value = "inner", inner(part)
        steps.append(ModuleStep(name, part.n_nodes, algo, value))
        if v == work.root:
            return ModularResult(value, ModulePlan(tuple(steps)))
        if math.isinf(value):
            pruned = prune_dead_branch(work, v)
            if pruned is None:
                return ModularResult(math.inf, ModulePlan(tuple(steps)))
            work = pruned
            continue
        work = contract_module(work, v, value)
    raise AssertionError("the root module survives pruning and ends the loop")


def mt_modular(dat: Dat, inner: InnerAlgorithm) -> float:
    """Min time via modular decomposition around ``inner``."""
    return run_modular(dat, inner).value
