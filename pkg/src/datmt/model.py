"""Core attack-tree model: a rooted DAG of typed nodes with leaf durations.

Nodes are identified by dense integer indices; display names are metadata
for I/O and diagnostics.  A ``Dat`` is immutable after construction and safe
to share between concurrent analyses.
"""

from __future__ import annotations

import math
import re
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .errors import (
    CycleDetected,
    DuplicateId,
    GateWithoutChildren,
    InvalidName,
    LeafWithGateType,
    MissingDuration,
    MultipleRoots,
    NegativeDuration,
    NoRoot,
    UnknownNode,
)

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class GateType(str, Enum):
    BAS = "bas"
    OR = "or"
    AND = "and"
    SAND = "sand"


class Dat:
    """Validated dynamic attack tree.

    Use :func:`build_dat` to construct one; the constructor assumes its
    arguments already satisfy every structural invariant.
    """

    __slots__ = (
        "names", "types", "children", "root", "durations",
        "parents", "topo_order", "index", "_bas_sets",
    )

    def __init__(self, names, types, children, root, durations):
        self.names: tuple[str, ...] = tuple(names)
        self.types: tuple[GateType, ...] = tuple(types)
        self.children: tuple[tuple[int, ...], ...] = tuple(tuple(c) for c in children)
        self.root: int = root
        self.durations: dict[int, float] = dict(durations)
        self.index: dict[str, int] = {n: i for i, n in enumerate(self.names)}

        parents: list[list[int]] = [[] for _ in self.names]
        for v, kids in enumerate(self.children):
            for c in kids:
                parents[c].append(v)
        self.parents: tuple[tuple[int, ...], ...] = tuple(tuple(p) for p in parents)
        self.topo_order: tuple[int, ...] = self._toposort()
        self._bas_sets: tuple[frozenset[int], ...] = self._collect_bas_sets()

    def _toposort(self) -> tuple[int, ...]:
        # children before parents; deterministic (stack seeded in index order)
        state = [0] * len(self.names)  # 0 new, 1 open, 2 done
        order: list[int] = []
        for start in range(len(self.names)):
            if state[start]:
                continue
            stack = [(start, 0)]
            while stack:
                v, k = stack.pop()
                if k == 0:
                    if state[v] == 2:
                        continue
                    state[v] = 1
                kids = self.children[v]
                if k < len(kids):
                    stack.append((v, k + 1))
                    c = kids[k]
                    if state[c] != 2:
                        stack.append((c, 0))
                else:
                    state[v] = 2
                    order.append(v)
        return tuple(order)

    def _collect_bas_sets(self) -> tuple[frozenset[int], ...]:
        sets: list[frozenset[int]] = [frozenset()] * len(self.names)
        for v in self.topo_order:
            if self.types[v] is GateType.BAS:
                sets[v] = frozenset((v,))
            else:
                sets[v] = frozenset().union(*(sets[c] for c in self.children[v]))
        return tuple(sets)

    # -- small conveniences used throughout the package --

    @property
    def n_nodes(self) -> int:
        return len(self.names)

    @property
    def bas_nodes(self) -> tuple[int, ...]:
        return tuple(v for v, t in enumerate(self.types) if t is GateType.BAS)

    def is_bas(self, v: int) -> bool:
        return self.types[v] is GateType.BAS

    def check_node(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < len(self.names):
            raise UnknownNode(v)

    def descendants(self, v: int) -> frozenset[int]:
        """All descendants of ``v`` including ``v`` itself."""
        self.check_node(v)
        seen = {v}
        stack = [v]
        while stack:
            for c in self.children[stack.pop()]:
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        return frozenset(seen)

    def __repr__(self) -> str:
        return f"Dat({len(self.names)} nodes, root={self.names[self.root]!r})"


def build_dat(
    nodes: Sequence[tuple[str, GateType | str]],
    children: Mapping[str, Sequence[str]],
    durations: Mapping[str, float],
    root_hint: str | None = None,
) -> Dat:
    """Validate raw node/edge/duration data and assemble a :class:`Dat`.

    ``nodes`` lists (name, type) pairs; indices are assigned in list order.
    ``children`` maps a gate name to its child names (order is semantic for
    sequential gates).  Every basic step needs an entry in ``durations``.
    """
    names: list[str] = []
    types: list[GateType] = []
    index: dict[str, int] = {}
    for name, gtype in nodes:
        if not isinstance(name, str) or not NAME_RE.match(name):
            raise InvalidName(name)
        if name in index:
            raise DuplicateId(name)
        index[name] = len(names)
        names.append(name)
        types.append(GateType(gtype))

    for name in children:
        if name not in index:
            raise UnknownNode(name)
    for name in durations:
        if name not in index:
            raise UnknownNode(name)

    child_ids: list[tuple[int, ...]] = []
    for name in names:
        kids = children.get(name, ())
        ids = []
        for kid in kids:
            if kid not in index:
                raise UnknownNode(kid)
            ids.append(index[kid])
        child_ids.append(tuple(ids))

    duration_by_id: dict[int, float] = {}
    for v, name in enumerate(names):
        if types[v] is GateType.BAS:
            if child_ids[v]:
                raise LeafWithGateType(name)
            if name not in durations:
                raise MissingDuration(name)
            d = float(durations[name])
            if math.isnan(d) or d < 0:
                raise NegativeDuration(name, durations[name])
            duration_by_id[v] = d
        else:
            if not child_ids[v]:
                raise GateWithoutChildren(name)
            if name in durations:
                raise NegativeDuration(name, durations[name])

    _reject_cycles(names, child_ids)

    referenced = {c for kids in child_ids for c in kids}
    roots = [v for v in range(len(names)) if v not in referenced]
    if not roots:
        raise NoRoot()
    if len(roots) > 1:
        raise MultipleRoots(names[v] for v in roots)
    root = roots[0]
    if root_hint is not None and index.get(root_hint) != root:
        raise MultipleRoots([root_hint, names[root]])

    return Dat(names, types, child_ids, root, duration_by_id)


def _reject_cycles(names: Sequence[str], children: Sequence[tuple[int, ...]]) -> None:
    indegree = [0] * len(names)
    for kids in children:
        for c in kids:
            indegree[c] += 1
    queue = [v for v, d in enumerate(indegree) if d == 0]
    done = 0
    while queue:
        v = queue.pop()
        done += 1
        for c in children[v]:
            indegree[c] -= 1
            if indegree[c] == 0:
                queue.append(c)
    if done != len(names):
        stuck = [names[v] for v, d in enumerate(indegree) if d > 0]
        raise CycleDetected(stuck)


def bas_set(dat: Dat, v: int) -> frozenset[int]:
    """Basic steps below ``v`` (``v`` itself when it is one)."""
    dat.check_node(v)
    return dat._bas_sets[v]


def is_treelike(dat: Dat) -> bool:
    """True iff no node has more than one incoming edge."""
    return all(len(p) <= 1 for p in dat.parents)


def is_static(dat: Dat) -> bool:
    """True iff the tree contains no sequential gate."""
    return GateType.SAND not in dat.types


def transitive_closure(pairs: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    """Transitive closure of a binary relation given as ordered pairs."""
    succ: dict[int, set[int]] = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
        succ.setdefault(b, set())
    for k in succ:
        for a in succ:
            if k in succ[a]:
                succ[a] |= succ[k]
    return frozenset((a, b) for a in succ for b in succ[a])


def check_well_formed(dat: Dat) -> bool:
    """Whether the orderings imposed by all sequential gates are jointly satisfiable.

    Collects, for every sequential gate and every consecutive child pair,
    all (earlier basic step, later basic step) pairs, closes the relation
    transitively and reports whether the result is irreflexive.
    """
    pairs: set[tuple[int, int]] = set()
    for v, t in enumerate(dat.types):
        if t is not GateType.SAND:
            continue
        kids = dat.children[v]
        for i in range(len(kids) - 1):
            for a in dat._bas_sets[kids[i]]:
                for b in dat._bas_sets[kids[i + 1]]:
                    pairs.add((a, b))
    closed = transitive_closure(pairs)
    return all(a != b for a, b in closed)


def big_m(dat: Dat) -> float:
    """One plus the sum of all basic-step durations; finite stand-in for infinity."""
    return 1.0 + sum(dat.durations.values())


def structurally_equal(a: Dat, b: Dat) -> bool:
    """Name-keyed structural equality (node ids themselves may differ)."""
    if sorted(a.names) != sorted(b.names):
        return False
    if a.names[a.root] != b.names[b.root]:
        return False
    for name, va in a.index.items():
        vb = b.index[name]
        if a.types[va] is not b.types[vb]:
            return False
        if tuple(a.names[c] for c in a.children[va]) != tuple(b.names[c] for c in b.children[vb]):
            return False
        if a.durations.get(va) != b.durations.get(vb):
            return False
    return True
