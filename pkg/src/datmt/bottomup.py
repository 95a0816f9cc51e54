"""Single-pass bottom-up min-time: min / max / sum through or / and / sand.

Exact for treelike trees and for static ones (DAG-shaped included, because
min and max are idempotent).  On dynamic DAGs the value carries no
guarantee; ``mt_bu_checked`` is the guarded entry point.
"""

from __future__ import annotations

from .model import Dat, GateType, is_static, is_treelike


def mt_bu(dat: Dat) -> float:
    """One value per node, children first; every node is visited exactly once."""
    value = [0.0] * dat.n_nodes
    for v in dat.topo_order:
        kids = dat.children[v]
        t = dat.types[v]
        if t is GateType.BAS:
            value[v] = dat.durations[v]
        elif t is GateType.OR:
            value[v] = min(value[c] for c in kids)
        elif t is GateType.AND:
            value[v] = max(value[c] for c in kids)
        else:
            value[v] = sum(value[c] for c in kids)
    return value[dat.root]


def mt_bu_checked(dat: Dat) -> float | None:
    """``mt_bu`` when it is known to be exact, None otherwise.

    Static or treelike trees qualify; such trees are always satisfiable, so
    the result is never infinite.
    """
    if is_static(dat) or is_treelike(dat):
        return mt_bu(dat)
    return None
