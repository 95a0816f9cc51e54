"""Best-first branch-and-bound over the binary variables of a MipProblem.

Nodes are ordered by their relaxation bound (ties: deeper first, then
insertion order, so runs are reproducible).  Branching picks the most
fractional binary, lowest index on ties.  Two cheap sources of incumbents
keep the search pruned: an integral relaxation is pinned and re-solved
exactly, and every expanded node also tries its rounded binary pattern
once (a feasible rounding is a valid upper bound, never taken on faith:
the LP re-solve under the pinned pattern certifies it).
"""

from __future__ import annotations

import heapq
import math

from .problem import (
    INFEASIBLE,
    INTEGRALITY_TOL,
    ITERATION_LIMIT,
    OPTIMAL,
    MipProblem,
    MipSolution,
    objective_tol,
)
from .simplex import LpCore, solve_core

DEFAULT_NODE_LIMIT = 10**6


def _most_fractional(binaries, x):
    best, best_frac = -1, INTEGRALITY_TOL
    for j in binaries:
        frac = abs(x[j] - round(x[j]))
        if frac > best_frac:
            best, best_frac = j, frac
    return best


PATTERN_BUDGET = 40  # give up on rounding probes after this many duds in a row


class _Search:
    def __init__(self, problem: MipProblem):
        self.core = LpCore(problem)
        self.binaries = problem.binary_indices
        self.incumbent_obj = math.inf
        self.incumbent_x = None
        self.tried_patterns: dict[tuple[float, ...], bool] = {}
        self.pattern_misses = 0
        self.hit_pivot_limit = False

    def prunable(self, bound: float) -> bool:
        return (self.incumbent_x is not None
                and bound >= self.incumbent_obj - objective_tol(self.incumbent_obj))

    def relax(self, fixed):
        status, bound, x = solve_core(self.core, fixed)
        if status == ITERATION_LIMIT:
            self.hit_pivot_limit = True
        return status, bound, x

    def try_pattern(self, fixed, values, force=False) -> bool:
        """Pin every binary at the given 0/1 value and certify by one LP.

        Returns whether the pinned problem is feasible (cached across calls).
        """
        pattern = tuple(float(round(v)) for v in values)
        if pattern in self.tried_patterns:
            return self.tried_patterns[pattern]
        if not force and self.pattern_misses >= PATTERN_BUDGET:
            return True  # unknown; pretend fine, probing is only a heuristic
        pinned = dict(fixed)
        for j, v in zip(self.binaries, pattern):
            pinned[j] = (v, v)
        status, obj, px = self.relax(pinned)
        feasible = status == OPTIMAL
        self.tried_patterns[pattern] = feasible
        if feasible and obj < self.incumbent_obj - objective_tol(obj):
            self.incumbent_obj, self.incumbent_x = obj, px
            self.pattern_misses = 0
        else:
            self.pattern_misses += 1
        return feasible


def solve_mip(
    problem: MipProblem,
    node_limit: int = DEFAULT_NODE_LIMIT,
    hints=None,
) -> MipSolution:
    """Globally optimal solution, exact up to the declared tolerances.

    ``hints`` may carry binary patterns ({index: 0/1}) worth certifying as
    starting incumbents; useless or infeasible hints are simply dropped.
    """
    search = _Search(problem)
    for hint in hints or ():
        search.try_pattern({}, [hint.get(j, 0.0) for j in search.binaries])
    search.pattern_misses = 0
    status, bound, x = search.relax({})
    if status == INFEASIBLE:
        return MipSolution(INFEASIBLE, math.nan, {})
    if status == ITERATION_LIMIT:
        return MipSolution(ITERATION_LIMIT, math.nan, {})

    counter = 0
    heap = [(bound, 0, counter, {}, x)]  # (bound, -depth, seq, fixed, relaxation point)
    nodes = 0

    while heap:
        bound, neg_depth, _, fixed, x = heapq.heappop(heap)
        if search.prunable(bound):
            break  # best-first: every remaining node is at least as bad
        nodes += 1
        if nodes > node_limit or search.hit_pivot_limit:
            return MipSolution(ITERATION_LIMIT, search.incumbent_obj,
                               _named(problem, search.incumbent_x))

        j = _most_fractional(search.binaries, x)
        if j < 0:
            feasible = search.try_pattern(fixed, [x[b] for b in search.binaries], force=True)
            if feasible:
                continue
            # pinning an integral-looking point can fail on a tolerance edge;
            # keep the subtree alive by branching on any still-free binary
            j = next((b for b in search.binaries if b not in fixed), -1)
            if j < 0:
                continue
        else:
            search.try_pattern(fixed, [x[b] for b in search.binaries])
            if search.prunable(bound):
                continue

        for value in (0.0, 1.0):
            child = dict(fixed)
            child[j] = (value, value)
            status, child_bound, cx = search.relax(child)
            if search.hit_pivot_limit:
                return MipSolution(ITERATION_LIMIT, search.incumbent_obj,
                                   _named(problem, search.incumbent_x))
            if status != OPTIMAL:
                continue
            if search.prunable(child_bound):
                continue
            counter += 1
            heapq.heappush(heap, (child_bound, neg_depth - 1, counter, child, cx))

    if search.incumbent_x is None:
        return MipSolution(INFEASIBLE, math.nan, {})
    return MipSolution(OPTIMAL, search.incumbent_obj, _named(problem, search.incumbent_x))


def _named(problem, x):
    if x is None:
        return {}
    return {v.name: float(x[j]) for j, v in enumerate(problem.variables)}
