"""Bounded-variable primal simplex on a dense tableau.

Two phases: artificial variables build the initial basis (with the starting
bound sides chosen to keep their number low, often zero), then the real
objective is minimized.  Entering variables follow the largest reduced-cost
violation; after ``3 * (rows + cols)`` pivots the rule switches to Bland's
(smallest index) so the method terminates even on degenerate problems.
Reduced costs are carried along incrementally and re-verified from scratch
before optimality is declared.  Every returned optimum is re-checked
against the original rows.

Column layout: structural variables, then one slack per row, then one
artificial per repaired row; repeated solves of the same problem under
different bounds share the prebuilt matrix (:class:`LpCore`).  The pivot
loop itself lives in :mod:`.kernel`.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import SolverError, UnboundedProblem
from .kernel import LIMIT_CODE, UNBOUNDED_CODE, pivot_loop
from .problem import (
    FEASIBILITY_TOL,
    INFEASIBLE,
    ITERATION_LIMIT,
    OPTIMAL,
    MipProblem,
    MipSolution,
)

AT_LOWER = 0
AT_UPPER = 1


class LpCore:
    """Per-problem constants shared by every bounds-variant solve."""

    def __init__(self, problem: MipProblem):
        problem.validate()
        self.problem = problem
        n = self.n = len(problem.variables)
        m = self.m = len(problem.constraints)
        self.width = n + m  # structurals plus one slack per row
        self.matrix = np.zeros((m, self.width))
        self.rhs = np.zeros(m)
        self.senses = [c.sense for c in problem.constraints]
        for i, c in enumerate(problem.constraints):
            for j, a in c.coeffs:
                self.matrix[i, j] += a
            self.rhs[i] = c.rhs
            if c.sense == "<=":
                self.matrix[i, n + i] = 1.0
            elif c.sense == ">=":
                self.matrix[i, n + i] = -1.0
        self.lb_template = np.concatenate([
            np.array([v.lb for v in problem.variables]), np.zeros(m)])
        self.ub_template = np.concatenate([
            np.array([v.ub for v in problem.variables]), np.full(m, math.inf)])
        for i, sense in enumerate(self.senses):
            if sense == "=":
                self.ub_template[n + i] = 0.0  # that slack column is all zero
        self.cost_template = np.zeros(self.width)
        for j, a in problem.objective.items():
            self.cost_template[j] = a


def _pick_start(core: LpCore, lb, ub):
    """Initial nonbasic sides: whichever of all-low / all-high (where finite)
    leaves fewer rows to repair with artificials in phase 1."""
    n = core.n
    best = None
    for side in (AT_LOWER, AT_UPPER):
        statuses = np.zeros(core.width, dtype=np.int8)
        if side == AT_UPPER:
            statuses[:n][np.isfinite(ub[:n])] = AT_UPPER
        start = np.where(statuses[:n] == AT_LOWER, lb[:n], ub[:n])
        residual = core.rhs - core.matrix[:, :n] @ start
        repairs = 0
        for i, sense in enumerate(core.senses):
            if sense == "=" or (sense == "<=" and residual[i] < 0) \
                    or (sense == ">=" and residual[i] > 0):
                repairs += 1
        if best is None or repairs < best[0]:
            best = (repairs, statuses, residual)
        if best[0] == 0:
            break
    return best[1], best[2]


def solve_core(core: LpCore, var_bounds=None, max_pivots=None):
    """Solve one bounds variant; returns (status, objective, x over variables)."""
    n, m = core.n, core.m
    lb = core.lb_template.copy()
    ub = core.ub_template.copy()
    if var_bounds:
        for j, (lo, hi) in var_bounds.items():
            lb[j], ub[j] = lo, hi
            if lo > hi:
                return INFEASIBLE, math.nan, None
    if max_pivots is None:
        max_pivots = 50 * (n + m)

    if m == 0:
        cost = core.cost_template
        x = np.where(cost[:n] >= 0, lb[:n], ub[:n])
        if not np.all(np.isfinite(x)):
            raise UnboundedProblem("unbounded variable with negative cost")
        return OPTIMAL, float(cost[:n] @ x), x

    statuses, residual = _pick_start(core, lb, ub)

    # artificial columns are appended only for the rows that need repair
    basis = np.empty(m, dtype=np.int64)
    art_rows = []
    for i, sense in enumerate(core.senses):
        r = residual[i]
        if sense == "<=" and r >= 0:
            basis[i] = n + i
        elif sense == ">=" and r <= 0:
            basis[i] = n + i
        else:
            basis[i] = core.width + len(art_rows)
            art_rows.append((i, 1.0 if r >= 0 else -1.0))

    k = len(art_rows)
    width = core.width + k
    matrix = np.zeros((m, width))
    matrix[:, :core.width] = core.matrix
    for col_off, (i, sigma) in enumerate(art_rows):
        matrix[i, core.width + col_off] = sigma
    if k:
        lb = np.concatenate([lb, np.zeros(k)])
        ub = np.concatenate([ub, np.full(k, math.inf)])
        statuses = np.concatenate([statuses, np.zeros(k, dtype=np.int8)])
    cost = np.concatenate([core.cost_template, np.zeros(k)])

    tableau = matrix.copy()
    xb = np.zeros(m)
    for i in range(m):
        scale = matrix[i, basis[i]]
        if scale != 1.0:
            tableau[i] = matrix[i] / scale
        xb[i] = residual[i] / scale

    in_basis = np.zeros(width, dtype=np.bool_)
    in_basis[basis] = True
    bland_after = 3 * (m + width)
    pivots = 0

    if k:
        phase1 = np.zeros(width)
        phase1[core.width:] = 1.0
        code, pivots = pivot_loop(
            tableau, lb, ub, basis, xb, statuses, in_basis, phase1,
            pivots, max_pivots, bland_after,
        )
        if code == LIMIT_CODE:
            return ITERATION_LIMIT, math.nan, None
        if code == UNBOUNDED_CODE:
            raise UnboundedProblem("phase one came out unbounded")
        infeasibility = 0.0
        for i in range(m):
            if basis[i] >= core.width:
                infeasibility += xb[i]
        if infeasibility > FEASIBILITY_TOL:
            return INFEASIBLE, math.nan, None
        ub[core.width:] = 0.0  # freeze every artificial at zero for phase 2

    code, pivots = pivot_loop(
        tableau, lb, ub, basis, xb, statuses, in_basis, cost,
        pivots, max_pivots, bland_after,
    )
    if code == LIMIT_CODE:
        return ITERATION_LIMIT, math.nan, None
    if code == UNBOUNDED_CODE:
        raise UnboundedProblem("no finite optimum")

    x = np.where(statuses == AT_LOWER, lb, ub)
    x[basis] = xb
    x = _polished(x, matrix, core.rhs, basis, in_basis)
    objective = float(cost[:n] @ x[:n])
    _self_check(core.problem, lb, ub, x[:n])
    return OPTIMAL, objective, x[:n]


def _polished(x, matrix, rhs, basis, in_basis) -> np.ndarray:
    """Basic values from a fresh factorization of the basis, if that helps."""
    nonbasic = np.flatnonzero(~in_basis)
    try:
        fresh = np.linalg.solve(matrix[:, basis], rhs - matrix[:, nonbasic] @ x[nonbasic])
    except np.linalg.LinAlgError:
        return x
    if not np.all(np.isfinite(fresh)):
        return x
    refined = x.copy()
    refined[basis] = fresh
    if _residual(matrix, rhs, refined) <= _residual(matrix, rhs, x):
        return refined
    return x


def _residual(matrix, rhs, x) -> float:
    gap = matrix @ x - rhs
    return float(np.max(np.abs(gap))) if gap.size else 0.0


def _self_check(problem, lb, ub, values) -> None:
    worst = problem.constraint_violation(values)
    if worst > FEASIBILITY_TOL:
        raise SolverError(f"optimum violates a row by {worst:g}")
    n = len(values)
    if np.any(values < lb[:n] - FEASIBILITY_TOL) or np.any(values > ub[:n] + FEASIBILITY_TOL):
        raise SolverError("optimum leaves a variable bound")


def solve_lp_raw(problem: MipProblem, var_bounds=None, max_pivots=None, core: LpCore | None = None):
    """LP relaxation; returns (status, objective, value array over variables)."""
    if core is None:
        core = LpCore(problem)
    return solve_core(core, var_bounds, max_pivots)


def solve_lp(problem: MipProblem, var_bounds=None, max_pivots=None) -> MipSolution:
    """Solve the LP relaxation (binaries treated as continuous in [0, 1])."""
    status, obj, x = solve_lp_raw(problem, var_bounds, max_pivots)
    if status != OPTIMAL:
        return MipSolution(status, math.nan, {})
    names = {v.name: float(x[j]) for j, v in enumerate(problem.variables)}
    return MipSolution(OPTIMAL, obj, names)
