"""Jitted simplex pivot loop; semantics identical to the plain version.

The tableaus here are small (hundreds of rows), which puts vectorized numpy
in its worst overhead regime.  The loop below mutates its arrays in place
and reports one of OPTIMAL_CODE / LIMIT_CODE / UNBOUNDED_CODE.
"""

from __future__ import annotations

import numpy as np
from numba import njit

OPTIMAL_CODE = 0
LIMIT_CODE = 1
UNBOUNDED_CODE = 2

PIVOT_EPS = 1e-9
RATIO_TIE = 1e-9
REFRESH_EVERY = 128  # fresh reduced costs at least this often


@njit(cache=True)
def _fresh_reduced(matrix, basis, cost, reduced):
    m, n = matrix.shape
    for j in range(n):
        reduced[j] = cost[j]
    for i in range(m):
        cb = cost[basis[i]]
        if cb != 0.0:
            row = matrix[i]
            for j in range(n):
                reduced[j] -= cb * row[j]
    for i in range(m):
        reduced[basis[i]] = 0.0


@njit(cache=True)
def _choose_entering(reduced, statuses, in_basis, lb, ub, dual_tol, bland):
    n = reduced.shape[0]
    best = -1
    best_score = dual_tol
    for j in range(n):
        if in_basis[j] or lb[j] == ub[j]:
            continue
        r = reduced[j]
        if statuses[j] == 0 and r < -dual_tol:
            score = -r
        elif statuses[j] == 1 and r > dual_tol:
            score = r
        else:
            continue
        if bland:
            return j
        if score > best_score:
            best_score = score
            best = j
    return best


@njit(cache=True)
def pivot_loop(matrix, lb, ub, basis, xb, statuses, in_basis, cost,
               pivots, pivot_cap, bland_after):
    """Run pivots until optimal, the cap, or unboundedness; returns (code, pivots)."""
    m, n = matrix.shape
    reduced = np.empty(n)
    steps = np.empty(m)
    _fresh_reduced(matrix, basis, cost, reduced)
    max_cost = 0.0
    for j in range(n):
        c = abs(cost[j])
        if c > max_cost:
            max_cost = c
    dual_tol = 1e-9 * (1.0 + max_cost)
    since_refresh = 0

    while True:
        if pivots >= pivot_cap:
            return LIMIT_CODE, pivots
        if since_refresh >= REFRESH_EVERY:
            _fresh_reduced(matrix, basis, cost, reduced)
            since_refresh = 0
        bland = pivots >= bland_after
        j = _choose_entering(reduced, statuses, in_basis, lb, ub, dual_tol, bland)
        if j < 0:
            if since_refresh == 0:
                return OPTIMAL_CODE, pivots
            # confirm against drift before declaring optimality
            _fresh_reduced(matrix, basis, cost, reduced)
            since_refresh = 0
            j = _choose_entering(reduced, statuses, in_basis, lb, ub, dual_tol, bland)
            if j < 0:
                return OPTIMAL_CODE, pivots

        direction = 1.0 if statuses[j] == 0 else -1.0
        flip_cap = ub[j] - lb[j]
        tmin = np.inf
        for i in range(m):
            delta = -direction * matrix[i, j]
            if delta > PIVOT_EPS:
                room = ub[basis[i]] - xb[i]
                if room < 0.0:
                    room = 0.0
                t = room / delta
            elif delta < -PIVOT_EPS:
                room = xb[i] - lb[basis[i]]
                if room < 0.0:
                    room = 0.0
                t = room / (-delta)
            else:
                t = np.inf
            steps[i] = t
            if t < tmin:
                tmin = t

        if flip_cap <= tmin + RATIO_TIE:
            if flip_cap == np.inf:
                return UNBOUNDED_CODE, pivots
            pivots += 1
            since_refresh += 1
            for i in range(m):
                xb[i] -= direction * flip_cap * matrix[i, j]
            statuses[j] = 1 - statuses[j]
            continue

        leaving = -1
        if bland:
            best_var = np.int64(2 ** 62)
            for i in range(m):
                if steps[i] <= tmin + RATIO_TIE and basis[i] < best_var:
                    best_var = basis[i]
                    leaving = i
        else:
            best_mag = -1.0
            for i in range(m):
                if steps[i] <= tmin + RATIO_TIE:
                    mag = abs(matrix[i, j])
                    if mag > best_mag:
                        best_mag = mag
                        leaving = i

        pivots += 1
        since_refresh += 1
        start = lb[j] if statuses[j] == 0 else ub[j]
        delta_leaving = -direction * matrix[leaving, j]
        for i in range(m):
            xb[i] -= direction * tmin * matrix[i, j]

        left = basis[leaving]
        piv = matrix[leaving, j]
        for jj in range(n):
            matrix[leaving, jj] /= piv
        for i in range(m):
            if i == leaving:
                continue
            c = matrix[i, j]
            if c != 0.0:
                pivot_row = matrix[leaving]
                row = matrix[i]
                for jj in range(n):
                    row[jj] -= c * pivot_row[jj]
        rj = reduced[j]
        if rj != 0.0:
            pivot_row = matrix[leaving]
            for jj in range(n):
                reduced[jj] -= rj * pivot_row[jj]
        reduced[j] = 0.0
        for i in range(m):
            matrix[i, j] = 0.0
        matrix[leaving, j] = 1.0
        basis[leaving] = j
        xb[leaving] = start + direction * tmin
        in_basis[left] = False
        in_basis[j] = True
        statuses[left] = 1 if delta_leaving > 0 else 0
