"""Min time as a mixed-integer linear program.

One completion-time variable per node, bounded by the big-M constant that
stands in for "never".  OR gates pick a child through indicator binaries;
AND gates dominate all children; sequential gates get a kill switch that
is forced as soon as a child is unfinished or some step below a later
child starts too early.  Start-before-finish tests over step pairs are
linearized with one selector binary per pair.

Two algebraically close forms of the pair constraint exist; ``inline`` is
the default, ``figure`` is the published tighter variant which needs one
unit of slack above big-M so unexecuted steps can park out of the way (see
``build_model``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .attacks import Attack, TimeAssignment, attack_duration, extract_attack, propagate_times
from .errors import InconsistentSolution, NotExactAssignment, SolverLimit
from .mip import ITERATION_LIMIT, OPTIMAL, MipProblem, MipSolution, solve_mip, write_lp
from .model import Dat, GateType, big_m

INF = math.inf

VARIANTS = ("inline", "figure")


@dataclass(frozen=True)
class MilpEncoding:
    dat: Dat
    problem: MipProblem
    f_vars: tuple[int, ...]                       # node -> variable index
    x_vars: dict[tuple[int, int], int]            # (or node, child position)
    y_vars: dict[int, int]                        # sequential node
    z_vars: dict[tuple[int, int, int, int], int]  # (sand, position, step, step')
    big_m: float
    variant: str


def build_model(dat: Dat, variant: str = "inline") -> MilpEncoding:
    """Instantiate the constraint families over the tree.

    With the ``figure`` pair variant the time variables get an upper bound
    of M + 1 instead of M: that form reads "parked at or above M + 1" as
    not executed, so capping at M would wrongly force the kill switch for
    every unexecuted shared step.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    m_const = big_m(dat)
    ub = m_const + 1.0 if variant == "figure" else m_const
    p = MipProblem()

    f_vars = tuple(p.add_variable(f"f_{dat.names[v]}", 0.0, ub) for v in range(dat.n_nodes))
    x_vars: dict[tuple[int, int], int] = {}
    y_vars: dict[int, int] = {}
    z_vars: dict[tuple[int, int, int, int], int] = {}

    for v in range(dat.n_nodes):
        name = dat.names[v]
        kids = dat.children[v]
        t = dat.types[v]
        if t is GateType.BAS:
            p.add_constraint(f"dur_{name}", [(f_vars[v], 1.0)], ">=", dat.durations[v])
        elif t is GateType.OR:
            for i in range(len(kids)):
                x_vars[v, i] = p.add_binary(f"x_{name}_{i + 1}")
            for i, c in enumerate(kids):
                # f_v >= f_child + M (x - 1)
                p.add_constraint(
                    f"or_{name}_{i + 1}",
                    [(f_vars[v], 1.0), (f_vars[c], -1.0), (x_vars[v, i], -m_const)],
                    ">=",
                    -m_const,
                )
            p.add_constraint(
                f"orpick_{name}",
                [(x_vars[v, i], 1.0) for i in range(len(kids))],
                ">=",
                1.0,
            )
        elif t is GateType.AND:
            for i, c in enumerate(kids):
                p.add_constraint(
                    f"and_{name}_{i + 1}",
                    [(f_vars[v], 1.0), (f_vars[c], -1.0)],
                    ">=",
                    0.0,
                )
        else:
            y_vars[v] = p.add_binary(f"y_{name}")
            p.add_constraint(
                f"last_{name}",
                [(f_vars[v], 1.0), (f_vars[kids[-1]], -1.0)],
                ">=",
                0.0,
            )
            # f_v >= M y: the gate never finishes once the switch trips
            p.add_constraint(
                f"kill_{name}",
                [(f_vars[v], 1.0), (y_vars[v], -m_const)],
                ">=",
                0.0,
            )
            for i, c in enumerate(kids[:-1]):
                # y >= (1 + f_child - M) / M, scaled by M
                p.add_constraint(
                    f"unfin_{name}_{i + 1}",
                    [(y_vars[v], m_const), (f_vars[c], -1.0)],
                    ">=",
                    1.0 - m_const,
                )
            for i in range(len(kids) - 1):
                for a in sorted(dat._bas_sets[kids[i]]):
                    for b in sorted(dat._bas_sets[kids[i + 1]]):
                        z = p.add_binary(f"z_{name}_{i + 1}_{dat.names[a]}_{dat.names[b]}")
                        z_vars[v, i, a, b] = z
                        # y >= (f_a - f_b + d_b) / M - z, scaled by M
                        p.add_constraint(
                            f"late_{name}_{i + 1}_{dat.names[a]}_{dat.names[b]}",
                            [(y_vars[v], m_const), (f_vars[a], -1.0),
                             (f_vars[b], 1.0), (z, m_const)],
                            ">=",
                            dat.durations[b],
                        )
                        if variant == "inline":
                            # y >= (M - f_a) / M - (1 - z), scaled by M
                            p.add_constraint(
                                f"ran_{name}_{i + 1}_{dat.names[a]}_{dat.names[b]}",
                                [(y_vars[v], m_const), (f_vars[a], 1.0), (z, -m_const)],
                                ">=",
                                0.0,
                            )
                        else:
                            # y >= (M - f_a + 1) / M + (z - 1), scaled by M
                            p.add_constraint(
                                f"ran_{name}_{i + 1}_{dat.names[a]}_{dat.names[b]}",
                                [(y_vars[v], m_const), (f_vars[a], 1.0), (z, -m_const)],
                                ">=",
                                1.0,
                            )

    p.set_objective({f_vars[dat.root]: 1.0})
    return MilpEncoding(dat, p, f_vars, x_vars, y_vars, z_vars, m_const, variant)


def verify_time_assignment(dat: Dat, f: TimeAssignment) -> bool:
    """Check the completion-time conditions directly on extended reals."""
    for v in range(dat.n_nodes):
        if v not in f:
            return False
        t = dat.types[v]
        kids = dat.children[v]
        fv = f[v]
        if fv < 0:
            return False
        if t is GateType.BAS:
            if fv < dat.durations[v]:
                return False
        elif t is GateType.OR:
            if fv < min(f[c] for c in kids):
                return False
        elif t is GateType.AND:
            if fv < max(f[c] for c in kids):
                return False
        else:
            if fv < f[kids[-1]]:
                return False
            if any(f[c] == INF for c in kids) and fv != INF:
                return False
            if fv != INF and _pair_violation(dat, f, kids):
                return False
    return True


def _pair_violation(dat: Dat, f: TimeAssignment, kids) -> bool:
    for i in range(len(kids) - 1):
        for a in dat._bas_sets[kids[i]]:
            fa = f[a]
            if fa == INF:
                continue
            for b in dat._bas_sets[kids[i + 1]]:
                if f[b] - dat.durations[b] < fa:
                    return True
    return False


def decode_solution(enc: MilpEncoding, sol: MipSolution) -> TimeAssignment:
    """Map solver values back to node times.

    Basic-step values at or above M - 1/2 mean "not executed" and decode
    to infinity; gate values are then re-propagated exactly, which keeps
    round-off in the solver from leaking into the strict pair tests.
    """
    if sol.status != OPTIMAL:
        raise InconsistentSolution(f"cannot decode a {sol.status} solution")
    dat = enc.dat
    cut = enc.big_m - 0.5
    bas_times = {}
    for a in dat.bas_nodes:
        value = sol.assignment[enc.problem.variables[enc.f_vars[a]].name]
        bas_times[a] = INF if value >= cut else max(value, dat.durations[a])
    f = propagate_times(dat, bas_times)
    if not verify_time_assignment(dat, f):
        raise InconsistentSolution("decoded times violate a completion-time condition")
    return f


@dataclass(frozen=True)
class MilpResult:
    value: float
    witness: Attack | None
    assignment: TimeAssignment
    encoding: MilpEncoding
    solution: MipSolution


def solve_milp(dat: Dat, variant: str = "inline") -> MilpResult:
    """Build, solve and decode; the reported value is the witness duration.

    The witness attack is read off the optimal point and re-costed, so on
    integer durations the value is exact rather than solver-noisy.  Above
    M - 1/2 the problem is unsatisfiable and the value is infinity.
    """
    enc = build_model(dat, variant)
    # an always-feasible incumbent: every gate picks a child and every
    # sequential gate trips its kill switch (root time M)
    stop_all = {j: 1.0 for j in enc.x_vars.values()}
    stop_all.update({j: 1.0 for j in enc.y_vars.values()})
    stop_all.update({j: 0.0 for j in enc.z_vars.values()})
    sol = solve_mip(enc.problem, hints=[stop_all])
    if sol.status == ITERATION_LIMIT:
        raise SolverLimit("branch-and-bound budget exhausted")
    if sol.status != OPTIMAL:
        raise InconsistentSolution("the model is feasible by construction")
    if sol.objective >= enc.big_m - 0.5:
        f = {v: INF for v in range(dat.n_nodes)}
        return MilpResult(INF, None, f, enc, sol)
    f = decode_solution(enc, sol)
    cutoff = sol.objective + 1e-6 * (1.0 + abs(sol.objective))
    try:
        witness = extract_attack(dat, f, cutoff)
        value = attack_duration(witness, dat.durations)
    except NotExactAssignment:
        witness, value = None, sol.objective
    if witness is not None and abs(value - sol.objective) > 1e-6 * (1.0 + abs(sol.objective)):
        raise InconsistentSolution(
            f"witness duration {value} is far from the optimum {sol.objective}"
        )
    return MilpResult(value, witness, f, enc, sol)


def mt_milp(dat: Dat, variant: str = "inline") -> float:
    """Min time through the MILP route; infinity when unsatisfiable."""
    return solve_milp(dat, variant).value


def export_model(dat: Dat, variant: str = "inline") -> str:
    """LP-format text of the instantiated model."""
    return write_lp(build_model(dat, variant).problem)
