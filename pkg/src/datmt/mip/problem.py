"""Mixed-integer linear program carrier: variables, >=/<=/= rows, min objective."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import MipError

CONTINUOUS = "continuous"
BINARY = "binary"

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
ITERATION_LIMIT = "iteration_limit"

SENSES = (">=", "<=", "=")

FEASIBILITY_TOL = 1e-6
INTEGRALITY_TOL = 1e-6


def objective_tol(bound: float) -> float:
    return 1e-9 * (1.0 + abs(bound))


@dataclass(frozen=True)
class Variable:
    name: str
    kind: str = CONTINUOUS
    lb: float = 0.0
    ub: float = math.inf


@dataclass(frozen=True)
class Constraint:
    name: str
    coeffs: tuple[tuple[int, float], ...]  # (variable index, coefficient)
    sense: str
    rhs: float


@dataclass
class MipProblem:
    """Minimization problem; mutable while being assembled, then treated read-only."""

    variables: list[Variable] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    objective: dict[int, float] = field(default_factory=dict)

    def add_variable(self, name: str, lb: float = 0.0, ub: float = math.inf) -> int:
        self.variables.append(Variable(name, CONTINUOUS, float(lb), float(ub)))
        return len(self.variables) - 1

    def add_binary(self, name: str) -> int:
        self.variables.append(Variable(name, BINARY, 0.0, 1.0))
        return len(self.variables) - 1

    def add_constraint(self, name, coeffs, sense, rhs) -> int:
        merged: dict[int, float] = {}
        for j, a in coeffs:
            merged[j] = merged.get(j, 0.0) + float(a)
        row = Constraint(name, tuple(sorted(merged.items())), sense, float(rhs))
        self.constraints.append(row)
        return len(self.constraints) - 1

    def set_objective(self, coeffs) -> None:
        self.objective = {j: float(a) for j, a in dict(coeffs).items()}

    @property
    def binary_indices(self) -> list[int]:
        return [j for j, v in enumerate(self.variables) if v.kind == BINARY]

    def validate(self) -> None:
        names = set()
        for j, v in enumerate(self.variables):
            if v.name in names:
                raise MipError(f"duplicate variable name {v.name!r}")
            names.add(v.name)
            if v.kind not in (CONTINUOUS, BINARY):
                raise MipError(f"unknown kind {v.kind!r} for {v.name!r}")
            if v.kind == BINARY and (v.lb, v.ub) != (0.0, 1.0):
                raise MipError(f"binary {v.name!r} must have bounds [0, 1]")
            if math.isnan(v.lb) or math.isnan(v.ub) or v.lb > v.ub:
                raise MipError(f"bad bounds [{v.lb}, {v.ub}] for {v.name!r}")
            if math.isinf(v.lb):
                raise MipError(f"{v.name!r} needs a finite lower bound")
        n = len(self.variables)
        for c in self.constraints:
            if c.sense not in SENSES:
                raise MipError(f"unknown sense {c.sense!r} in {c.name!r}")
            if not math.isfinite(c.rhs):
                raise MipError(f"non-finite right-hand side in {c.name!r}")
            for j, a in c.coeffs:
                if not 0 <= j < n:
                    raise MipError(f"{c.name!r} references undeclared variable {j}")
                if not math.isfinite(a):
                    raise MipError(f"non-finite coefficient in {c.name!r}")
        for j, a in self.objective.items():
            if not 0 <= j < n or not math.isfinite(a):
                raise MipError("bad objective term")

    def constraint_violation(self, values) -> float:
        """Largest absolute violation of any row (0 when feasible)."""
        worst = 0.0
        for c in self.constraints:
            lhs = sum(a * values[j] for j, a in c.coeffs)
            if c.sense == ">=":
                worst = max(worst, c.rhs - lhs)
            elif c.sense == "<=":
                worst = max(worst, lhs - c.rhs)
            else:
                worst = max(worst, abs(lhs - c.rhs))
        return worst


@dataclass(frozen=True)
class MipSolution:
    status: str
    objective: float
    assignment: dict[str, float]

    def value(self, name: str) -> float:
        return self.assignment[name]
