"""Small self-contained mixed-integer linear programming toolkit."""

from .branch_bound import solve_mip
from .lp_format import export_lp_file, parse_lp, write_lp
from .problem import (
    BINARY,
    CONTINUOUS,
    FEASIBILITY_TOL,
    INFEASIBLE,
    INTEGRALITY_TOL,
    ITERATION_LIMIT,
    OPTIMAL,
    Constraint,
    MipProblem,
    MipSolution,
    Variable,
)
from .simplex import solve_lp

__all__ = [
    "BINARY", "CONTINUOUS", "FEASIBILITY_TOL", "INFEASIBLE", "INTEGRALITY_TOL",
    "ITERATION_LIMIT", "OPTIMAL", "Constraint", "MipProblem", "MipSolution",
    "Variable", "export_lp_file", "parse_lp", "solve_lp", "solve_mip", "write_lp",
]
