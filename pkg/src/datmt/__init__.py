"""Min-time analysis of dynamic attack trees.

Four interchangeable algorithms over one tree model: enumeration of
candidate attacks, a linear bottom-up pass (exact on static or treelike
trees), a mixed-integer linear program solved by a built-in
branch-and-bound, and modular decomposition wrapping any of them.
"""

from .attacks import (
    Attack,
    TimeAssignment,
    attack_duration,
    attack_leq,
    attack_schedule,
    extract_attack,
    is_successful,
    make_attack,
    propagate_times,
    reaches,
)
from .bottomup import mt_bu, mt_bu_checked
from .dsl import emit_result_json, parse_dat, serialize_dat
from .enumerative import (
    best_attack,
    generating_set,
    mt_enum,
    poset_join,
    seq_join,
    sequentialize,
)
from .milp import (
    MilpEncoding,
    MilpResult,
    build_model,
    decode_solution,
    export_model,
    mt_milp,
    solve_milp,
    verify_time_assignment,
)
from .model import (
    Dat,
    GateType,
    bas_set,
    big_m,
    build_dat,
    check_well_formed,
    is_static,
    is_treelike,
    structurally_equal,
)
from .modular import (
    ModularResult,
    ModulePlan,
    ModuleStep,
    contract_module,
    find_modules,
    mt_modular,
    run_modular,
    subdag,
)

__version__ = "0.1.0"

__all__ = [
    "Attack", "Dat", "GateType", "MilpEncoding", "MilpResult", "ModularResult",
    "ModulePlan", "ModuleStep", "TimeAssignment",
    "attack_duration", "attack_leq", "attack_schedule", "bas_set", "best_attack",
    "big_m", "build_dat", "build_model", "check_well_formed", "contract_module",
    "decode_solution", "emit_result_json", "export_model", "extract_attack",
    "find_modules", "generating_set", "is_static", "is_successful", "is_treelike",
    "make_attack", "mt_bu", "mt_bu_checked", "mt_enum", "mt_milp", "mt_modular",
    "parse_dat", "poset_join", "propagate_times", "reaches", "run_modular",
    "seq_join", "sequentialize", "serialize_dat", "solve_milp",
    "structurally_equal", "subdag", "verify_time_assignment",
]
