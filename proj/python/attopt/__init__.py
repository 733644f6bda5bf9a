"""Time-optimal rigid-body attitude maneuvers on SO(3).

Thin wrapper over the compiled core. Matrices are numpy arrays; trajectories
come back as dicts of stacked arrays (R rows are row-major 3x3).
"""

from ._core import (
    Error,
    InertiaModel,
    ManeuverProblem,
    exp_so3,
    forward_extremal,
    hat,
    load_problem,
    log_so3,
    optimize,
    orthogonality_error,
    parse_problem,
    rollout,
    rotation_angle,
    simulate,
    solve_step,
    vee,
)

__all__ = [
    "Error",
    "InertiaModel",
    "ManeuverProblem",
    "exp_so3",
    "forward_extremal",
    "hat",
    "load_problem",
    "log_so3",
    "optimize",
    "orthogonality_error",
    "parse_problem",
    "rollout",
    "rotation_angle",
    "simulate",
    "solve_step",
    "vee",
]
