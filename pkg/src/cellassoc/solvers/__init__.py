from .combinatorial import (
    ENUMERATION_CAP,
    InstanceTooLarge,
    congestion_identity_check,
    iter_assignment_blocks,
    pairwise_separation,
    solve_c1d,
    solve_c1r,
)
from .heuristics import heuristic
from .l2d import SolverError, build_l2d_model, induced_point, solve_l2d
from .quadratic import (
    ConvexityProbe,
    PGDOptions,
    convexity_probe,
    project_rows,
    projected_gradient,
    q_gradient,
    q_objective,
    simplex_project,
    solve_q1d,
    solve_q2d,
)
from .report import FORMULATIONS, SolveReport, check_fractional, round_argmax
from .simplex import LPModel, LPResult, lp_solve
