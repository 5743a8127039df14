"""p-step vehicle-routing relaxations."""

import json

from ._pstep import (
    Instance,
    InfeasibleError,
    ParseError,
    ValidationError,
    check_path,
    enumerate_psteps,
    explicit_bound,
    generate_random,
    generate_short_clusters,
    generate_wide_clusters,
    integer_optimum,
    load_instance,
    parse_instance,
    run_suite,
    solve_relaxation_json,
    sp_lp_bound,
    vf_bound,
)


def solve_relaxation(instance, p, time_windows=False, workers=1,
                     max_iters=10000, turning_points=()):
    """Column generation at step size p; returns the result-file dict."""
    text = solve_relaxation_json(instance, p, time_windows, workers, max_iters,
                                 list(turning_points))
    return json.loads(text)


__all__ = [
    "Instance",
    "InfeasibleError",
    "ParseError",
    "ValidationError",
    "check_path",
    "enumerate_psteps",
    "explicit_bound",
    "generate_random",
    "generate_short_clusters",
    "generate_wide_clusters",
    "integer_optimum",
    "load_instance",
    "parse_instance",
    "run_suite",
    "solve_relaxation",
    "sp_lp_bound",
    "vf_bound",
]
