"""Exact, relaxed and approximate fair correlation clustering on vertex-colored forests."""

from .approx import approx_ratio_bound, greedy_fair, solve_auto, solve_ptas
from .core import (
    Clustering,
    ColoredForest,
    ColorSpec,
    cc_cost,
    cost_by_cuts,
    derive_color_spec,
    intra_lower_bound,
    is_fair,
    validate_instance,
)
from .few_clusters import cut_off_costs, solve_one_c
from .join import CostTable, join
from .oracle import brute_force_exact, brute_force_relaxed
from .relaxed import (
    RelaxedParams,
    alpha_cluster_bound,
    is_relaxed_fair,
    solve_alpha_relaxed_one_one,
)
from .solvers_dp import assemble_one_two, solve_general, solve_one_two, split_tables
from .solvers_linear import max_matching_forest, solve_diameter_le3, solve_one_one

__all__ = [
    "Clustering",
    "ColoredForest",
    "ColorSpec",
    "CostTable",
    "RelaxedParams",
    "alpha_cluster_bound",
    "approx_ratio_bound",
    "assemble_one_two",
    "brute_force_exact",
    "brute_force_relaxed",
    "cc_cost",
    "cost_by_cuts",
    "cut_off_costs",
    "derive_color_spec",
    "greedy_fair",
    "intra_lower_bound",
    "is_fair",
    "is_relaxed_fair",
    "join",
    "max_matching_forest",
    "solve_alpha_relaxed_one_one",
    "solve_auto",
    "solve_diameter_le3",
    "solve_general",
    "solve_one_c",
    "solve_one_one",
    "solve_one_two",
    "solve_ptas",
    "split_tables",
    "validate_instance",
]
