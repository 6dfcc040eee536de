"""Greedy approximation, its guarantee, the PTAS dispatcher and automatic solver choice."""

from __future__ import annotations

from fractions import Fraction

from .core import Clustering, ColoredForest, clustering_from_clusters, color_groups, derive_color_spec
from .errors import NoExactSolverApplicable, TooLargeClusterSize, UndefinedBound
from .few_clusters import max_clusters, solve_one_c
from .solvers_dp import max_cluster_size, solve_general, solve_one_two
from .solvers_linear import solve_diameter_le3, solve_one_one, tree_diameter


def greedy_fair(forest: ColoredForest) -> Clustering:
    """``n/d`` fair clusters filled color by color in ascending vertex id.

    Ignores the edges entirely; on forests with ``d >= 4`` this is still
    within :func:`approx_ratio_bound` of the optimum.
    """
    spec = derive_color_spec(forest)
    groups = color_groups(forest)
    clusters = []
    for j in range(spec.multiplier):
        cl = []
        for i, c in enumerate(spec.ratio):
            cl.extend(groups[i][j * c:(j + 1) * c])
        clusters.append(cl)
    return clustering_from_clusters(forest, clusters, "greedy")


def approx_ratio_bound(n: int, m: int, d: int, tree: bool = False) -> Fraction:
    """Worst-case ratio of :func:`greedy_fair` against the optimum.

    Greedy costs at most ``(d-1)n/2 + m`` even if it cuts every edge.  An
    optimal clustering has ``n/d`` clusters of size ``d`` holding at most
    ``d - 1`` edges each, so it cuts at least ``m - n(d-1)/d`` edges.  The
    ratio of the two cost bounds is returned; ``tree=True`` substitutes
    ``m = n - 1``, which keeps the bound finite for every ``d >= 2``.
    """
    if tree:
        num = (d * d + d) * n - 2 * d
        den = (d * d - 3 * d + 4) * n - 2 * d
    else:
        num = (d * d - d) * n + 2 * d * m
        den = (d * d - 5 * d + 4) * n + 2 * d * m
    if d < 2 or den <= 0:
        raise UndefinedBound(f"no finite bound for n={n}, m={m}, d={d}")
    return Fraction(num, den)


def solve_ptas(forest: ColoredForest, epsilon) -> Clustering:
    """Clustering of cost at most ``(1 + epsilon)`` times the optimum.

    Small ``d`` is solved exactly; otherwise greedy is returned when its
    guaranteed ratio is good enough, which always happens once
    ``d >= 4/epsilon + 5``.
    """
    eps = Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    spec = derive_color_spec(forest)
    if spec.d <= 4:
        return solve_general(forest)
    if approx_ratio_bound(forest.n, forest.m, spec.d) <= 1 + eps:
        return greedy_fair(forest)
    try:
        return solve_general(forest)
    except TooLargeClusterSize:
        pass
    if forest.k == 2 and 1 in spec.ratio and spec.multiplier <= max_clusters():
        return solve_one_c(forest)
    raise TooLargeClusterSize(
        f"epsilon={eps} needs an exact solve for d={spec.d} < {4 / eps + 5}, "
        f"beyond the exact-solver ceiling d <= {max_cluster_size()}; "
        "raise FCC_MAX_D or epsilon"
    )


def solve_auto(forest: ColoredForest) -> Clustering:
    """Pick the most specific exact solver that applies."""
    spec = derive_color_spec(forest)
    if spec.ratio == (1, 1):
        return solve_one_one(forest)
    if forest.is_tree() and tree_diameter(forest) <= 3:
        return solve_diameter_le3(forest)
    if sorted(spec.ratio) == [1, 2]:
        return solve_one_two(forest)
    if spec.d <= max_cluster_size():
        return solve_general(forest)
    if forest.k == 2 and 1 in spec.ratio and spec.multiplier <= max_clusters():
        return solve_one_c(forest)
    raise NoExactSolverApplicable(
        f"no exact solver for ratio {':'.join(map(str, spec.ratio))} "
        f"(d={spec.d} > {max_cluster_size()}, {spec.multiplier} clusters); "
        "approximate options: greedy_fair, solve_ptas"
    )
