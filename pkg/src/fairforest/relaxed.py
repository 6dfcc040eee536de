"""Relaxed fairness: per-color share bands instead of exact ratios.

A cluster is relaxed fair when the share of every color lies in
``[lower[i], upper[i]]``.  The alpha variant uses the band
``[alpha * share, share / alpha]`` around the global share of each color.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .core import Clustering, ColoredForest, clustering_from_clusters, derive_color_spec, set_colorings
from .errors import BadParams, NoFairAssembly
from .join import Cut
from .solvers_dp import ColoringIndexer, _merge_components, components_after_cut, split_tables
from .solvers_linear import _require_one_one


@dataclass(frozen=True)
class RelaxedParams:
    lower: tuple[Fraction, ...]
    upper: tuple[Fraction, ...]
    # Alpha bands may reach an upper share of 1 or more (e.g. alpha <= 1/2
    # for two equal colors); the general definition asks for upper < 1.
    allow_full_upper: bool = False

    def check(self, forest: ColoredForest) -> None:
        if len(self.lower) != forest.k or len(self.upper) != forest.k:
            raise BadParams(f"need {forest.k} lower and upper shares")
        for i, (p, q) in enumerate(zip(self.lower, self.upper)):
            share = Fraction(forest.color_counts[i], forest.n)
            if not 0 < p <= share <= q:
                raise BadParams(f"color {i}: need 0 < {p} <= {share} <= {q}")
            if q >= 1 and not self.allow_full_upper:
                raise BadParams(f"color {i}: upper share {q} must be below 1")


def alpha_params(forest: ColoredForest, alpha) -> RelaxedParams:
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise BadParams(f"alpha must lie in (0, 1), got {alpha}")
    shares = [Fraction(c, forest.n) for c in forest.color_counts]
    return RelaxedParams(
        tuple(alpha * s for s in shares), tuple(s / alpha for s in shares), allow_full_upper=True
    )


def set_in_band(coloring, params: RelaxedParams) -> bool:
    size = sum(coloring)
    if size == 0:
        return False
    return all(
        p * size <= c <= q * size for c, p, q in zip(coloring, params.lower, params.upper)
    )


def is_relaxed_fair(forest: ColoredForest, clustering, params) -> bool:
    if not isinstance(params, RelaxedParams):
        params = alpha_params(forest, params)
    params.check(forest)
    assignment = clustering.assignment if isinstance(clustering, Clustering) else clustering
    return all(set_in_band(s, params) for s in set_colorings(forest, assignment))


def alpha_cluster_bound(alpha) -> tuple[int, Fraction]:
    """``(alpha_hat, d_rel)``: optimal alpha-relaxed clusters have fewer than ``d_rel`` vertices.

    ``alpha_hat`` is the least positive integer making ``2 * alpha_hat / alpha``
    an integer greater than 4, and ``d_rel = 4 * alpha_hat / alpha**2``.
    """
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise BadParams(f"alpha must lie in (0, 1), got {alpha}")
    hat = 1
    while True:
        q = 2 * hat / alpha
        if q.denominator == 1 and q > 4:
            break
        hat += 1
    return hat, 4 * hat / alpha**2


def _pair_cost(s) -> int:
    t = sum(s)
    return t * (t - 1) // 2


def _relaxed_assembly(forest, splitting, accept, max_size):
    """Cheapest splitting plus merges into clusters accepted by ``accept``.

    For a splitting coloring, ``best(code)`` is the least sum of
    ``|S|(|S|-1)/2`` over ways to merge its parts into accepted clusters,
    found by trying every merge of two parts.  The sum, together with twice
    the cut count, decides the cost.
    """
    indexer: ColoringIndexer = splitting.indexer
    memo: dict[int, tuple] = {}

    def best(code):
        if code in memo:
            return memo[code]
        parts = indexer.decode(code)
        result = (None, None)
        if all(accept(s) for s in parts):
            result = (sum(m * _pair_cost(s) for s, m in parts.items()), None)
        keys = sorted(parts)
        for a, s1 in enumerate(keys):
            for s2 in keys[a:]:
                if s1 == s2 and parts[s1] < 2:
                    continue
                s = tuple(x + y for x, y in zip(s1, s2))
                if not indexer.fits(s) or sum(s) > max_size:
                    continue
                nc = code - indexer.unit(s1) - indexer.unit(s2) + indexer.unit(s)
                val, _ = best(nc)
                if val is not None and (result[0] is None or val < result[0]):
                    result = (val, (s1, s2, s, nc))
        memo[code] = result
        return result

    choice = None
    for code in sorted(splitting.table.values):
        cut: Cut = splitting.table.values[code]
        val, _ = best(code)
        if val is None:
            continue
        total = val - forest.m + 2 * cut.count
        if choice is None or total < choice[0] or (total == choice[0] and cut < choice[2]):
            choice = (total, code, cut)
    if choice is None:
        raise NoFairAssembly("no splitting merges into relaxed fair clusters")
    _, code, cut = choice
    merges = []
    while True:
        _, step = best(code)
        if step is None:
            break
        s1, s2, s, code = step
        merges.append((s1, s2, s))
    return cut, merges


def _solve_banded(forest: ColoredForest, params: RelaxedParams, alpha: Fraction, solver: str) -> Clustering:
    _, d_rel = alpha_cluster_bound(alpha)
    per_color = ceil(d_rel)
    max_size = per_color - 1
    bounds = [min(per_color, c) for c in forest.color_counts]
    splitting = split_tables(forest, bounds, max_size=max_size)
    cut, merges = _relaxed_assembly(
        forest, splitting, lambda s: sum(s) <= max_size and set_in_band(s, params), max_size
    )
    comps = components_after_cut(forest, cut)
    return clustering_from_clusters(forest, _merge_components(forest, comps, merges), solver)


def solve_alpha_relaxed_one_one(forest: ColoredForest, alpha) -> Clustering:
    """Minimum-cost alpha-relaxed fair clustering for two colors in equal numbers.

    Optimal clusters have fewer than ``d_rel`` vertices, so the splitting
    tables only need components of bounded size; merging then tracks the
    intra-cluster pair count since cluster sizes are no longer fixed.
    """
    _require_one_one(forest)
    derive_color_spec(forest)
    alpha = Fraction(alpha)
    params = alpha_params(forest, alpha)
    return _solve_banded(forest, params, alpha, "alpha_relaxed")


def solve_relaxed_one_one_experimental(forest: ColoredForest, params: RelaxedParams) -> Clustering:
    """Best clustering in a general band, using the smallest enclosing alpha band's size bound.

    The cluster-size bound is only proven for alpha bands, so optimality is
    not guaranteed here.
    """
    _require_one_one(forest)
    params.check(forest)
    shares = [Fraction(c, forest.n) for c in forest.color_counts]
    alpha = min(min(p / s, s / q) for p, q, s in zip(params.lower, params.upper, shares))
    if alpha == 1:
        # the band is exact fairness, which any alpha band encloses
        alpha = Fraction(1, 2)
    return _solve_banded(forest, params, alpha, "relaxed_experimental")
