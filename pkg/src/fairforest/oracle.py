"""Exhaustive solvers for small instances.

Set partitions are enumerated as restricted growth strings, i.e. in
lexicographic order of the assignment vector, so among equal-cost optima the
lexicographically smallest assignment is reported.
"""

from __future__ import annotations

from typing import Callable, Iterator

from .core import Clustering, ColoredForest, cc_cost, derive_color_spec
from .errors import TooLarge

DEFAULT_LIMIT = 12


def set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length ``n`` (one per set partition)."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i, top):
        if i == n:
            yield tuple(a)
            return
        for b in range(top + 2):
            a[i] = b
            yield from rec(i + 1, max(top, b))

    a[0] = 0
    yield from rec(1, 0)


def _search(forest: ColoredForest, accept: Callable[[list[int]], bool], prune, all_optima: bool):
    n, k = forest.n, forest.k
    color = forest.color
    earlier = [[u for u in forest.adjacency[v] if u < v] for v in range(n)]
    remaining = [[0] * k for _ in range(n + 1)]
    for v in range(n - 1, -1, -1):
        remaining[v] = list(remaining[v + 1])
        remaining[v][color[v]] += 1

    a = [0] * n
    blocks: list[list[int]] = []  # per block color counts
    sizes: list[int] = []
    best = [None, []]  # cost, optima

    def rec(v, chi, pairs):
        if prune is not None and prune(blocks, remaining[v]):
            return
        if v == n:
            if all(accept(b) for b in blocks):
                cost = pairs - (forest.m - chi) + chi
                if best[0] is None or cost < best[0]:
                    best[0] = cost
                    best[1] = [tuple(a)]
                elif all_optima and cost == best[0]:
                    best[1].append(tuple(a))
            return
        cv = color[v]
        for b in range(len(blocks) + 1):
            if b == len(blocks):
                blocks.append([0] * k)
                sizes.append(0)
            a[v] = b
            cut = sum(1 for u in earlier[v] if a[u] != b)
            blocks[b][cv] += 1
            sizes[b] += 1
            rec(v + 1, chi + cut, pairs + sizes[b] - 1)
            blocks[b][cv] -= 1
            sizes[b] -= 1
            if sizes[b] == 0:
                blocks.pop()
                sizes.pop()

    rec(0, 0, 0)
    return best[0], best[1]


def _check_size(forest: ColoredForest, limit: int) -> None:
    if forest.n > limit:
        raise TooLarge(f"oracle limited to n <= {limit}, got n={forest.n}")


def exact_fair_optima(forest: ColoredForest, limit: int = DEFAULT_LIMIT) -> tuple[int, list[tuple[int, ...]]]:
    """Optimal cost and every optimal exactly fair assignment."""
    return _exact(forest, limit, True)


def _exact(forest, limit, all_optima):
    _check_size(forest, limit)
    spec = derive_color_spec(forest)
    ratio, k = spec.ratio, forest.k
    max_blocks = spec.multiplier

    def accept(b):
        s = sum(b)
        return all(b[i] * spec.d == ratio[i] * s for i in range(k))

    def prune(blocks, rem):
        # Every block must still grow to a positive multiple of the ratio
        # covering what it already holds.
        if len(blocks) > max_blocks:
            return True
        need = [0] * k
        for b in blocks:
            mult = max(1, max(-(-b[i] // ratio[i]) for i in range(k)))
            for i in range(k):
                need[i] += mult * ratio[i] - b[i]
        return any(need[i] > rem[i] for i in range(k))

    return _search(forest, accept, prune, all_optima)


def brute_force_exact(forest: ColoredForest, limit: int = DEFAULT_LIMIT) -> Clustering:
    """Minimum-cost exactly fair clustering by exhaustive search."""
    _, optima = _exact(forest, limit, False)
    return cc_cost(forest, optima[0], "oracle")


def brute_force_relaxed(forest: ColoredForest, params, limit: int = DEFAULT_LIMIT) -> Clustering:
    """Minimum-cost clustering whose clusters all lie in the fairness band."""
    from .relaxed import RelaxedParams, alpha_params, set_in_band

    _check_size(forest, limit)
    derive_color_spec(forest)
    if not isinstance(params, RelaxedParams):
        params = alpha_params(forest, params)
    params.check(forest)
    # a block needs at least one vertex of every color since all lower bounds are positive
    max_blocks = min(forest.color_counts)

    def prune(blocks, rem):
        return len(blocks) > max_blocks

    _, optima = _search(forest, lambda b: set_in_band(b, params), prune, False)
    return cc_cost(forest, optima[0], "oracle_relaxed")
