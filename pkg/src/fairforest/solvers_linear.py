"""Linear-time exact solvers: ratio 1:1 via matching, and trees of diameter at most 3."""

from __future__ import annotations

from collections import deque
from typing import Callable

from .core import (
    Clustering,
    ColoredForest,
    cc_cost,
    clustering_from_clusters,
    color_groups,
    derive_color_spec,
)
from .errors import DiameterTooLarge, NotATree, WrongRatio


def _rooted_order(forest: ColoredForest):
    """Parent array and a BFS order covering every tree (roots = smallest ids)."""
    n = forest.n
    parent = [-1] * n
    seen = [False] * n
    order = []
    adj = forest.adjacency
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        order.append(s)
        i = len(order) - 1
        while i < len(order):
            v = order[i]
            i += 1
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    order.append(w)
    return parent, order


def max_matching_forest(
    forest: ColoredForest, admissible: Callable[[int, int], bool] | None = None
) -> set[tuple[int, int]]:
    """Maximum matching using only edges accepted by ``admissible``.

    Leaf-up DP: ``free[v]`` is the best matching in the subtree of ``v`` with
    ``v`` unmatched, ``best[v]`` the best overall.  Matching ``v`` with an
    admissible child ``u`` gains ``1 + free[u] - best[u]``.
    """
    parent, order = _rooted_order(forest)
    n = forest.n
    free = [0] * n
    best = [0] * n
    partner = [-1] * n
    for v in reversed(order):
        p = parent[v]
        best_v = free[v] + (partner[v] != -1)
        best[v] = best_v
        if p < 0:
            continue
        free[p] += best_v
        if admissible is None or admissible(v, p):
            gain = 1 + free[v] - best_v
            if gain > 0 and partner[p] == -1:
                partner[p] = v
    # Gains are 0 or 1, so the first child with a positive gain is as good as
    # any.  A parent only claims children without a partner, so the top-down
    # pass never conflicts.
    matching = set()
    matched = [False] * n
    for v in order:
        if matched[v]:
            continue
        u = partner[v]
        if u != -1:
            matched[v] = matched[u] = True
            matching.add((v, u) if v < u else (u, v))
    return matching


def _require_one_one(forest: ColoredForest) -> None:
    if forest.k != 2 or forest.color_counts[0] != forest.color_counts[1]:
        raise WrongRatio(f"color counts {forest.color_counts} are not in ratio 1:1")


def solve_one_one(forest: ColoredForest) -> Clustering:
    """Optimal fair clustering for two colors in equal numbers.

    Some optimum uses only bichromatic pairs, and then the cost is decided by
    how many pairs are joined by an edge, so a maximum matching on
    bichromatic edges is optimal.  Leftover vertices are paired by id.
    """
    _require_one_one(forest)
    color = forest.color
    matching = max_matching_forest(forest, lambda u, v: color[u] != color[v])
    assignment = [-1] * forest.n
    cid = 0
    for u, v in sorted(matching):
        assignment[u] = assignment[v] = cid
        cid += 1
    reds = [v for v in range(forest.n) if assignment[v] == -1 and color[v] == 0]
    blues = [v for v in range(forest.n) if assignment[v] == -1 and color[v] == 1]
    for r, b in zip(reds, blues):
        assignment[r] = assignment[b] = cid
        cid += 1
    return cc_cost(forest, assignment, "one_one")


def _bfs_far(forest: ColoredForest, s: int):
    dist = {s: 0}
    q = deque([s])
    far = s
    while q:
        v = q.popleft()
        if dist[v] > dist[far] or (dist[v] == dist[far] and v < far):
            far = v
        for w in forest.adjacency[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                q.append(w)
    return far, dist


def tree_diameter(forest: ColoredForest) -> int:
    if not forest.is_tree():
        raise NotATree(f"instance has {forest.n} vertices but {forest.m} edges")
    a, _ = _bfs_far(forest, 0)
    b, dist = _bfs_far(forest, a)
    return dist[b]


def _pack(groups: list[list[int]], ratio, clusters: list[list[int]]) -> list[list[int]]:
    """Fill the remaining vertices into fresh clusters, ``ratio[i]`` of color i each."""
    pos = [0] * len(groups)
    while any(pos[i] < len(groups[i]) for i in range(len(groups))):
        cl = []
        for i, c in enumerate(ratio):
            cl.extend(groups[i][pos[i]:pos[i] + c])
            pos[i] += c
        clusters.append(cl)
    return clusters


def _fill(cluster: list[int], quotas: list[int], candidates, color, taken) -> None:
    for w in candidates:
        i = color[w]
        if quotas[i] > 0 and not taken[w]:
            quotas[i] -= 1
            taken[w] = True
            cluster.append(w)


def solve_diameter_le3(forest: ColoredForest) -> Clustering:
    """Optimal fair clustering of a tree with diameter at most 3, any ratio.

    Ratio 1:1 goes to :func:`solve_one_one`.  Otherwise every optimal cluster
    has the minimum fair size, and only the clusters of the one or two inner
    vertices matter.
    """
    spec = derive_color_spec(forest)
    diam = tree_diameter(forest)
    if diam > 3:
        raise DiameterTooLarge(f"tree has diameter {diam}")
    if spec.d == 2:
        return solve_one_one(forest)

    color = forest.color
    ratio = spec.ratio
    adj = forest.adjacency
    inner = sorted(v for v in range(forest.n) if len(adj[v]) > 1)

    def finish(seeds: list[list[int]], taken: list[bool]) -> Clustering:
        rest = [[v for v in g if not taken[v]] for g in color_groups(forest)]
        # top up the seeded clusters, then pack the rest
        for cl in seeds:
            quotas = list(ratio)
            for v in cl:
                quotas[color[v]] -= 1
            for i, q in enumerate(quotas):
                cl.extend(rest[i][:q])
                rest[i] = rest[i][q:]
        return clustering_from_clusters(forest, _pack(rest, ratio, seeds), "diam3")

    def seeded(center: int, others: list[int], taken: list[bool]) -> list[int]:
        cl = [center]
        taken[center] = True
        quotas = list(ratio)
        quotas[color[center]] -= 1
        _fill(cl, quotas, others, color, taken)
        return cl

    if len(inner) == 1:
        c = inner[0]
        taken = [False] * forest.n
        return finish([seeded(c, list(adj[c]), taken)], taken)

    u, v = inner
    options = []
    quotas = list(ratio)
    quotas[color[u]] -= 1
    quotas[color[v]] -= 1
    if min(quotas) >= 0:
        # u and v share a cluster; which leaves join them does not matter
        taken = [False] * forest.n
        taken[u] = taken[v] = True
        cl = [u, v]
        _fill(cl, quotas, sorted(set(adj[u]) | set(adj[v])), color, taken)
        options.append(finish([cl], taken))
    if spec.multiplier >= 2:
        taken = [False] * forest.n
        cu = seeded(u, [w for w in adj[u] if w != v], taken)
        cv = seeded(v, [w for w in adj[v] if w != u], taken)
        options.append(finish([cu, cv], taken))
    return min(options, key=lambda c: c.total)
