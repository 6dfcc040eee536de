"""Exact solver for two colors in ratio 1:c when there are few clusters.

With ``p`` blue vertices there are exactly ``p`` clusters, one per blue
vertex.  After cutting a few edges so that no tree holds two blue vertices,
each tree only has to decide which of its vertices go to which other
cluster; :func:`cut_off_costs` prices that for every combination of part
sizes.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Mapping, Sequence

from .core import Clustering, ColoredForest, clustering_from_clusters, derive_color_spec
from .errors import TooManyClusters, WrongRatio
from .join import CostTable, join

DEFAULT_MAX_P = 4

Key = tuple  # (a0, descending tuple of k part sizes)


def max_clusters() -> int:
    return int(os.environ.get("FCC_MAX_P", DEFAULT_MAX_P))


def _placements(x: Key, y: tuple, cap0=None, cap=None):
    """Ways to combine an accumulated key ``x`` with a child key ``y``.

    ``y = (b0, b, cut)``.  Each of the child's ``k + 1`` slots lands in a
    distinct slot of ``x``; the child's root slot joins the root slot exactly
    when the edge to the child is kept.  Yields ``(key, map_x, map_y)`` with
    the new position of every old slot.
    """
    a0, a = x
    b0, b, cut = y
    k = len(a)
    xs = (a0,) + a
    ys = (b0,) + b
    for perm in permutations(range(k + 1)):
        if (perm[0] != 0) != cut:
            continue
        sizes = list(xs)
        for j in range(k + 1):
            sizes[perm[j]] += ys[j]
        if cap0 is not None and sizes[0] > cap0:
            continue
        if cap is not None and any(s > cap for s in sizes[1:]):
            continue
        order = sorted(range(1, k + 1), key=lambda i: -sizes[i])
        newpos = [0] * (k + 1)
        for r, i in enumerate(order):
            newpos[i] = r + 1
        key = (sizes[0], tuple(sizes[i] for i in order))
        yield key, newpos, [newpos[perm[j]] for j in range(k + 1)]


@dataclass
class CutOffTable:
    """``values[(a0, a)]``: fewest edges between different parts when the root
    keeps ``a0`` vertices and parts of sizes ``a`` are cut off."""

    root: int
    k: int
    values: dict = field(default_factory=dict)
    steps: dict = field(default_factory=dict, repr=False)
    cap0: int | None = None
    cap: int | None = None

    def __getitem__(self, key):
        a0, a = key
        a = tuple(sorted(a, reverse=True))
        return self.values.get((a0, a), float("inf"))

    def root_cap(self, v: int):
        # below the root, a subtree's root part may still end up in a cut-off part
        if v == self.root or self.cap0 is None or self.cap is None:
            return self.cap0 if v == self.root else None
        return max(self.cap0, self.cap)

    def groups(self, key: Key) -> list[list[int]]:
        """Vertices of the root part and of each cut-off part for ``key``."""
        out: list[list[int]] = [[] for _ in range(self.k + 1)]
        stack = [(self.root, key, list(range(self.k + 1)))]
        while stack:
            v, key, labels = stack.pop()
            for u, back in reversed(self.steps[v]):
                prev, child = back[key]
                for nk, map_x, map_y in _placements(prev, child, self.root_cap(v), self.cap):
                    if nk == key:
                        break
                stack.append((u, child[:2], [labels[map_y[j]] for j in range(self.k + 1)]))
                labels = [labels[map_x[i]] for i in range(self.k + 1)]
                key = prev
            out[labels[0]].append(v)
        for g in out:
            g.sort()
        return out


def cut_off_costs(
    adjacency: Mapping[int, Sequence[int]],
    root: int,
    k: int,
    cap0: int | None = None,
    cap: int | None = None,
) -> CutOffTable:
    """Cut-off table of the tree given by ``adjacency``, rooted at ``root``.

    Parts need not be connected.  ``cap0`` and ``cap`` optionally drop keys
    whose root part or cut-off parts grow too large.
    """
    parent = {root: None}
    order = [root]
    for v in order:
        for w in sorted(adjacency.get(v, ())):
            if w not in parent:
                parent[w] = v
                order.append(w)
    children: dict[int, list[int]] = {v: [] for v in order}
    for v in order[1:]:
        children[parent[v]].append(v)

    table = CutOffTable(root, k, cap0=cap0, cap=cap)

    vals: dict[int, dict] = {}
    for v in reversed(order):
        vcap = table.root_cap(v)

        def f(x, y):
            return {key for key, _, _ in _placements(x, y, vcap, cap)}

        acc = CostTable(None, {(1, (0,) * k): 0})
        steps = []
        for u in children[v]:
            ext = {}
            for (b0, b), c in vals.pop(u).items():
                ext[(b0, b, False)] = c
                ext[(b0, b, True)] = c + 1
            res = join([acc, CostTable(None, ext)], f)
            steps.append((u, res.back))
            acc = CostTable(None, res.values)
        vals[v] = acc.values
        table.steps[v] = steps
    table.values = vals[root]
    return table


def _blue_red(forest: ColoredForest) -> tuple[int, int, int]:
    """(blue color, red color, c) for ratio 1:c."""
    spec = derive_color_spec(forest)
    if forest.k != 2 or 1 not in spec.ratio:
        raise WrongRatio(f"color counts {forest.color_counts} are not in ratio 1:c")
    blue = spec.ratio.index(1)
    return blue, 1 - blue, spec.ratio[1 - blue]


def _path_edges(forest: ColoredForest, blue: int) -> list[tuple[int, int]]:
    """Edges lying on a path between two blue vertices."""
    out = []
    for comp in forest.components():
        total = sum(forest.color[v] == blue for v in comp)
        if total < 2:
            continue
        parent = {comp[0]: None}
        order = [comp[0]]
        for v in order:
            for w in forest.adjacency[v]:
                if w not in parent:
                    parent[w] = v
                    order.append(w)
        below = {}
        for v in reversed(order):
            below[v] = below.get(v, 0) + (forest.color[v] == blue)
            p = parent[v]
            if p is not None:
                below[p] = below.get(p, 0) + below[v]
                if 0 < below[v] < total:
                    out.append((min(v, p), max(v, p)))
    return sorted(out)


def _split_trees(forest: ColoredForest, removed: set) -> list[list[int]]:
    seen = [False] * forest.n
    out = []
    for s in range(forest.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        for v in comp:
            for w in forest.adjacency[v]:
                if not seen[w] and (min(v, w), max(v, w)) not in removed:
                    seen[w] = True
                    comp.append(w)
        out.append(sorted(comp))
    return out


def _assignments(parts: tuple, clusters: list[int], sizes: tuple, limit: int):
    """Distinct ways to add ``parts`` to distinct ``clusters``; yields (new sizes, targets)."""
    seen = set()
    for perm in permutations(clusters, len(parts)):
        new = list(sizes)
        for s, c in zip(parts, perm):
            new[c] += s
        t = tuple(new)
        if max(t) <= limit and t not in seen:
            seen.add(t)
            yield t, perm


def solve_one_c(forest: ColoredForest, max_p: int | None = None) -> Clustering:
    """Exact solver for ratio 1:c with ``p`` clusters, polynomial for fixed ``p``.

    Tries every set of at most ``p - 1`` edges on blue-to-blue paths that
    leaves each blue vertex in its own tree.  Each blue tree keeps a root
    part for its own cluster and sends up to ``p - 1`` parts elsewhere; the
    all-red trees are hung below a virtual root that stays alone, so they
    send ``p`` parts.  A knapsack over cluster sizes then picks the parts.
    """
    blue, _, c = _blue_red(forest)
    p = forest.color_counts[blue]
    limit = max_clusters() if max_p is None else max_p
    if p > limit:
        raise TooManyClusters(
            f"{p} clusters exceed the ceiling {limit}; use greedy_fair or solve_ptas"
        )
    if p == 1:
        return clustering_from_clusters(forest, [range(forest.n)], "few_clusters")
    size = c + 1
    blues = [v for v in range(forest.n) if forest.color[v] == blue]
    cluster_of_blue = {b: i for i, b in enumerate(blues)}
    cache: dict = {}

    def table_for(vertices: tuple, root: int, k: int, cap0: int, extra_root=None):
        key = (vertices, root, k)
        if key not in cache:
            vs = set(vertices)
            adj = {v: [w for w in forest.adjacency[v] if w in vs] for v in vertices if v >= 0}
            if extra_root is not None:
                adj[root] = list(extra_root)
                for w in extra_root:
                    adj[w] = adj[w] + [root]
            cache[key] = cut_off_costs(adj, root, k, cap0=cap0, cap=c)
        return cache[key]

    best = None
    candidates = _path_edges(forest, blue)
    for r in range(p):
        for removed in combinations(candidates, r):
            removed_set = set(removed)
            trees = _split_trees(forest, removed_set)
            blue_trees = [t for t in trees if any(forest.color[v] == blue for v in t)]
            if len(blue_trees) != p:
                continue
            red_trees = [t for t in trees if t not in blue_trees]

            pieces = []  # (table, own cluster or None, usable entries)
            for t in blue_trees:
                b = next(v for v in t if forest.color[v] == blue)
                tab = table_for(tuple(t), b, p - 1, size)
                pieces.append((tab, cluster_of_blue[b], tab.values))
            if red_trees:
                z = -1
                verts = tuple(sorted(v for t in red_trees for v in t)) + (z,)
                tab = table_for(verts, z, p, 1, extra_root=[t[0] for t in red_trees])
                entries = {key: cost - len(red_trees) for key, cost in tab.values.items() if key[0] == 1}
                pieces.append((tab, None, entries))

            states = {(0,) * p: (r, None)}
            history = []
            for tab, own, entries in pieces:
                nxt: dict = {}
                targets = [i for i in range(p) if i != own]
                for state, (cost, _) in states.items():
                    for key, ec in sorted(entries.items()):
                        a0, parts = key
                        start = list(state)
                        if own is not None:
                            start[own] += a0
                            if start[own] > size:
                                continue
                        for new, perm in _assignments(parts, targets, tuple(start), size):
                            total = cost + ec
                            if new not in nxt or total < nxt[new][0]:
                                nxt[new] = (total, (state, key, perm))
                history.append(nxt)
                states = nxt
            goal = (size,) * p
            if goal in states and (best is None or states[goal][0] < best[0]):
                best = (states[goal][0], pieces, history)

    _, pieces, history = best
    clusters: list[list[int]] = [[] for _ in range(p)]
    state = (size,) * p
    for (tab, own, _), layer in zip(reversed(pieces), reversed(history)):
        _, (prev, key, perm) = layer[state]
        groups = tab.groups(key)
        if own is not None:
            clusters[own].extend(groups[0])
        for g, target in zip(groups[1:], perm):
            clusters[target].extend(g)
        state = prev
    return clustering_from_clusters(forest, clusters, "few_clusters")
