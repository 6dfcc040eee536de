"""Exact solvers that first split the forest by cutting edges and then merge.

Phase one computes, for every achievable multiset of component colorings,
the cheapest set of cut edges producing it (a *splitting* where each
component has at most ``bounds[i]`` vertices of color ``i``).  Phase two
picks the cheapest splitting whose components can be merged into fair
clusters.  Merging never removes cuts from the count, and any splitting that
would need extra cuts already appears in the phase-one table.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping

from .core import (
    Clustering,
    ColoredForest,
    ColorSpec,
    clustering_from_clusters,
    coloring_of,
    derive_color_spec,
)
from .errors import NoFairAssembly, ParityViolation, TooLargeClusterSize, WrongRatio
from .join import CostTable, Cut, index_sum, join, min_merge
from .solvers_linear import _rooted_order, solve_one_one

DEFAULT_MAX_D = 8

SetColoring = tuple[int, ...]


def max_cluster_size() -> int:
    return int(os.environ.get("FCC_MAX_D", DEFAULT_MAX_D))


class ColoringIndexer:
    """Integer codes for multisets of set colorings.

    Every non-empty set coloring ``s`` with ``s[i] <= bounds[i]`` gets a
    position ``j``, and a multiset with multiplicities ``m_j`` is encoded as
    ``sum(m_j * radix**j)``.  With ``radix`` above the largest possible
    multiplicity, adding two codes encodes the union of the multisets.
    """

    def __init__(self, bounds: Iterable[int], radix: int):
        self.bounds = tuple(bounds)
        self.radix = radix
        self.colorings: list[SetColoring] = [
            s for s in product(*(range(b + 1) for b in self.bounds)) if any(s)
        ]
        self.position = {s: j for j, s in enumerate(self.colorings)}
        self._unit = {s: radix**j for s, j in self.position.items()}

    @property
    def setvars(self) -> int:
        """Number of set colorings including the empty one."""
        return len(self.colorings) + 1

    @property
    def setmax(self) -> int:
        return sum(self.bounds)

    def fits(self, s: SetColoring) -> bool:
        return all(x <= b for x, b in zip(s, self.bounds))

    def unit(self, s: SetColoring) -> int:
        return self._unit[s]

    def encode(self, multiset: Mapping[SetColoring, int]) -> int:
        code = 0
        for s, mult in multiset.items():
            if mult:
                if not 0 < mult < self.radix:
                    raise ValueError(f"multiplicity {mult} outside (0, {self.radix})")
                code += mult * self._unit[s]
        return code

    def decode(self, code: int) -> dict[SetColoring, int]:
        out = {}
        j = 0
        while code:
            code, mult = divmod(code, self.radix)
            if mult:
                out[self.colorings[j]] = mult
            j += 1
        return out


@dataclass
class Splitting:
    """Phase-one result: coloring code -> cheapest :class:`Cut`."""

    indexer: ColoringIndexer
    table: CostTable

    def colorings(self) -> dict[frozenset, Cut]:
        return {
            frozenset(self.indexer.decode(x).items()): c for x, c in self.table.values.items()
        }


def _children(forest: ColoredForest):
    parent, order = _rooted_order(forest)
    children: list[list[int]] = [[] for _ in range(forest.n)]
    for v in order:
        if parent[v] >= 0:
            children[parent[v]].append(v)
    for c in children:
        c.sort()
    return parent, order, children


def _add(a: SetColoring, b: SetColoring) -> SetColoring:
    return tuple(x + y for x, y in zip(a, b))


def split_tables(
    forest: ColoredForest, bounds: Iterable[int], max_size: int | None = None
) -> Splitting:
    """Cheapest cut set for every achievable splitting coloring.

    Per vertex ``v`` and head ``h`` (the coloring of the component holding
    ``v``, still open towards the parent) a table maps the coloring of the
    closed components below ``v`` to the cheapest cut.  Children are folded
    in one at a time: a child either closes its head (its parent edge is cut)
    or adds its head to ``v``'s.  Folding with a running head is the same
    minimum as enumerating all head assignments of the children at once.
    """
    bounds = tuple(bounds)
    if len(bounds) != forest.k:
        raise ValueError(f"need {forest.k} bounds, got {len(bounds)}")
    indexer = ColoringIndexer(bounds, forest.n + 1)
    empty = (0,) * forest.k
    parent, order, children = _children(forest)
    combine = index_sum()
    tables: dict[int, dict[SetColoring, dict]] = {}

    def ok(h: SetColoring) -> bool:
        return indexer.fits(h) and (max_size is None or sum(h) <= max_size)

    for v in reversed(order):
        own = tuple(int(i == forest.color[v]) for i in range(forest.k))
        acc: dict[SetColoring, dict] = {own: {0: Cut()}} if ok(own) else {}
        for u in children[v]:
            nxt: dict[SetColoring, dict] = {}
            for a, ta in acc.items():
                left = CostTable(None, ta)
                for h, tu in tables[u].items():
                    target = a if h == empty else _add(a, h)
                    if h != empty and not ok(target):
                        continue
                    merged = join([left, CostTable(None, tu)], combine, backtrack=False)
                    min_merge(nxt.setdefault(target, {}), merged.values)
            acc = nxt
            del tables[u]
        closed: dict = {}
        above = Cut.of(forest.edge_id(v, parent[v])) if parent[v] >= 0 else Cut()
        for h, th in acc.items():
            w = indexer.unit(h)
            min_merge(closed, {x + w: c + above for x, c in th.items()})
        acc[empty] = closed
        tables[v] = acc

    roots = [v for v in order if parent[v] < 0]
    total = join([CostTable(None, tables[r][empty]) for r in roots], combine, backtrack=False)
    total.back = {}
    return Splitting(indexer, total)


def components_after_cut(forest: ColoredForest, cut: Cut) -> list[list[int]]:
    """Vertex sets of the forest with the edges of ``cut`` removed."""
    n = forest.n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    mask = cut.mask
    for i, (u, v) in enumerate(forest.edges):
        if not (mask >> i) & 1:
            parent[find(u)] = find(v)
    groups: dict[int, list[int]] = defaultdict(list)
    for v in range(n):
        groups[find(v)].append(v)
    return sorted(groups.values())


def _sub_colorings(s: SetColoring):
    """Splits of ``s`` into two non-empty parts, each unordered pair once."""
    for s1 in product(*(range(x + 1) for x in s)):
        s2 = tuple(a - b for a, b in zip(s, s1))
        if any(s1) and any(s2) and s1 <= s2:
            yield s1, s2


def assemblable_colorings(indexer: ColoringIndexer, spec: ColorSpec, max_parts: int) -> dict:
    """Every coloring with at most ``max_parts`` parts that merges into fair clusters.

    Built by increasing number of parts: the all-fair coloring is the base,
    and splitting one part of an assemblable coloring keeps it assemblable.
    Maps each code to ``(parent code, merged part, part, part)`` or ``None``.
    """
    base = spec.multiplier * indexer.unit(spec.ratio)
    found: dict[int, tuple | None] = {base: None}
    frontier = [base]
    for _ in range(spec.multiplier, max_parts):
        nxt = []
        for code in frontier:
            for s in sorted(indexer.decode(code)):
                w = indexer.unit(s)
                for s1, s2 in _sub_colorings(s):
                    nc = code - w + indexer.unit(s1) + indexer.unit(s2)
                    if nc not in found:
                        found[nc] = (code, s, s1, s2)
                        nxt.append(nc)
        frontier = nxt
        if not frontier:
            break
    return found


def assembly_min_cost(splitting: Splitting, spec: ColorSpec):
    """Cheapest splitting that merges into fair clusters of size ``d``.

    Returns ``(code, cut, merges)`` where ``merges`` lists ``(s1, s2, s)``
    steps, applied in order, that turn the splitting into fair clusters.
    """
    indexer = splitting.indexer
    table = splitting.table.values
    if not table:
        raise NoFairAssembly("no splitting respects the bounds")
    max_parts = max(sum(indexer.decode(x).values()) for x in table)
    found = assemblable_colorings(indexer, spec, max_parts)
    best = None
    for code in sorted(table):
        if code in found and (best is None or table[code] < table[best]):
            best = code
    if best is None:
        raise NoFairAssembly("no splitting can be merged into fair clusters")
    merges = []
    code = best
    while found[code] is not None:
        code, s, s1, s2 = found[code]
        merges.append((s1, s2, s))
    return best, table[best], merges


def _merge_components(forest: ColoredForest, comps: list[list[int]], merges) -> list[list[int]]:
    pools: dict[SetColoring, list[list[int]]] = defaultdict(list)
    for comp in comps:
        pools[coloring_of(forest, comp)].append(comp)
    for s1, s2, s in merges:
        a = pools[s1].pop()
        b = pools[s2].pop()
        pools[s].append(sorted(a + b))
    return [c for group in pools.values() for c in group]


def _check_ceiling(spec: ColorSpec, max_d: int | None) -> None:
    limit = max_cluster_size() if max_d is None else max_d
    if spec.d > limit:
        raise TooLargeClusterSize(
            f"cluster size d={spec.d} exceeds the exact-solver ceiling {limit}; "
            "use solve_one_c for two colors with few clusters, or greedy_fair / solve_ptas"
        )


def solve_general(forest: ColoredForest, max_d: int | None = None, delegate: bool = True) -> Clustering:
    """Exact solver for any ratio with a small cluster size ``d``.

    In forests every optimum uses clusters of exactly ``d`` vertices (for
    ``d >= 3``), so components never need more than ``ratio[i]`` vertices
    of color ``i``.  Ratio 1:1 is routed to the matching solver unless
    ``delegate`` is false.
    """
    spec = derive_color_spec(forest)
    _check_ceiling(spec, max_d)
    if spec.d == 2 and delegate:
        return solve_one_one(forest)
    splitting = split_tables(forest, spec.ratio)
    code, cut, merges = assembly_min_cost(splitting, spec)
    comps = components_after_cut(forest, cut)
    clusters = _merge_components(forest, comps, merges)
    return clustering_from_clusters(forest, clusters, "general")


# ---------------------------------------------------------------------------
# ratio 1:2

HEADS = ("r", "b", "rr", "br")


def assemble_one_two(num_br: int, num_r: int) -> int:
    """Extra cuts needed to merge a 1:2 splitting into fair clusters."""
    if (num_br - num_r) % 2:
        raise ParityViolation(f"#br - #r = {num_br - num_r} is odd")
    return max(0, (num_br - num_r) // 2)


def _one_two_colors(forest: ColoredForest) -> tuple[int, int]:
    if forest.k != 2 or forest.n % 3:
        raise WrongRatio(f"color counts {forest.color_counts} are not in ratio 1:2")
    c0, c1 = forest.color_counts
    if 2 * c0 == c1:
        return 1, 0
    if 2 * c1 == c0:
        return 0, 1
    raise WrongRatio(f"color counts {forest.color_counts} are not in ratio 1:2")


def solve_one_two(forest: ColoredForest) -> Clustering:
    """Exact solver for two colors in ratio 1:2.

    Components of a splitting have at most one blue and two red vertices.
    Only ``x = #br - #r`` matters for merging them, so the tables are
    indexed by ``x``; ``max(0, x / 2)`` further cuts finish the job.
    """
    red, _ = _one_two_colors(forest)
    n = forest.n
    length, off = 2 * n + 1, n
    f = index_sum(off, length)
    parent, order, children = _children(forest)
    is_red = [c == red for c in forest.color]

    def table(vals=None) -> CostTable:
        t = CostTable(length, offset=off)
        for x, c in (vals or {}).items():
            t.set(x, c)
        return t

    def jn(ts: list[CostTable]) -> CostTable:
        return join([table({0: Cut()})] + ts, f, backtrack=False)

    def shifted(t: CostTable, dx: int) -> CostTable:
        return table({x + dx: c for x, c in t.finite().items()})

    def best(into: CostTable, t: CostTable) -> None:
        min_merge(into.values, t.values)

    closed_t: dict[int, CostTable] = {}
    heads: dict[int, dict[str, CostTable]] = {}
    for v in reversed(order):
        kids = children[v]
        ell = len(kids)
        closed = [closed_t[u] for u in kids]
        prefix = [table({0: Cut()})]
        for t in closed:
            prefix.append(jn([prefix[-1], t]))
        suffix = [table({0: Cut()})] * (ell + 1)
        for i in range(ell - 1, -1, -1):
            suffix[i] = jn([closed[i], suffix[i + 1]])

        def one(h: str) -> CostTable:
            out = table()
            for i, u in enumerate(kids):
                t = heads[u].get(h)
                if t is not None:
                    best(out, jn([prefix[i], t, suffix[i + 1]]))
            return out

        def two(h1: str, h2: str) -> CostTable:
            out = table()
            for i, u in enumerate(kids):
                ti = heads[u].get(h1)
                if ti is None:
                    continue
                running = jn([prefix[i], ti])
                for j in range(i + 1, ell):
                    tj = heads[kids[j]].get(h2)
                    if tj is not None:
                        best(out, jn([running, tj, suffix[j + 1]]))
                    running = jn([running, closed[j]])
            return out

        mine: dict[str, CostTable] = {}
        all_closed = prefix[-1]
        if is_red[v]:
            mine["r"] = all_closed
            mine["rr"] = one("r")
            mine["br"] = one("b")
            full = one("br")
            best(full, two("b", "r"))
            best(full, two("r", "b"))
        else:
            mine["b"] = all_closed
            mine["br"] = one("r")
            full = one("rr")
            best(full, two("r", "r"))
        mine = {h: t for h, t in mine.items() if t.values}
        shut = full
        if "r" in mine:
            best(shut, shifted(mine["r"], -1))
        if "br" in mine:
            best(shut, shifted(mine["br"], 1))
        for h in ("b", "rr"):
            if h in mine:
                best(shut, mine[h])
        if parent[v] >= 0:
            above = Cut.of(forest.edge_id(v, parent[v]))
            shut = table({x: c + above for x, c in shut.finite().items()})
        closed_t[v] = shut
        heads[v] = mine
        for u in kids:
            del closed_t[u], heads[u]

    roots = [v for v in order if parent[v] < 0]
    final = jn([closed_t[r] for r in roots])
    choice = None
    for x, c in sorted(final.finite().items()):
        extra = assemble_one_two(x, 0) if x > 0 else 0
        key = (c.count + extra, c)
        if choice is None or key[0] < choice[0] or (key[0] == choice[0] and key[1] < choice[1]):
            choice = (key[0], c)
    if choice is None:
        raise NoFairAssembly("no splitting found")
    comps = components_after_cut(forest, choice[1])
    return clustering_from_clusters(forest, _merge_one_two(comps, is_red), "one_two")


def _merge_one_two(comps: list[list[int]], is_red: list[bool]) -> list[list[int]]:
    pools: dict[str, list[list[int]]] = defaultdict(list)
    clusters = []
    for comp in comps:
        reds = sum(is_red[v] for v in comp)
        kind = "b" * (len(comp) - reds) + "r" * reds
        if kind == "brr":
            clusters.append(comp)
        else:
            pools[kind].append(comp)
    b, r, rr, br = (pools[h] for h in ("b", "r", "rr", "br"))
    while b and rr:
        clusters.append(b.pop() + rr.pop())
    while br and r:
        clusters.append(br.pop() + r.pop())
    while br:
        # cut an rr component in two and give each half to a br component
        x, y = rr.pop()
        clusters.append(br.pop() + [x])
        clusters.append(br.pop() + [y])
    while b:
        clusters.append(b.pop() + r.pop() + r.pop())
    return clusters
