"""Instance model, cost accounting and fairness predicates.

A clustering is scored with the usual correlation clustering objective on a
forest: every edge between two clusters costs one (``chi``) and every
non-adjacent pair inside a cluster costs one (``psi``).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Hashable, Iterable, Sequence

from .errors import (
    BadColor,
    DuplicateEdge,
    InfeasibleRatio,
    InstanceError,
    NotAForest,
    TooLarge,
    UnsupportedInstance,
)

MAX_VERTICES = 2**31

Edge = tuple[int, int]


@dataclass(frozen=True)
class ColoredForest:
    """Validated, immutable vertex-colored forest.

    Build instances with :func:`validate_instance`; the constructor trusts its
    arguments.  Edges are stored as ``(u, v)`` with ``u < v`` in ascending
    order, and that order defines the edge ids used by the DP solvers.
    """

    n: int
    edges: tuple[Edge, ...]
    color: tuple[int, ...]
    k: int
    color_counts: tuple[int, ...]
    labels: tuple[Hashable, ...] | None = None
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    edge_ids: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))
        object.__setattr__(self, "edge_ids", {e: i for i, e in enumerate(self.edges)})

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_id(self, u: int, v: int) -> int:
        return self.edge_ids[(u, v) if u < v else (v, u)]

    def components(self) -> list[list[int]]:
        """Vertex sets of the trees, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            stack = [s]
            while stack:
                v = stack.pop()
                for w in self.adjacency[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            comp.sort()
            out.append(comp)
        return out

    def is_tree(self) -> bool:
        return self.m == self.n - 1


def validate_instance(
    vertices: int | Sequence[int],
    edges: Iterable[Sequence[int]],
    colors: Sequence[Hashable],
    k: int | None = None,
) -> ColoredForest:
    """Check raw input and build a :class:`ColoredForest`.

    ``vertices`` is either the vertex count or an explicit list ``0..n-1``.
    ``colors`` may hold integer ids (checked against ``k`` when given) or
    arbitrary labels, which are mapped to ids in order of first appearance.
    """
    if isinstance(vertices, int):
        n = vertices
    else:
        vs = list(vertices)
        if sorted(vs) != list(range(len(vs))):
            raise InstanceError("vertices must be exactly 0..n-1")
        n = len(vs)
    if n < 1:
        raise InstanceError("an instance needs at least one vertex")
    if n > MAX_VERTICES:
        raise TooLarge(f"n={n} exceeds the supported maximum {MAX_VERTICES}")
    colors = list(colors)
    if len(colors) != n:
        raise InstanceError(f"expected {n} colors, got {len(colors)}")

    labels = None
    if all(isinstance(c, int) and not isinstance(c, bool) for c in colors):
        ids = colors
        if k is None:
            k = max(ids) + 1
        for v, c in enumerate(ids):
            if not 0 <= c < k:
                raise BadColor(f"vertex {v} has color {c} outside [0, {k})")
    else:
        order: dict[Hashable, int] = {}
        for c in colors:
            order.setdefault(c, len(order))
        ids = [order[c] for c in colors]
        labels = tuple(order)
        if k is None:
            k = len(order)
        elif k != len(order):
            raise BadColor(f"{len(order)} distinct colors given but k={k}")
    counts = [0] * k
    for c in ids:
        counts[c] += 1
    missing = [i for i, c in enumerate(counts) if c == 0]
    if missing:
        raise BadColor(f"colors {missing} do not occur on any vertex")

    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    seen = set()
    norm = []
    for e in edges:
        if len(e) != 2:
            raise InstanceError(f"edge {e!r} must have two endpoints")
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise InstanceError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise NotAForest(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdge(f"edge {key} given twice")
        seen.add(key)
        ru, rv = find(u), find(v)
        if ru == rv:
            raise NotAForest(f"edge {key} closes a cycle")
        parent[ru] = rv
        norm.append(key)
    norm.sort()
    return ColoredForest(n, tuple(norm), tuple(ids), k, tuple(counts), labels)


@dataclass(frozen=True)
class ColorSpec:
    ratio: tuple[int, ...]
    d: int
    multiplier: int


def derive_color_spec(forest: ColoredForest) -> ColorSpec:
    """Reduce the color counts to their coprime ratio."""
    if forest.k < 2:
        raise UnsupportedInstance("instances with a single color are not supported")
    g = reduce(gcd, forest.color_counts)
    ratio = tuple(c // g for c in forest.color_counts)
    d = sum(ratio)
    if forest.n % d:
        raise InfeasibleRatio(f"cluster size {d} does not divide n={forest.n}")
    return ColorSpec(ratio, d, forest.n // d)


def canonical_assignment(assignment: Sequence[Hashable]) -> tuple[int, ...]:
    """Relabel cluster ids to 0, 1, ... in order of first appearance."""
    ids: dict[Hashable, int] = {}
    return tuple(ids.setdefault(a, len(ids)) for a in assignment)


@dataclass(frozen=True)
class Clustering:
    assignment: tuple[int, ...]
    cluster_sizes: tuple[int, ...]
    chi: int
    psi: int
    total: int
    solver: str = field(default="", compare=False)

    @property
    def num_clusters(self) -> int:
        return len(self.cluster_sizes)

    def clusters(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.cluster_sizes]
        for v, c in enumerate(self.assignment):
            out[c].append(v)
        return out


def cc_cost(forest: ColoredForest, assignment: Sequence[Hashable], solver: str = "") -> Clustering:
    """Score ``assignment`` (vertex -> any hashable cluster label)."""
    if len(assignment) != forest.n:
        raise ValueError(f"assignment has {len(assignment)} entries, expected {forest.n}")
    a = canonical_assignment(assignment)
    sizes = [0] * (max(a) + 1)
    for c in a:
        sizes[c] += 1
    chi = sum(1 for u, v in forest.edges if a[u] != a[v])
    inside = forest.m - chi
    psi = sum(s * (s - 1) // 2 for s in sizes) - inside
    return Clustering(a, tuple(sizes), chi, psi, chi + psi, solver)


def clustering_from_clusters(forest: ColoredForest, clusters: Iterable[Iterable[int]], solver: str = "") -> Clustering:
    assignment = [-1] * forest.n
    for cid, members in enumerate(clusters):
        for v in members:
            if assignment[v] != -1:
                raise ValueError(f"vertex {v} appears in two clusters")
            assignment[v] = cid
    if -1 in assignment:
        raise ValueError(f"vertex {assignment.index(-1)} is not covered")
    return cc_cost(forest, assignment, solver)


def set_colorings(forest: ColoredForest, assignment: Sequence[Hashable]) -> list[tuple[int, ...]]:
    """Per-cluster color count vectors, in order of first appearance."""
    a = canonical_assignment(assignment)
    out = [[0] * forest.k for _ in range(max(a) + 1)]
    for v, c in enumerate(a):
        out[c][forest.color[v]] += 1
    return [tuple(x) for x in out]


def is_fair(forest: ColoredForest, clustering: Clustering | Sequence[Hashable]) -> bool:
    assignment = clustering.assignment if isinstance(clustering, Clustering) else clustering
    n, counts = forest.n, forest.color_counts
    for col in set_colorings(forest, assignment):
        size = sum(col)
        if any(col[i] * n != counts[i] * size for i in range(forest.k)):
            return False
    return True


def _exact(x: Fraction) -> int | Fraction:
    return x.numerator if x.denominator == 1 else x


def cost_by_cuts(n: int, m: int, d: int, chi: int) -> int | Fraction:
    """Cost of any clustering into clusters of size ``d`` with ``chi`` cut edges."""
    return _exact(Fraction((d - 1) * n, 2) - m + 2 * chi)


def cost_by_cuts_tree(n: int, d: int, chi: int) -> int | Fraction:
    return _exact(Fraction((d - 3) * n, 2) + 2 * chi + 1)


def intra_lower_bound(n: int, m: int, num_clusters: int, chi: int) -> Fraction:
    """Lower bound on ``psi`` for ``num_clusters`` clusters and ``chi`` cuts.

    Tight exactly when all clusters have size ``n / num_clusters``.
    """
    if num_clusters < 1:
        raise ValueError("need at least one cluster")
    return Fraction(n * n, 2 * num_clusters) - Fraction(n, 2) - m + chi


def color_groups(forest: ColoredForest) -> list[list[int]]:
    """Vertices of each color in ascending id order."""
    groups: list[list[int]] = [[] for _ in range(forest.k)]
    for v, c in enumerate(forest.color):
        groups[c].append(v)
    return groups


def coloring_of(forest: ColoredForest, vertices: Iterable[int]) -> tuple[int, ...]:
    cnt = Counter(forest.color[v] for v in vertices)
    return tuple(cnt.get(i, 0) for i in range(forest.k))
