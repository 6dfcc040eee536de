"""Instance generators: 3-Partition reduction gadgets, paint-shop paths, random forests.

Every gadget has two colors in ratio ``1:B``; color 0 is the rare ("blue")
color and color 1 the common ("red") one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .core import ColoredForest, validate_instance
from .errors import BadSpec, BadWord

MASK64 = (1 << 64) - 1


class SplitMix64:
    """The splitmix64 generator (Steele, Lea and Flood), for reproducible streams.

    Seeds and outputs are 64-bit; the stream is identical on every platform
    and easy to reproduce in other languages.
    """

    def __init__(self, seed: int = 0):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection sampling."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            r = self.next()
            if r < limit:
                return r % bound

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


@dataclass(frozen=True)
class ThreePartitionSpec:
    p: int
    B: int
    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(self.a)
        object.__setattr__(self, "a", a)
        if self.p < 1 or len(a) != 3 * self.p:
            raise BadSpec(f"need 3p = {3 * self.p} numbers, got {len(a)}")
        bad = [x for x in a if not (self.B < 4 * x and 2 * x < self.B)]
        if bad:
            raise BadSpec(f"numbers {bad} are not strictly between B/4 and B/2 for B={self.B}")
        if sum(a) != self.p * self.B:
            raise BadSpec(f"numbers sum to {sum(a)}, expected p*B = {self.p * self.B}")


def three_partition_solution(spec: ThreePartitionSpec) -> list[tuple[int, int, int]] | None:
    """Index triples each summing to ``B``, or ``None`` when impossible."""

    def rec(left: tuple[int, ...]):
        if not left:
            return []
        first = left[0]
        for j, k in combinations(range(1, len(left)), 2):
            if spec.a[first] + spec.a[left[j]] + spec.a[left[k]] == spec.B:
                rest = tuple(x for i, x in enumerate(left) if i not in (0, j, k))
                sub = rec(rest)
                if sub is not None:
                    return [(first, left[j], left[k])] + sub
        return None

    return rec(tuple(range(len(spec.a))))


def three_partition_solvable(spec: ThreePartitionSpec, max_p: int = 4) -> bool | None:
    """Exhaustive yes/no answer for ``p <= max_p``; ``None`` (unknown) beyond."""
    if spec.p > max_p:
        return None
    return three_partition_solution(spec) is not None


@dataclass(frozen=True)
class GadgetInstance:
    forest: ColoredForest
    threshold: int | None
    is_yes: bool | None
    name: str
    witness: tuple[int, ...] | None = None


def _tree_edges(size: int, shape: str, start: int) -> list[tuple[int, int]]:
    vs = list(range(start, start + size))
    if shape == "path":
        return list(zip(vs, vs[1:]))
    if shape == "star":
        return [(vs[0], v) for v in vs[1:]]
    if shape == "caterpillar":
        spine = vs[: (size + 1) // 2]
        legs = vs[len(spine):]
        return list(zip(spine, spine[1:])) + [(spine[i], v) for i, v in enumerate(legs)]
    raise BadSpec(f"unknown tree shape {shape!r}")


def gen_forest_gadget(spec: ThreePartitionSpec, tree_shape: str = "path") -> GadgetInstance:
    """``p`` isolated blue vertices plus one red tree of ``a_i`` vertices per number.

    A fair clustering reaches the threshold exactly when every red tree stays
    whole, i.e. when the numbers split into triples summing to ``B``.
    """
    p, B = spec.p, spec.B
    colors = [0] * p
    edges: list[tuple[int, int]] = []
    for size in spec.a:
        edges += _tree_edges(size, tree_shape, len(colors))
        colors += [1] * size
    forest = validate_instance(len(colors), edges, colors, k=2)
    threshold = p * B * (B + 1) // 2 - p * (B - 3)
    return GadgetInstance(forest, threshold, three_partition_solvable(spec), f"forest-{tree_shape}")


def gen_diam4_gadget(spec: ThreePartitionSpec) -> GadgetInstance:
    """Red stars of ``a_i`` vertices whose centers hang off the center of a blue star of ``p`` vertices."""
    p, B = spec.p, spec.B
    colors = [0] * p
    edges = [(0, v) for v in range(1, p)]
    for size in spec.a:
        c = len(colors)
        edges.append((0, c))
        edges += _tree_edges(size, "star", c)
        colors += [1] * size
    forest = validate_instance(len(colors), edges, colors, k=2)
    threshold = (p * B * B - p * B) // 2 + 7 * p - 7
    return GadgetInstance(forest, threshold, three_partition_solvable(spec), "diam4")


def gen_deg5_gadget(spec: ThreePartitionSpec) -> GadgetInstance:
    """Tree of maximum degree 5 encoding the 3-Partition instance.

    Each number ``a_i`` gets a center joined to one end of five red paths
    with ``a_i``, ``B/4``, ``B/4``, ``B/4`` and ``B/4 - 1`` vertices.  The free
    ends of consecutive ``(B/4 - 1)``-paths are joined, and a blue path of
    ``4n/3`` vertices (``n = 3p`` numbers) hangs off the free end of the
    first ``a``-path.

    For yes-instances the witness clusters each center with its four
    ``B/4``-ish paths, groups the ``a``-paths by triples, and adds one blue
    vertex to every cluster.  It cuts ``10n/3 - 2`` edges, so its cost is
    ``(B - 2) * N / 2 + 20n/3 - 3`` for ``N`` vertices.
    """
    p, B = spec.p, spec.B
    if B % 4:
        raise BadSpec(f"B={B} must be a multiple of 4")
    n = 3 * p
    q = B // 4
    colors: list[int] = []
    edges: list[tuple[int, int]] = []
    owner: list[tuple[int, str]] = []  # per vertex: (number index, role)

    def path(size, i, role):
        start = len(colors)
        for v in range(start, start + size):
            colors.append(1)
            owner.append((i, role))
        edges.extend(zip(range(start, start + size - 1), range(start + 1, start + size)))
        return start, start + size - 1

    a_path_ends = []
    link_ends = []
    cut_edges = []
    for i, ai in enumerate(spec.a):
        center = len(colors)
        colors.append(1)
        owner.append((i, "body"))
        for size, role in ((ai, "a"), (q, "body"), (q, "body"), (q, "body"), (q - 1, "body")):
            first, last = path(size, i, role)
            edges.append((center, first))
            if role == "a":
                a_path_ends.append(last)
                cut_edges.append((center, first))
            elif size == q - 1:
                link_ends.append(last)
    for x, y in zip(link_ends, link_ends[1:]):
        edges.append((x, y))
        cut_edges.append((x, y))
    blue_start = len(colors)
    nb = 4 * n // 3
    colors += [0] * nb
    owner += [(-1, "blue")] * nb
    edges.extend((v, v + 1) for v in range(blue_start, blue_start + nb - 1))
    edges.append((a_path_ends[0], blue_start))
    forest = validate_instance(len(colors), edges, colors, k=2)
    threshold = (B - 2) * forest.n // 2 + 20 * n // 3 - 3

    solution = three_partition_solution(spec) if p <= 4 else None
    witness = None
    if solution is not None:
        triple_of = {}
        for t, triple in enumerate(solution):
            for i in triple:
                triple_of[i] = t
        assignment = []
        for v in range(blue_start):
            i, role = owner[v]
            assignment.append(triple_of[i] if role == "a" else p + i)
        # the attached blue vertex joins the triple holding a_0; the rest fill the others
        order = [triple_of[0]] + [c for c in range(p + n) if c != triple_of[0]]
        assignment += order
        witness = tuple(assignment)
    is_yes = None if p > 4 else solution is not None
    return GadgetInstance(forest, threshold, is_yes, "deg5", witness)


def gen_paintshop_path(word: Sequence) -> GadgetInstance:
    """Path whose vertices are colored by the symbols of ``word``.

    Every symbol must occur exactly twice, so fair clusterings are either
    the whole path or two clusters with one vertex of each color.
    """
    word = list(word)
    counts: dict = {}
    for s in word:
        counts[s] = counts.get(s, 0) + 1
    bad = [s for s, c in counts.items() if c != 2]
    if not word or bad:
        raise BadWord(f"every symbol must appear exactly twice; offending: {bad}")
    forest = validate_instance(len(word), [(i, i + 1) for i in range(len(word) - 1)], word)
    return GadgetInstance(forest, None, None, "paintshop")


def gen_random_forest(
    n: int, ratio: Sequence[int], shape: str = "random", seed: int = 0, attach: float = 0.8
) -> ColoredForest:
    """Seeded random forest with colors in exactly the given ratio.

    Shapes: ``random`` (each vertex attaches to a uniform earlier vertex with
    probability ``attach``, else starts a new tree), ``tree`` (always
    attaches), ``path`` and ``star``.  Vertex colors are shuffled.
    """
    d = sum(ratio)
    if n < 1 or d < 1 or n % d or min(ratio) < 1:
        raise BadSpec(f"n={n} is not a positive multiple of the ratio sum {d}")
    rng = SplitMix64(seed)
    colors = [i for i, c in enumerate(ratio) for _ in range(c * (n // d))]
    rng.shuffle(colors)
    edges = []
    if shape in ("random", "tree"):
        cutoff = int(attach * 1_000_000)
        for v in range(1, n):
            if shape == "tree" or rng.below(1_000_000) < cutoff:
                edges.append((rng.below(v), v))
    elif shape == "path":
        edges = [(v, v + 1) for v in range(n - 1)]
    elif shape == "star":
        edges = [(0, v) for v in range(1, n)]
    else:
        raise BadSpec(f"unknown shape {shape!r}")
    return validate_instance(n, edges, colors, k=len(ratio))
