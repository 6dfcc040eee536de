from __future__ import annotations

from hypothesis import strategies as st

from fairforest.core import validate_instance
from fairforest.gadgets import gen_random_forest

SHAPES = ("random", "tree", "path", "star")


def seeded_forests(ratios, max_n, count, seed=0, shapes=SHAPES):
    """Deterministic stream of small random forests cycling through ratios and shapes."""
    out = []
    i = 0
    while len(out) < count:
        ratio = ratios[i % len(ratios)]
        d = sum(ratio)
        mults = list(range(1, max_n // d + 1))
        n = d * mults[(i // len(ratios)) % len(mults)]
        shape = shapes[(i // 3) % len(shapes)]
        out.append(gen_random_forest(n, ratio, shape, seed=seed * 100_003 + i))
        i += 1
    return out


@st.composite
def forests(draw, ratios=((1, 1), (1, 2), (1, 1, 1), (2, 3)), max_n=8):
    """Hypothesis strategy: a forest whose color counts are a multiple of one of ``ratios``."""
    ratio = draw(st.sampled_from([r for r in ratios if sum(r) <= max_n]))
    d = sum(ratio)
    mult = draw(st.integers(1, max_n // d))
    n = d * mult
    colors = [i for i, c in enumerate(ratio) for _ in range(c * mult)]
    colors = draw(st.permutations(colors))
    edges = []
    for v in range(1, n):
        p = draw(st.integers(-1, v - 1))
        if p >= 0:
            edges.append((p, v))
    return validate_instance(n, edges, list(colors), k=len(ratio))
