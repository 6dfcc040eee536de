from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fairforest.core import is_fair, validate_instance
from fairforest.errors import DiameterTooLarge, NotATree, WrongRatio
from fairforest.gadgets import gen_random_forest
from fairforest.oracle import brute_force_exact
from fairforest.solvers_linear import (
    max_matching_forest,
    solve_diameter_le3,
    solve_one_one,
    tree_diameter,
)

from conftest import forests


def brute_matching_size(forest, admissible):
    edges = [e for e in forest.edges if admissible(*e)]
    for r in range(len(edges), 0, -1):
        for sub in combinations(edges, r):
            ends = [v for e in sub for v in e]
            if len(set(ends)) == len(ends):
                return r
    return 0


@settings(max_examples=200, deadline=None)
@given(forests(ratios=((1, 1), (1, 2)), max_n=12))
def test_matching_is_maximum(forest):
    bichromatic = lambda u, v: forest.color[u] != forest.color[v]
    for adm in (None, bichromatic):
        m = max_matching_forest(forest, adm)
        ends = [v for e in m for v in e]
        assert len(set(ends)) == len(ends)
        assert all(e in forest.edge_ids for e in m)
        if adm is not None:
            assert all(adm(*e) for e in m)
        assert len(m) == brute_matching_size(forest, adm or (lambda u, v: True))


def test_one_one_path():
    f = validate_instance(4, [(0, 1), (1, 2), (2, 3)], [0, 1, 0, 1])
    c = solve_one_one(f)
    assert c.total == 1
    assert c.assignment == (0, 0, 1, 1)
    assert c.solver == "one_one"


def test_one_one_no_bichromatic_edges():
    f = validate_instance(4, [(0, 1), (2, 3)], [0, 0, 1, 1])
    assert solve_one_one(f).total == 4


def test_one_one_rejects_other_ratios():
    with pytest.raises(WrongRatio):
        solve_one_one(validate_instance(3, [], [0, 1, 1]))


@settings(max_examples=200, deadline=None)
@given(forests(ratios=((1, 1),), max_n=10))
def test_one_one_matches_oracle(forest):
    c = solve_one_one(forest)
    assert is_fair(forest, c)
    assert c.total == brute_force_exact(forest).total


def test_diameter():
    assert tree_diameter(validate_instance(1, [], [0])) == 0
    assert tree_diameter(validate_instance(4, [(0, 1), (1, 2), (2, 3)], [0] * 4)) == 3
    assert tree_diameter(validate_instance(4, [(0, 1), (0, 2), (0, 3)], [0] * 4)) == 2
    with pytest.raises(NotATree):
        tree_diameter(validate_instance(3, [(0, 1)], [0, 1, 0]))


def test_star_blue_center():
    f = validate_instance(3, [(0, 1), (0, 2)], [0, 1, 1])
    c = solve_diameter_le3(f)
    assert c.total == 1
    assert (c.chi, c.psi) == (0, 1)
    assert c.solver == "diam3"


def test_diameter_errors():
    path5 = validate_instance(5, [(0, 1), (1, 2), (2, 3), (3, 4)], [0, 1, 1, 0, 1])
    with pytest.raises(DiameterTooLarge):
        solve_diameter_le3(path5)
    with pytest.raises(NotATree):
        solve_diameter_le3(validate_instance(3, [(0, 1)], [0, 1, 1]))


@st.composite
def shallow_trees(draw, ratios=((1, 1), (1, 2), (1, 1, 1), (2, 3), (1, 3), (1, 1, 2))):
    """Stars and double stars with colors in one of ``ratios``."""
    ratio = draw(st.sampled_from(ratios))
    d = sum(ratio)
    mult = draw(st.integers(1, 10 // d))
    n = d * mult
    colors = draw(st.permutations([i for i, c in enumerate(ratio) for _ in range(c * mult)]))
    if n >= 4 and draw(st.booleans()):
        left = draw(st.integers(1, n - 3))
        edges = [(0, 1)] + [(0, v) for v in range(2, 2 + left)] + [(1, v) for v in range(2 + left, n)]
    else:
        edges = [(0, v) for v in range(1, n)]
    return validate_instance(n, edges, list(colors), k=len(ratio))


@settings(max_examples=200, deadline=None)
@given(shallow_trees())
def test_diameter_le3_matches_oracle(forest):
    c = solve_diameter_le3(forest)
    assert is_fair(forest, c)
    assert c.total == brute_force_exact(forest).total


def test_one_one_large_is_fair():
    f = gen_random_forest(2000, (1, 1), seed=3)
    c = solve_one_one(f)
    assert is_fair(f, c)
    assert c.total == c.chi + c.psi


def test_star_single_cluster_costs():
    f = validate_instance(6, [(0, v) for v in range(1, 6)], [0, 1, 1, 1, 1, 1])
    c = solve_diameter_le3(f)
    assert (c.chi, c.total) == (0, 10)
    f3 = validate_instance(3, [(0, 1), (0, 2)], [1, 0, 2])
    assert solve_diameter_le3(f3).total == 1
