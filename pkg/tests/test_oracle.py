import pytest
from hypothesis import given, settings

from fairforest.core import cc_cost, is_fair, validate_instance
from fairforest.errors import TooLarge, UnsupportedInstance
from fairforest.oracle import brute_force_exact, exact_fair_optima, set_partitions

from conftest import forests

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140]


def unpruned_optimum(forest):
    """Best fair cost over every set partition, no pruning at all."""
    return min(
        cc_cost(forest, a).total for a in set_partitions(forest.n) if is_fair(forest, a)
    )


@pytest.mark.parametrize("n", range(len(BELL)))
def test_set_partition_counts(n):
    parts = list(set_partitions(n))
    assert len(parts) == BELL[n]
    assert len(set(parts)) == BELL[n]
    assert parts == sorted(parts)


def test_two_monochromatic_edges_optima():
    f = validate_instance(4, [(0, 1), (2, 3)], ["r", "r", "b", "b"])
    cost, optima = exact_fair_optima(f)
    assert cost == 4
    assert optima == [(0, 0, 0, 0), (0, 1, 0, 1), (0, 1, 1, 0)]
    best = brute_force_exact(f)
    assert best.assignment == (0, 0, 0, 0)
    assert best.solver == "oracle"


def test_limits():
    f = validate_instance(14, [], [0, 1] * 7)
    with pytest.raises(TooLarge):
        brute_force_exact(f)
    with pytest.raises(UnsupportedInstance):
        brute_force_exact(validate_instance(2, [(0, 1)], [0, 0]))


@settings(max_examples=150, deadline=None)
@given(forests(ratios=((1, 1), (1, 2), (1, 1, 1), (2, 3), (1, 3)), max_n=8))
def test_pruning_is_sound(forest):
    best = brute_force_exact(forest)
    assert is_fair(forest, best)
    assert best.total == unpruned_optimum(forest)
