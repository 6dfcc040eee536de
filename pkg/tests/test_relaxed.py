from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fairforest.core import is_fair, validate_instance
from fairforest.errors import BadParams, WrongRatio
from fairforest.oracle import brute_force_relaxed
from fairforest.relaxed import (
    RelaxedParams,
    alpha_cluster_bound,
    alpha_params,
    is_relaxed_fair,
    set_in_band,
    solve_alpha_relaxed_one_one,
    solve_relaxed_one_one_experimental,
)
from fairforest.solvers_linear import solve_one_one

from conftest import forests


def path(word):
    return validate_instance(len(word), [(i, i + 1) for i in range(len(word) - 1)], list(word))


def brute_alpha_hat(alpha):
    return next(h for h in range(1, 1000) if (2 * h / alpha).denominator == 1 and 2 * h / alpha > 4)


@pytest.mark.parametrize(
    "alpha, expected",
    [(Fraction(1, 2), (2, 32)), (Fraction(2, 3), (2, 18)), (Fraction(1, 3), (1, 36))],
)
def test_alpha_cluster_bound(alpha, expected):
    assert alpha_cluster_bound(alpha) == expected


@given(st.fractions(min_value=Fraction(1, 50), max_value=Fraction(49, 50), max_denominator=50).filter(lambda a: 0 < a < 1))
def test_alpha_hat_is_least(alpha):
    hat, d_rel = alpha_cluster_bound(alpha)
    assert hat == brute_alpha_hat(alpha)
    assert d_rel == 4 * hat / alpha**2


def test_alpha_bound_errors():
    for bad in (0, 1, Fraction(3, 2)):
        with pytest.raises(BadParams):
            alpha_cluster_bound(bad)


def test_relaxed_path_beats_exact():
    f = path("rrbrbb")
    assert solve_one_one(f).total == 4
    c = solve_alpha_relaxed_one_one(f, Fraction(2, 3))
    assert c.total == 3
    assert c.assignment == (0, 0, 0, 1, 1, 1)
    assert is_relaxed_fair(f, c, Fraction(2, 3))
    assert not is_fair(f, c)


def test_band_membership():
    f = path("rrbb")
    params = alpha_params(f, Fraction(2, 3))
    assert params.lower == (Fraction(1, 3), Fraction(1, 3))
    assert params.upper == (Fraction(3, 4), Fraction(3, 4))
    assert set_in_band((1, 2), params)
    assert not set_in_band((1, 3), params)
    assert not set_in_band((0, 0), params)


def test_params_validation():
    f = path("rrbb")
    with pytest.raises(BadParams):
        RelaxedParams((Fraction(1, 4),), (Fraction(3, 4),)).check(f)
    with pytest.raises(BadParams):
        RelaxedParams((Fraction(1, 4),) * 2, (Fraction(2, 5),) * 2).check(f)
    with pytest.raises(BadParams):
        RelaxedParams((Fraction(1, 4),) * 2, (Fraction(1),) * 2).check(f)
    # alpha = 1/2 reaches an upper share of 1 for two equal colors
    alpha_params(f, Fraction(1, 2)).check(f)
    with pytest.raises(WrongRatio):
        solve_alpha_relaxed_one_one(path("rbb"), Fraction(1, 2))


@settings(max_examples=150, deadline=None)
@given(forests(ratios=((1, 1),), max_n=8), st.sampled_from([Fraction(1, 2), Fraction(2, 3)]))
def test_alpha_relaxed_matches_oracle(forest, alpha):
    c = solve_alpha_relaxed_one_one(forest, alpha)
    assert is_relaxed_fair(forest, c, alpha)
    assert c.total == brute_force_relaxed(forest, alpha).total
    assert c.total <= solve_one_one(forest).total


@settings(max_examples=60, deadline=None)
@given(forests(ratios=((1, 1),), max_n=8))
def test_experimental_band_matches_oracle_on_small_instances(forest):
    params = RelaxedParams((Fraction(2, 5),) * 2, (Fraction(3, 5),) * 2)
    c = solve_relaxed_one_one_experimental(forest, params)
    assert is_relaxed_fair(forest, c, params)
    assert c.total == brute_force_relaxed(forest, params).total
