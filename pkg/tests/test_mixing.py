import math
from fractions import Fraction

import pytest

from promlex.chains import evaluate, stationary_vector, transition_matrix
from promlex.errors import DimensionMismatch, InvalidWeights, NonPositiveRate
from promlex.mixing import (
    convergence_bound,
    convergence_bound_upper,
    mixing_csv,
    mixing_time_upper,
    power_distribution,
    simulate_walk,
    total_variation,
    worst_tv_by_step,
)
from promlex.posets import antichain_poset, chain_poset

f = Fraction


# ----------------------------------------------------------------------
# exact evolution and distances


def test_power_distribution_zero_steps(running_example):
    mnum = evaluate(transition_matrix(running_example, "promotion"), [f(1, 4)] * 4)
    init = [f(1), f(0), f(0), f(0), f(0)]
    assert power_distribution(mnum, init, 0) == init


def test_power_distribution_one_step_is_column(running_example):
    mnum = evaluate(transition_matrix(running_example, "promotion"), [f(1, 4)] * 4)
    init = [f(1), f(0), f(0), f(0), f(0)]
    one = power_distribution(mnum, init, 1)
    assert one == [mnum[(i, 0)] for i in range(5)]
    assert sum(one) == 1


def test_uniform_fixed_point(running_example):
    mnum = evaluate(transition_matrix(running_example, "uniform"), [f(1, 4)] * 4)
    u = [f(1, 5)] * 5
    for k in (1, 3, 7):
        assert power_distribution(mnum, u, k) == u


def test_mass_preserved(running_example):
    w = [f(1, 10), f(2, 10), f(3, 10), f(4, 10)]
    mnum = evaluate(transition_matrix(running_example, "promotion"), w)
    init = [f(1, 5)] * 5
    assert sum(power_distribution(mnum, init, 11)) == 1


def test_total_variation_examples():
    assert total_variation([f(1, 2), f(1, 2)], [f(1, 2), f(1, 2)]) == 0
    assert total_variation([f(1), f(0)], [f(0), f(1)]) == 1
    assert total_variation([f(1, 2), f(1, 2)], [f(1, 4), f(3, 4)]) == f(1, 4)
    with pytest.raises(DimensionMismatch):
        total_variation([f(1)], [f(1, 2), f(1, 2)])


# ----------------------------------------------------------------------
# the convergence bound


def test_bound_at_threshold_is_one():
    # n=4, p=1/4: threshold k = (16-1)*4 = 60, exponent 0
    assert convergence_bound(4, f(1, 4), 60) == 1.0


def test_bound_value_at_120():
    assert convergence_bound(4, f(1, 4), 120) == pytest.approx(math.exp(-3.75), rel=1e-12)


def test_bound_below_threshold_not_applicable():
    assert convergence_bound(4, f(1, 4), 59) is None
    assert convergence_bound_upper(4, f(1, 4), 59) is None


def test_bound_rejects_nonpositive_rate():
    with pytest.raises(NonPositiveRate):
        convergence_bound(4, 0, 10)
    with pytest.raises(NonPositiveRate):
        mixing_time_upper(4, f(-1, 4), 1)


def test_bound_upper_is_certified():
    for k in (60, 80, 120, 200):
        float_val = convergence_bound(4, f(1, 4), k)
        upper = convergence_bound_upper(4, f(1, 4), k)
        assert upper >= f(*float_val.as_integer_ratio()) - f(1, 10**12)
        assert upper - f(*float_val.as_integer_ratio()) < f(1, 10**9)


def test_mixing_time_values():
    assert mixing_time_upper(4, f(1, 4), 1) == 128
    assert mixing_time_upper(5, f(1, 3), 0) == 2 * 24 * 3
    # uniform weights: p = 1/n gives the cubic-order bound 2n(n^2+c-1)
    for n in range(2, 7):
        assert mixing_time_upper(n, f(1, n), 2) == 2 * n * (n * n + 1)


# ----------------------------------------------------------------------
# exact distance profiles vs the bound


def test_worst_tv_decreases_and_respects_bound():
    P = antichain_poset(3)
    w = [f(2, 16), f(5, 16), f(9, 16)]
    prof = worst_tv_by_step(P, w, 160)
    assert prof[0][1] > prof[-1][1]
    p_x = min(w)
    for k, tv in prof:
        bound = convergence_bound_upper(3, p_x, k)
        if bound is not None:
            assert tv <= bound


def test_mixing_csv_format():
    P = chain_poset(2)
    out = mixing_csv(P, [f(1, 2), f(1, 2)], 3)
    lines = out.strip().splitlines()
    assert lines[0] == "k,tv_exact,bound"
    assert len(lines) == 5
    assert lines[1].startswith("0,0,")  # single state: distance 0 from the start


# ----------------------------------------------------------------------
# seeded walks


def test_walk_on_chain_is_constant():
    res = simulate_walk(chain_poset(4), [f(1, 4)] * 4, 50, seed=1)
    assert set(res.trajectory) == {0}
    assert res.empirical == [f(1)]


def test_walk_deterministic_given_seed():
    P = antichain_poset(3)
    w = [f(1, 6), f(2, 6), f(3, 6)]
    a = simulate_walk(P, w, 500, seed=42)
    b = simulate_walk(P, w, 500, seed=42)
    assert a.trajectory == b.trajectory
    c = simulate_walk(P, w, 500, seed=43)
    assert c.trajectory != a.trajectory


def test_walk_empirical_near_stationary():
    # matches the closed-form law within standard Monte-Carlo error
    P = antichain_poset(3)
    w = [f(1, 6), f(2, 6), f(3, 6)]
    res = simulate_walk(P, w, 10**5, seed=2024)
    target = stationary_vector(P, w)
    assert total_variation(res.empirical, target) < f(2, 100)


def test_walk_rejects_bad_weights():
    with pytest.raises(InvalidWeights):
        simulate_walk(antichain_poset(2), [f(1, 2), f(1, 3)], 10, seed=0)
    with pytest.raises(DimensionMismatch):
        simulate_walk(antichain_poset(2), [f(1, 3), f(1, 3), f(1, 3)], 10, seed=0)
