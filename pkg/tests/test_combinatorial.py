import numpy as np
import pytest

from cellassoc.netmodel import Assignment, Scenario, evaluate, rate_table
from cellassoc.scenario import LinearNetParams, constructed_topology, linear_scenario
from cellassoc.solvers import (
    InstanceTooLarge,
    congestion_identity_check,
    iter_assignment_blocks,
    pairwise_separation,
    solve_c1d,
    solve_c1r,
)
from cellassoc.hst import unit_metric

from conftest import all_assignments, make_random_scenario, oracle_scores


def test_enumeration_order_is_lexicographic():
    blocks = [b for _, b in iter_assignment_blocks(3, 2, chunk=4)]
    got = [tuple(r) for b in blocks for r in b]
    assert got == all_assignments(3, 2)


def test_cap_exceeded():
    s = make_random_scenario(np.random.default_rng(0), 10, 8)
    with pytest.raises(InstanceTooLarge, match="too large"):
        solve_c1d(s, rate_table(s))
    with pytest.raises(InstanceTooLarge):
        solve_c1r(s, rate_table(s), cap=1000)


def test_single_mu_takes_best_rate(rng):
    s = make_random_scenario(rng, 5, 1)
    rt = rate_table(s)
    best = int(np.argmax(rt.rates[0]))
    assert solve_c1r(s, rt).rounded.tolist() == [best]
    assert solve_c1d(s, rt).rounded.tolist() == [best]


def test_linear_two_by_two_hand_enumeration():
    s = linear_scenario(LinearNetParams(delta=0.5))
    rt = rate_table(s)
    r = rt.rates
    # f1 (both on a), f2 (p->a, q->b), f3 (crossed), f4 (both on b)
    sum_rates = {
        (0, 0): (r[0, 0] + r[1, 0]) / 2,
        (0, 1): r[0, 0] + r[1, 1],
        (1, 0): r[0, 1] + r[1, 0],
        (1, 1): (r[0, 1] + r[1, 1]) / 2,
    }
    best = max(sum_rates, key=sum_rates.get)
    assert tuple(solve_c1r(s, rt).rounded.tolist()) == best == (0, 1)


def test_c1d_objective_is_sum_delay(rng):
    for _ in range(10):
        s = make_random_scenario(rng, 3, 4)
        rt = rate_table(s)
        rep = solve_c1d(s, rt)
        assert rep.objective_value == evaluate(s, rt, rep.rounded).sum_delay


def test_c1d_matches_oracle_on_3x5(rng):
    for _ in range(5):
        s = make_random_scenario(rng, 3, 5)
        rt = rate_table(s)
        delays = {f: oracle_scores(rt.rates, f)[1] for f in all_assignments(3, 5)}
        best = min(delays.values())
        rep = solve_c1d(s, rt)
        assert rep.objective_value == pytest.approx(best, rel=1e-12)


def test_c1r_on_constructed_topology_avoids_congestion():
    s = constructed_topology()
    rep = solve_c1r(s, rate_table(s))
    np.testing.assert_array_equal(rep.eval.occupancy, [1, 1, 1, 1])


def test_congestion_identity_examples():
    s = make_random_scenario(np.random.default_rng(1), 4, 4)
    m = unit_metric(4)
    assert pairwise_separation(Assignment([2, 2, 2, 2]), m) == 0
    assert pairwise_separation(Assignment([0, 1, 2, 3]), m) == (16 - 4) / 2 == 6
    assert congestion_identity_check(s)


def test_congestion_identity_fails_for_other_metric():
    s = make_random_scenario(np.random.default_rng(1), 3, 3)
    m = np.array([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
    from cellassoc.hst import LabelMetric
    assert not congestion_identity_check(s, LabelMetric(m))
