import math

import numpy as np
import pytest

from cellassoc.deactivation import (
    LinearNetParams,
    activation_penalty,
    brute_force_deactivated,
    brute_force_linear_winner,
    decision_boundary,
    delay_threshold,
    linear_label,
    rate_threshold,
    sinr_terms,
)
from cellassoc.harness import DELTA_GRID, NOISE_GRID_DBW
from cellassoc.netmodel import Assignment, Scenario, evaluate_deactivated
from cellassoc.scenario import linear_scenario


def test_sinr_terms_by_hand():
    # N d^gamma = 1e-9 * 100**3 = 1e-3
    a, b, c = sinr_terms(LinearNetParams(100.0, 0.5, 3.0, -90.0))
    assert a == pytest.approx(8.0 / 1e-3, rel=1e-12)
    assert b == pytest.approx((1 / 3.375) / 1e-3, rel=1e-12)
    assert c == pytest.approx(8.0 / (1 / 3.375 + 1e-3), rel=1e-12)


def test_terms_match_network_model():
    p = LinearNetParams(100.0, 0.3, 3.0, -95.0)
    s = linear_scenario(p)
    a, b, c = sinr_terms(p)
    f1 = evaluate_deactivated(s, Assignment([0, 0]))
    f2 = evaluate_deactivated(s, Assignment([0, 1]))
    np.testing.assert_allclose(f1.sinrs, [a, b], rtol=1e-12)
    np.testing.assert_allclose(f2.sinrs, [c, c], rtol=1e-12)


@pytest.mark.parametrize("rule", [rate_threshold, delay_threshold])
def test_lhs_matches_direct_comparison(rule):
    for delta in (0.1, 0.5, 0.9):
        for n in (-120.0, -90.0, -60.0):
            p = LinearNetParams(100.0, delta, 3.0, n)
            a, b, c = sinr_terms(p)
            ra, rb, rc = math.log1p(a), math.log1p(b), math.log1p(c)
            if rule is rate_threshold:
                direct = "f1" if (ra + rb) / 2 > 2 * rc else "f2"
            else:
                direct = "f1" if 2 / ra + 2 / rb < 2 / rc else "f2"
            assert rule(p).winner == direct


def test_far_mu_near_far_bs_prefers_activation():
    p = LinearNetParams(100.0, 0.95, 3.0, -90.0)
    assert rate_threshold(p).winner == "f2"
    assert delay_threshold(p).winner == "f2"


def test_invariant_to_log_base():
    p = LinearNetParams(100.0, 0.5, 3.0, -90.0)
    a, b, c = sinr_terms(p)
    l2 = lambda v: math.log2(1 + v)
    lhs2 = l2(a) * l2(b) / (l2(c) * math.log2((1 + a) * (1 + b)))
    assert lhs2 == pytest.approx(delay_threshold(p).lhs, rel=1e-12)


def test_brute_force_never_picks_f3_and_f4_mirrors_f1():
    for delta in DELTA_GRID:
        for n in NOISE_GRID_DBW:
            s = linear_scenario(LinearNetParams(100.0, delta, 3.0, n))
            for obj in ("RATE", "DELAY"):
                vals = {}
                for f in ((0, 0), (0, 1), (1, 0), (1, 1)):
                    ev = evaluate_deactivated(s, Assignment(f))
                    vals[f] = ev.sum_rate if obj == "RATE" else ev.sum_delay
                assert vals[(0, 0)] == pytest.approx(vals[(1, 1)], rel=1e-12)
                better = (lambda u, v: u > v) if obj == "RATE" else (lambda u, v: u < v)
                assert not better(vals[(1, 0)], vals[(0, 1)])
                assert linear_label(brute_force_deactivated(s, obj).rounded) != "f3"


def test_closed_form_agrees_with_brute_force_on_grid():
    for delta in DELTA_GRID:
        for n in NOISE_GRID_DBW:
            p = LinearNetParams(100.0, delta, 3.0, n)
            s = linear_scenario(p)
            assert rate_threshold(p).winner == brute_force_linear_winner(s, "RATE")
            assert delay_threshold(p).winner == brute_force_linear_winner(s, "DELAY")


def test_single_transition_along_delta():
    for n in NOISE_GRID_DBW:
        for rule in (rate_threshold, delay_threshold):
            winners = [rule(LinearNetParams(100.0, x, 3.0, n)).winner for x in np.linspace(0.01, 0.99, 99)]
            flips = sum(a != b for a, b in zip(winners, winners[1:]))
            assert flips <= 1
            if flips:
                assert winners[0] == "f1" and winners[-1] == "f2"


def test_decision_boundary_points():
    pts = decision_boundary(3.0, 100.0, DELTA_GRID, NOISE_GRID_DBW)
    assert len({(p.criterion, p.noise_dbw) for p in pts}) == 2 * len(NOISE_GRID_DBW)
    crossings = [p for p in pts if p.delta is not None]
    assert crossings
    for p in crossings:
        assert abs(p.lhs - 1.0) < 1e-9
        rule = rate_threshold if p.criterion == "rate" else delay_threshold
        assert rule(LinearNetParams(100.0, p.delta - 1e-6, 3.0, p.noise_dbw)).winner == "f1"
        assert rule(LinearNetParams(100.0, p.delta + 1e-6, 3.0, p.noise_dbw)).winner == "f2"


def test_decision_boundary_rejects_bad_grids():
    with pytest.raises(ValueError):
        decision_boundary(3.0, 100.0, [], [-90.0])
    with pytest.raises(ValueError):
        decision_boundary(3.0, 100.0, [0.5, 0.2], [-90.0])


def test_mirror_symmetry_of_linear_network():
    s = linear_scenario(LinearNetParams(100.0, 0.4, 3.0, -90.0))
    a = evaluate_deactivated(s, Assignment([0, 0]))
    b = evaluate_deactivated(s, Assignment([1, 1]))
    np.testing.assert_allclose(a.per_mu_rate, b.per_mu_rate[::-1], rtol=1e-12)


def test_brute_force_tags_and_values():
    s = linear_scenario()
    r = brute_force_deactivated(s, "rate")
    d = brute_force_deactivated(s, "DELAY")
    assert (r.formulation, d.formulation) == ("C1R-DEACT", "C1D-DEACT")
    assert r.iterations == 4
    with pytest.raises(ValueError):
        brute_force_deactivated(s, "POWER")


def test_activation_penalty():
    s = Scenario([(0, 0), (3, 4), (100, 0)], [(1, 0), (3, 3)], [1, 2, 5], 1e-9, 3.0)
    assert activation_penalty(s, Assignment([0, 0])) == 0.0
    # ordered pairs (0,1) and (1,0): 1 * 2 * 5 each
    assert activation_penalty(s, Assignment([0, 1])) == pytest.approx(20.0)
