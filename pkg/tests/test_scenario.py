import json

import numpy as np
import pytest

from cellassoc import scenario as sc
from cellassoc.netmodel import distances, dbw_to_watts
from cellassoc.scenario import (
    LinearNetParams,
    ScenarioError,
    ScenarioSpec,
    constructed_topology,
    linear_scenario,
    make_scenario,
    random_scenario,
)


def test_random_scenario_shape_and_bounds():
    s = random_scenario(ScenarioSpec(n_bs=20, seed=4))
    assert (s.n_bs, s.n_mu) == (20, 100)
    for pts in (s.bs_positions, s.mu_positions):
        assert pts.min() >= 0 and pts.max() <= 100
    assert set(s.powers) <= {50.0, 125.0, 250.0}
    assert s.noise == pytest.approx(dbw_to_watts(-90.0))
    assert s.prng == sc.PRNG_NAME and s.seed == 4


def test_random_scenario_deterministic():
    a = random_scenario(ScenarioSpec(seed=9))
    b = random_scenario(ScenarioSpec(seed=9))
    c = random_scenario(ScenarioSpec(seed=10))
    assert a == b
    assert not np.array_equal(a.bs_positions, c.bs_positions)


def test_random_scenario_uses_all_power_levels_eventually():
    seen = set()
    for seed in range(20):
        seen |= set(random_scenario(ScenarioSpec(seed=seed)).powers)
    assert seen == {50.0, 125.0, 250.0}


def test_spec_validation():
    with pytest.raises(ValueError, match="n_bs"):
        ScenarioSpec(n_bs=0)
    with pytest.raises(ValueError, match="kind"):
        ScenarioSpec(kind="GRID")
    with pytest.raises(ScenarioError):
        ScenarioSpec.from_dict({"n_bs": 3, "colour": 1})


def test_save_load_round_trip(tmp_path):
    for s in (random_scenario(ScenarioSpec(n_bs=6, seed=2)), constructed_topology(), linear_scenario()):
        path = tmp_path / "s.json"
        sc.save(s, path)
        assert sc.load(path) == s
        assert sc.dumps(sc.load(path)) == sc.dumps(s)


def test_width_height_arena_is_accepted():
    d = sc.to_dict(constructed_topology())
    assert d["arena_m"] == [100.0, 100.0]
    del d["noise_w"]
    s = sc.from_dict(d)
    assert s.arena == (0.0, 0.0, 100.0, 100.0)
    assert s.noise == pytest.approx(dbw_to_watts(-90.0))


def test_missing_gamma_names_field():
    d = sc.to_dict(constructed_topology())
    del d["gamma"]
    with pytest.raises(ScenarioError) as err:
        sc.from_dict(d)
    assert err.value.path == "gamma"


def test_negative_power_names_field():
    d = sc.to_dict(constructed_topology())
    d["bs"][2]["power"] = -1.0
    with pytest.raises(ScenarioError) as err:
        sc.from_dict(d)
    assert err.value.path == "bs[2].power"


@pytest.mark.parametrize("mutate, path", [
    (lambda d: d["mu"][1].pop("pos_m"), "mu[1].pos_m"),
    (lambda d: d.__setitem__("gamma", "three"), "gamma"),
    (lambda d: d.__setitem__("bs", []), "bs"),
    (lambda d: d.__setitem__("gamma", 1.5), "gamma"),
])
def test_malformed_fields(mutate, path):
    d = sc.to_dict(constructed_topology())
    mutate(d)
    with pytest.raises(ScenarioError) as err:
        sc.from_dict(d)
    assert err.value.path == path


def test_invalid_json():
    with pytest.raises(ScenarioError):
        sc.loads("{not json")


def test_linear_scenario_distances():
    s = linear_scenario(LinearNetParams(d=100.0, delta=0.25))
    np.testing.assert_allclose(distances(s), [[75.0, 125.0], [125.0, 75.0]])


def test_linear_params_validation():
    with pytest.raises(ValueError):
        LinearNetParams(delta=1.0)
    with pytest.raises(ValueError):
        LinearNetParams(d=0.0)


def test_constructed_topology_properties():
    s = constructed_topology()
    assert (s.n_bs, s.n_mu) == (4, 4)
    d = distances(s)
    # every MU is nearest to BS 0, and MU 0 sits right next to it
    assert np.all(np.argmin(d, axis=1) == 0)
    assert d[0, 0] == pytest.approx(3.0)
    assert make_scenario(ScenarioSpec(kind="constructed_4x4")) == s
