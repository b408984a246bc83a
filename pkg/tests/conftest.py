import itertools

import numpy as np
import pytest

from cellassoc.netmodel import Scenario


def make_random_scenario(rng, n_bs, n_mu, side=100.0, powers=(50.0, 125.0, 250.0), noise=1e-9, gamma=3.0):
    return Scenario(
        rng.uniform(0, side, size=(n_bs, 2)),
        rng.uniform(0, side, size=(n_mu, 2)),
        rng.choice(powers, size=n_bs),
        noise,
        gamma,
        arena=(0.0, 0.0, side, side),
    )


def all_assignments(n_bs, n_mu):
    return list(itertools.product(range(n_bs), repeat=n_mu))


def oracle_scores(rates, f):
    """Sum rate and sum delay of an assignment, by plain loops."""
    counts = {}
    for a in f:
        counts[a] = counts.get(a, 0) + 1
    total_rate, total_delay = 0.0, 0.0
    for p, a in enumerate(f):
        r = float(rates[p][a]) / counts[a]
        total_rate += r
        total_delay += 1.0 / r
    return total_rate, total_delay


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_scenario():
    return make_random_scenario


# acceptance verdicts, one (number, title, passed, detail) per criterion
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num:2d}. {title}: {detail}")
