"""Downlink physical-layer model.

Pathloss attenuation, SINR and Shannon rates for every MU/BS pair, and
evaluation of an association (per-MU multiplexed rates, sum rate, sum delay)
under two interference models:

* all-active: every BS transmits, whether or not it serves anyone;
* deactivated: idle BSs (no associated MU) are silent.

Rates are in nats per channel use (natural log).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

D_MIN = 1.0  # meters; near-field clamp for the pathloss singularity


def dbw_to_watts(dbw: float) -> float:
    return float(10.0 ** (dbw / 10.0))


def watts_to_dbw(watts: float) -> float:
    if watts <= 0:
        return float("-inf")
    return float(10.0 * np.log10(watts))


@dataclass(frozen=True, eq=False)
class Scenario:
    """A physical problem instance.

    ``arena`` is ``(xmin, ymin, xmax, ymax)`` in meters. ``noise`` is linear
    (watts); ``powers`` are linear and stored as given.
    """

    bs_positions: np.ndarray
    mu_positions: np.ndarray
    powers: np.ndarray
    noise: float
    gamma: float
    arena: tuple = (0.0, 0.0, 100.0, 100.0)
    seed: int | None = None
    prng: str | None = None

    def __post_init__(self):
        bs = np.array(self.bs_positions, dtype=float).reshape(-1, 2)
        mu = np.array(self.mu_positions, dtype=float).reshape(-1, 2)
        pw = np.array(self.powers, dtype=float).reshape(-1)
        for arr in (bs, mu, pw):
            arr.setflags(write=False)
        object.__setattr__(self, "bs_positions", bs)
        object.__setattr__(self, "mu_positions", mu)
        object.__setattr__(self, "powers", pw)
        object.__setattr__(self, "noise", float(self.noise))
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "arena", tuple(float(v) for v in self.arena))
        self._validate()

    def _validate(self):
        if len(self.bs_positions) < 1:
            raise ValueError("scenario needs at least one BS")
        if len(self.mu_positions) < 1:
            raise ValueError("scenario needs at least one MU")
        if len(self.powers) != len(self.bs_positions):
            raise ValueError("powers: expected one entry per BS")
        if not np.all(np.isfinite(self.powers)) or np.any(self.powers <= 0):
            raise ValueError("powers: must be strictly positive")
        if not np.isfinite(self.noise) or self.noise < 0:
            raise ValueError("noise: must be finite and >= 0")
        if not self.gamma >= 2:
            raise ValueError("gamma: pathloss exponent must be >= 2")
        if len(self.arena) != 4:
            raise ValueError("arena: expected (xmin, ymin, xmax, ymax)")
        xmin, ymin, xmax, ymax = self.arena
        if not (xmax > xmin and ymax > ymin):
            raise ValueError("arena: empty rectangle")
        for name, pts in (("bs_positions", self.bs_positions), ("mu_positions", self.mu_positions)):
            if not np.all(np.isfinite(pts)):
                raise ValueError(f"{name}: non-finite coordinate")
            inside = (pts[:, 0] >= xmin) & (pts[:, 0] <= xmax) & (pts[:, 1] >= ymin) & (pts[:, 1] <= ymax)
            if not np.all(inside):
                raise ValueError(f"{name}[{int(np.argmin(inside))}]: outside arena")

    @property
    def n_bs(self) -> int:
        return len(self.bs_positions)

    @property
    def n_mu(self) -> int:
        return len(self.mu_positions)

    @property
    def noise_dbw(self) -> float:
        return watts_to_dbw(self.noise)

    def replace(self, **changes) -> "Scenario":
        kw = dict(
            bs_positions=self.bs_positions,
            mu_positions=self.mu_positions,
            powers=self.powers,
            noise=self.noise,
            gamma=self.gamma,
            arena=self.arena,
            seed=self.seed,
            prng=self.prng,
        )
        kw.update(changes)
        return Scenario(**kw)

    def __eq__(self, other):
        if not isinstance(other, Scenario):
            return NotImplemented
        return (
            np.array_equal(self.bs_positions, other.bs_positions)
            and np.array_equal(self.mu_positions, other.mu_positions)
            and np.array_equal(self.powers, other.powers)
            and self.noise == other.noise
            and self.gamma == other.gamma
            and self.arena == other.arena
            and self.seed == other.seed
            and self.prng == other.prng
        )

    __hash__ = None


@dataclass(frozen=True)
class RateTable:
    """All-active SINRs and rates, indexed ``[mu, bs]``."""

    sinrs: np.ndarray
    rates: np.ndarray

    @property
    def costs(self) -> np.ndarray:
        """Instantaneous per-pair delay ``1/r``."""
        return 1.0 / self.rates


@dataclass(frozen=True, eq=False)
class Assignment:
    """Single association: ``map[p]`` is the BS index serving MU ``p``."""

    map: np.ndarray
    n_bs: int | None = None

    def __post_init__(self):
        m = np.array(self.map, dtype=np.int64).reshape(-1)
        m.setflags(write=False)
        object.__setattr__(self, "map", m)
        if len(m) and m.min() < 0:
            raise ValueError("assignment: negative BS index")
        if self.n_bs is not None and len(m) and m.max() >= self.n_bs:
            raise ValueError(f"assignment: BS index {int(m.max())} out of range for {self.n_bs} BSs")

    def __len__(self):
        return len(self.map)

    def __eq__(self, other):
        if not isinstance(other, Assignment):
            return NotImplemented
        return np.array_equal(self.map, other.map)

    __hash__ = None

    def occupancy(self, n_bs: int) -> np.ndarray:
        return np.bincount(self.map, minlength=n_bs)

    def to_matrix(self, n_bs: int) -> np.ndarray:
        x = np.zeros((len(self.map), n_bs))
        x[np.arange(len(self.map)), self.map] = 1.0
        return x

    def tolist(self) -> list[int]:
        return [int(a) for a in self.map]


@dataclass(frozen=True)
class EvalResult:
    per_mu_rate: np.ndarray
    sum_rate: float
    sum_delay: float
    occupancy: np.ndarray
    active_set: np.ndarray
    sinrs: np.ndarray = field(repr=False, default=None)


def attenuation(y, y2, gamma: float) -> float:
    """Pathloss gain ``max(d, D_MIN) ** -gamma`` between two points."""
    if gamma < 2:
        raise ValueError("gamma must be >= 2")
    d = float(np.hypot(*(np.asarray(y, float) - np.asarray(y2, float))))
    return max(d, D_MIN) ** -gamma


def distances(s: Scenario) -> np.ndarray:
    """MU-to-BS Euclidean distances, shape ``(n_mu, n_bs)``."""
    diff = s.mu_positions[:, None, :] - s.bs_positions[None, :, :]
    return np.hypot(diff[..., 0], diff[..., 1])


def received_power(s: Scenario) -> np.ndarray:
    """``rho_a * g(y_a, y_p)`` for every MU ``p`` and BS ``a``."""
    d = np.maximum(distances(s), D_MIN)
    return s.powers[None, :] * d ** (-s.gamma)


def _interference_matrix(rx: np.ndarray, active: np.ndarray) -> np.ndarray:
    # sum over the other active BSs directly; subtracting from a total loses
    # precision when one BS dominates
    n_bs = rx.shape[1]
    others = (1.0 - np.eye(n_bs)) * active[:, None]  # [b, a]: b interferes on a
    return rx @ others


def rate_table(s: Scenario) -> RateTable:
    rx = received_power(s)
    interference = _interference_matrix(rx, np.ones(s.n_bs))
    sinrs = rx / (interference + s.noise)
    if not np.all(np.isfinite(sinrs)):
        raise ValueError("non-finite SINR: zero noise with no interferer")
    rates = np.log1p(sinrs)
    sinrs.setflags(write=False)
    rates.setflags(write=False)
    return RateTable(sinrs=sinrs, rates=rates)


def _check_assignment(s: Scenario, f: Assignment):
    if len(f) != s.n_mu:
        raise ValueError(f"assignment covers {len(f)} MUs, scenario has {s.n_mu}")
    if len(f) and (f.map.max() >= s.n_bs):
        raise ValueError("assignment references a BS outside the scenario")


def _evaluate_rates(inst_rates: np.ndarray, occ: np.ndarray, f: Assignment, sinrs=None) -> EvalResult:
    per_mu = inst_rates / occ[f.map]
    return EvalResult(
        per_mu_rate=per_mu,
        sum_rate=float(np.sum(per_mu)),
        sum_delay=float(np.sum(1.0 / per_mu)),
        occupancy=occ,
        active_set=occ > 0,
        sinrs=sinrs,
    )


def evaluate(s: Scenario, rt: RateTable, f: Assignment) -> EvalResult:
    """Evaluate ``f`` under the all-active interference model."""
    _check_assignment(s, f)
    occ = f.occupancy(s.n_bs)
    idx = np.arange(s.n_mu)
    return _evaluate_rates(rt.rates[idx, f.map], occ, f, rt.sinrs[idx, f.map])


def evaluate_deactivated(s: Scenario, f: Assignment) -> EvalResult:
    """Evaluate ``f`` with idle BSs silent.

    Each MU only sees interference from BSs serving at least one MU, other
    than its own.
    """
    _check_assignment(s, f)
    occ = f.occupancy(s.n_bs)
    active = (occ > 0).astype(float)
    rx = received_power(s)
    interference = _interference_matrix(rx, active)
    idx = np.arange(s.n_mu)
    sinr = rx[idx, f.map] / (interference[idx, f.map] + s.noise)
    return _evaluate_rates(np.log1p(sinr), occ, f, sinr)
