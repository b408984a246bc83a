"""Problem instances: random networks, the constructed 4x4 topology, the
two-BS linear network, and JSON persistence."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .netmodel import Scenario, dbw_to_watts

PRNG_NAME = "numpy.PCG64"
DEFAULT_POWERS = (50.0, 125.0, 250.0)

# stream ids for independent draws from the same seed
_STREAM_BS, _STREAM_MU, _STREAM_POWER = 0, 1, 2


class ScenarioError(ValueError):
    """Malformed or invalid scenario data; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def rng_stream(seed: int | None, stream: int) -> np.random.Generator:
    """Independent PCG64 stream ``stream`` derived from ``seed``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream,))))


@dataclass(frozen=True)
class LinearNetParams:
    d: float = 100.0
    delta: float = 0.5
    gamma: float = 3.0
    noise_dbw: float = -90.0

    def __post_init__(self):
        if not self.d > 0:
            raise ValueError("d must be positive")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if not self.gamma >= 2:
            raise ValueError("gamma must be >= 2")


@dataclass(frozen=True)
class ScenarioSpec:
    kind: str = "RANDOM"  # RANDOM | CONSTRUCTED_4X4 | LINEAR
    n_bs: int = 5
    mu_per_bs_ratio: int = 5
    arena_size: float = 100.0
    power_choices: tuple = DEFAULT_POWERS
    noise_dbw: float = -90.0
    gamma: float = 3.0
    seed: int | None = 0
    linear: LinearNetParams = field(default_factory=LinearNetParams)

    def __post_init__(self):
        kind = self.kind.upper()
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "power_choices", tuple(float(p) for p in self.power_choices))
        if kind not in ("RANDOM", "CONSTRUCTED_4X4", "LINEAR"):
            raise ValueError(f"kind: unknown scenario kind {self.kind!r}")
        if kind == "RANDOM":
            if self.n_bs < 1:
                raise ValueError("n_bs: must be >= 1")
            if self.mu_per_bs_ratio < 1:
                raise ValueError("mu_per_bs_ratio: must be >= 1")
            if not self.power_choices:
                raise ValueError("power_choices: must be non-empty")
            if not self.arena_size > 0:
                raise ValueError("arena_size: must be positive")

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioSpec":
        data = dict(data)
        if "linear" in data and isinstance(data["linear"], dict):
            data["linear"] = LinearNetParams(**data["linear"])
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ScenarioError(sorted(unknown)[0], "unknown scenario spec field")
        return cls(**data)


def random_scenario(spec: ScenarioSpec) -> Scenario:
    """Uniform BS/MU drop over a square arena with powers drawn from ``power_choices``."""
    if spec.kind != "RANDOM":
        raise ValueError("random_scenario needs a RANDOM spec")
    side = spec.arena_size
    n_mu = spec.n_bs * spec.mu_per_bs_ratio
    bs = rng_stream(spec.seed, _STREAM_BS).uniform(0.0, side, size=(spec.n_bs, 2))
    mu = rng_stream(spec.seed, _STREAM_MU).uniform(0.0, side, size=(n_mu, 2))
    powers = rng_stream(spec.seed, _STREAM_POWER).choice(np.array(spec.power_choices), size=spec.n_bs)
    return Scenario(bs, mu, powers, dbw_to_watts(spec.noise_dbw), spec.gamma,
                    arena=(0.0, 0.0, side, side), seed=spec.seed, prng=PRNG_NAME)


# BS 0 has one MU right next to it and three more MUs nearer to it than to
# any other BS. Nearest-BS association piles all four onto BS 0; spreading
# them one per BS costs little instantaneous rate for MUs 1 and 2, while MU 3
# is best kept on BS 0 when minimizing sum delay.
CONSTRUCTED_BS = ((30.0, 50.0), (60.0, 80.0), (60.0, 20.0), (80.0, 50.0))
CONSTRUCTED_MU = ((27.0, 50.0), (44.0, 65.0), (44.0, 35.0), (45.0, 50.0))
CONSTRUCTED_NOISE_DBW = -90.0


def constructed_topology() -> Scenario:
    """The fixed 4 BS / 4 MU layout on a 100 m x 100 m arena (unit power, gamma 3)."""
    return Scenario(CONSTRUCTED_BS, CONSTRUCTED_MU, np.ones(4), dbw_to_watts(CONSTRUCTED_NOISE_DBW),
                    3.0, arena=(0.0, 0.0, 100.0, 100.0))


def linear_scenario(p: LinearNetParams = LinearNetParams()) -> Scenario:
    """BSs at ``-d`` and ``+d`` on the x-axis, MUs at ``-delta*d`` and ``+delta*d``."""
    d = p.d
    return Scenario([(-d, 0.0), (d, 0.0)], [(-p.delta * d, 0.0), (p.delta * d, 0.0)], np.ones(2),
                    dbw_to_watts(p.noise_dbw), p.gamma, arena=(-d, -d, d, d))


def make_scenario(spec: ScenarioSpec) -> Scenario:
    if spec.kind == "RANDOM":
        return random_scenario(spec)
    if spec.kind == "CONSTRUCTED_4X4":
        return constructed_topology()
    return linear_scenario(spec.linear)


def to_dict(s: Scenario) -> dict:
    xmin, ymin, xmax, ymax = s.arena
    arena = [xmax, ymax] if xmin == 0.0 and ymin == 0.0 else [xmin, ymin, xmax, ymax]
    return {
        "arena_m": arena,
        "gamma": s.gamma,
        "noise_dbw": s.noise_dbw,
        "noise_w": s.noise,
        "bs": [{"pos_m": [float(x), float(y)], "power": float(pw)}
               for (x, y), pw in zip(s.bs_positions, s.powers)],
        "mu": [{"pos_m": [float(x), float(y)]} for x, y in s.mu_positions],
        "prng": s.prng,
        "seed": s.seed,
    }


def _require(obj: dict, key: str, path: str):
    if not isinstance(obj, dict):
        raise ScenarioError(path or "$", "expected an object")
    if key not in obj:
        raise ScenarioError(f"{path}.{key}" if path else key, "missing required field")
    return obj[key]


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(path, f"expected a number, got {value!r}")
    return float(value)


def _point(value, path: str) -> tuple:
    if not isinstance(value, list) or len(value) != 2:
        raise ScenarioError(path, "expected [x, y]")
    return (_number(value[0], f"{path}[0]"), _number(value[1], f"{path}[1]"))


def from_dict(data: dict) -> Scenario:
    arena = _require(data, "arena_m", "")
    if not isinstance(arena, list) or len(arena) not in (2, 4):
        raise ScenarioError("arena_m", "expected [w, h] or [xmin, ymin, xmax, ymax]")
    arena = [_number(v, f"arena_m[{i}]") for i, v in enumerate(arena)]
    if len(arena) == 2:
        arena = [0.0, 0.0, *arena]
    gamma = _number(_require(data, "gamma", ""), "gamma")
    if "noise_w" in data:
        noise = _number(data["noise_w"], "noise_w")
    else:
        noise = dbw_to_watts(_number(_require(data, "noise_dbw", ""), "noise_dbw"))
    bs_list = _require(data, "bs", "")
    mu_list = _require(data, "mu", "")
    if not isinstance(bs_list, list) or not bs_list:
        raise ScenarioError("bs", "expected a non-empty list")
    if not isinstance(mu_list, list) or not mu_list:
        raise ScenarioError("mu", "expected a non-empty list")
    bs_pos, powers = [], []
    for i, bs in enumerate(bs_list):
        bs_pos.append(_point(_require(bs, "pos_m", f"bs[{i}]"), f"bs[{i}].pos_m"))
        pw = _number(_require(bs, "power", f"bs[{i}]"), f"bs[{i}].power")
        if not pw > 0:
            raise ScenarioError(f"bs[{i}].power", "must be strictly positive")
        powers.append(pw)
    mu_pos = [_point(_require(mu, "pos_m", f"mu[{i}]"), f"mu[{i}].pos_m") for i, mu in enumerate(mu_list)]
    seed = data.get("seed")
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
        raise ScenarioError("seed", "expected an integer or null")
    try:
        return Scenario(bs_pos, mu_pos, powers, noise, gamma, arena=tuple(arena), seed=seed,
                        prng=data.get("prng"))
    except ValueError as exc:
        field_name = str(exc).split(":", 1)[0]
        raise ScenarioError(field_name, str(exc).split(":", 1)[-1].strip()) from exc


def dumps(s: Scenario) -> str:
    # json writes floats with repr, the shortest string that round-trips exactly
    return json.dumps(to_dict(s), indent=2) + "\n"


def loads(text: str) -> Scenario:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError("$", f"invalid JSON ({exc})") from exc
    return from_dict(data)


def save(s: Scenario, path) -> None:
    Path(path).write_text(dumps(s))


def load(path) -> Scenario:
    return loads(Path(path).read_text())
