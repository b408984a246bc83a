"""Experiment runners producing plot-ready tables.

Each runner returns a list of row dicts whose keys follow a fixed column order
(see the ``*_COLUMNS`` constants). Rows are produced in config order, so the
same config always yields the same table.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import scenario as sc
from .deactivation import (
    brute_force_linear_winner,
    decision_boundary,
    delay_threshold,
    rate_threshold,
)
from .hst import build_hst, euclidean_metric, unit_metric
from .netmodel import Scenario, rate_table
from .scenario import LinearNetParams, ScenarioSpec
from .solvers import (
    ENUMERATION_CAP,
    FORMULATIONS,
    PGDOptions,
    heuristic,
    solve_c1d,
    solve_c1r,
    solve_l2d,
    solve_q1d,
    solve_q2d,
)

BETA_GRID = tuple(round(0.05 * k, 2) for k in range(21))
BETA_FREE = ("C1R", "C1D", "Q1D", "MINDIST", "MAXSINR")

COMPARE_COLUMNS = (
    "replication", "scenario_seed", "formulation", "beta", "hst_seed", "status",
    "objective", "sum_rate", "sum_delay", "occupancy", "assignment", "error",
)
SCALING_COLUMNS = (
    "n_bs", "n_mu", "replication", "scenario_seed",
    "q1d_delay_per_mu", "q2d_delay_per_mu", "best_beta",
    "mindist_delay_per_mu", "maxsinr_delay_per_mu",
)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    scenario_file: str | None = None
    generator: ScenarioSpec | None = None
    formulations: tuple = FORMULATIONS
    beta_grid: tuple = BETA_GRID
    hst_seeds: tuple = (0,)
    hst_metric: str = "unit"
    solver: PGDOptions = field(default_factory=PGDOptions)
    replications: int = 1
    base_seed: int = 0
    n_bs_grid: tuple = tuple(range(1, 21))
    record_timing: bool = False

    def __post_init__(self):
        grid = tuple(float(b) for b in self.beta_grid)
        if any(not 0.0 <= b <= 1.0 for b in grid):
            raise ConfigError("beta_grid: values must lie in [0, 1]")
        if list(grid) != sorted(set(grid)):
            raise ConfigError("beta_grid: must be sorted and unique")
        object.__setattr__(self, "beta_grid", grid)
        forms = tuple(f.upper() for f in self.formulations)
        unknown = [f for f in forms if f not in FORMULATIONS]
        if unknown:
            raise ConfigError(f"formulations: unknown formulation {unknown[0]!r}")
        object.__setattr__(self, "formulations", forms)
        if self.hst_metric not in ("unit", "euclidean"):
            raise ConfigError("hst_metric: expected 'unit' or 'euclidean'")
        if self.replications < 1:
            raise ConfigError("replications: must be >= 1")
        if self.scenario_file is not None and self.generator is not None:
            raise ConfigError("scenario: give either a file or a generator, not both")

    @classmethod
    def from_dict(cls, data: dict, base_dir: Path | None = None) -> "SweepConfig":
        data = dict(data)
        kw = {}
        src = data.pop("scenario", None)
        if src is not None:
            if not isinstance(src, dict) or len(src) != 1 or not ({"file", "generator"} & set(src)):
                raise ConfigError("scenario: expected {\"file\": path} or {\"generator\": {...}}")
            if "file" in src:
                path = Path(src["file"])
                if base_dir is not None and not path.is_absolute():
                    path = base_dir / path
                kw["scenario_file"] = str(path)
            else:
                kw["generator"] = _spec(src["generator"], "scenario.generator")
        if "generator" in data:
            kw["generator"] = _spec(data.pop("generator"), "generator")
        if "solver" in data:
            try:
                kw["solver"] = PGDOptions(**data.pop("solver"))
            except TypeError as exc:
                raise ConfigError(f"solver: {exc}") from exc
        for key in ("formulations", "beta_grid", "hst_seeds", "n_bs_grid"):
            if key in data:
                kw[key] = tuple(data.pop(key))
        for key in ("hst_metric", "replications", "base_seed", "record_timing"):
            if key in data:
                kw[key] = data.pop(key)
        if data:
            raise ConfigError(f"{sorted(data)[0]}: unknown config field")
        return cls(**kw)

    def to_dict(self) -> dict:
        out = {
            "formulations": list(self.formulations),
            "beta_grid": list(self.beta_grid),
            "hst_seeds": list(self.hst_seeds),
            "hst_metric": self.hst_metric,
            "solver": asdict(self.solver),
            "replications": self.replications,
            "base_seed": self.base_seed,
            "n_bs_grid": list(self.n_bs_grid),
            "record_timing": self.record_timing,
        }
        if self.scenario_file is not None:
            out["scenario"] = {"file": self.scenario_file}
        if self.generator is not None:
            gen = asdict(self.generator)
            gen["power_choices"] = list(gen["power_choices"])
            out["scenario"] = {"generator": gen}
        return out


def _spec(data, where: str) -> ScenarioSpec:
    try:
        return ScenarioSpec.from_dict(data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}.{exc}") from exc


def load_config(path) -> SweepConfig:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return SweepConfig.from_dict(data, base_dir=path.parent)


def derived_seed(*parts: int) -> int:
    """Deterministic 32-bit seed from a tuple of integers."""
    return int(np.random.SeedSequence([int(p) for p in parts]).generate_state(1)[0])


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def to_csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(row.get(c)) for c in columns])
    return buf.getvalue()


def to_json(rows: list[dict]) -> str:
    return json.dumps(rows, indent=2) + "\n"


def _hst(s: Scenario, metric: str, seed):
    m = unit_metric(s.n_bs) if metric == "unit" else euclidean_metric(s.bs_positions)
    return build_hst(m, seed)


def _compare_scenarios(cfg: SweepConfig):
    for rep in range(cfg.replications):
        if cfg.scenario_file is not None:
            yield rep, sc.load(cfg.scenario_file)
        else:
            spec = cfg.generator or ScenarioSpec(kind="CONSTRUCTED_4X4")
            if spec.kind == "RANDOM":
                spec = ScenarioSpec(**{**spec.__dict__, "seed": cfg.base_seed + rep})
            yield rep, sc.make_scenario(spec)


def _report_row(rep, s, formulation, beta, hst_seed, report, timing):
    row = dict(
        replication=rep, scenario_seed=s.seed, formulation=formulation, beta=beta, hst_seed=hst_seed,
        status="ok", objective=report.objective_value, sum_rate=report.sum_rate,
        sum_delay=report.sum_delay,
        occupancy="|".join(str(int(k)) for k in report.eval.occupancy),
        assignment=" ".join(str(a) for a in report.rounded.tolist()),
    )
    if timing:
        row["wall_time"] = report.wall_time
    return row


def run_compare(cfg: SweepConfig) -> list[dict]:
    """One row per (replication, formulation, beta[, hst seed])."""
    rows = []
    if not cfg.formulations:
        return rows
    for rep, s in _compare_scenarios(cfg):
        if {"C1R", "C1D"} & set(cfg.formulations) and s.n_bs**s.n_mu > ENUMERATION_CAP:
            raise ConfigError(
                f"C1R/C1D requested on {s.n_bs} BSs x {s.n_mu} MUs, beyond the enumeration cap"
            )
        rt = rate_table(s)
        opts = PGDOptions(cfg.solver.starts, cfg.solver.max_iter, cfg.solver.tol,
                          derived_seed(cfg.solver.seed or 0, rep))
        cache = {}
        for form in cfg.formulations:
            for beta in cfg.beta_grid:
                seeds = cfg.hst_seeds if form == "L2D" else (None,)
                for hst_seed in seeds:
                    key = (form, None if form in BETA_FREE else beta, hst_seed)
                    try:
                        if key not in cache:
                            cache[key] = _solve_one(form, s, rt, beta, hst_seed, opts, cfg.hst_metric)
                        rows.append(_report_row(rep, s, form, beta, hst_seed, cache[key], cfg.record_timing))
                    except Exception as exc:  # recorded per row; the run continues
                        rows.append(dict(replication=rep, scenario_seed=s.seed, formulation=form, beta=beta,
                                         hst_seed=hst_seed, status="error", error=f"{type(exc).__name__}: {exc}"))
    return rows


def _solve_one(form, s, rt, beta, hst_seed, opts, metric):
    if form == "C1R":
        return solve_c1r(s, rt)
    if form == "C1D":
        return solve_c1d(s, rt)
    if form == "Q1D":
        return solve_q1d(s, rt, opts)
    if form == "Q2D":
        return solve_q2d(s, rt, beta, opts)
    if form == "L2D":
        return solve_l2d(s, rt, beta, _hst(s, metric, hst_seed))
    return heuristic(s, rt, form)


def best_beta_q2d(s: Scenario, rt, beta_grid, opts: PGDOptions):
    """Q2D report with the smallest rounded sum delay over ``beta_grid``; ties to smaller beta."""
    best = None
    for beta in beta_grid:
        rep = solve_q2d(s, rt, beta, opts)
        if best is None or rep.sum_delay < best.sum_delay:
            best = rep
    return best


def run_scaling(cfg: SweepConfig) -> list[dict]:
    """Per-MU sum delay of Q1D, best-beta Q2D and the two greedy baselines on random networks."""
    spec = cfg.generator
    if spec is None or spec.kind != "RANDOM":
        raise ConfigError("scaling needs a RANDOM scenario generator")
    rows = []
    for n_bs in cfg.n_bs_grid:
        for rep in range(cfg.replications):
            seed = derived_seed(cfg.base_seed, n_bs, rep)
            s = sc.random_scenario(ScenarioSpec(**{**spec.__dict__, "n_bs": int(n_bs), "seed": seed}))
            rt = rate_table(s)
            opts = PGDOptions(cfg.solver.starts, cfg.solver.max_iter, cfg.solver.tol, seed)
            q1 = solve_q1d(s, rt, opts)
            q2 = best_beta_q2d(s, rt, cfg.beta_grid, opts)
            md = heuristic(s, rt, "MINDIST")
            ms = heuristic(s, rt, "MAXSINR")
            n_mu = s.n_mu
            rows.append(dict(
                n_bs=int(n_bs), n_mu=n_mu, replication=rep, scenario_seed=seed,
                q1d_delay_per_mu=q1.sum_delay / n_mu, q2d_delay_per_mu=q2.sum_delay / n_mu,
                best_beta=q2.beta, mindist_delay_per_mu=md.sum_delay / n_mu,
                maxsinr_delay_per_mu=ms.sum_delay / n_mu,
            ))
    return rows


def summarize_scaling(rows: list[dict]) -> list[dict]:
    """Mean of every per-MU delay column (and of best_beta) for each network size."""
    out = []
    for n_bs in sorted({r["n_bs"] for r in rows}):
        group = [r for r in rows if r["n_bs"] == n_bs]
        summary = {"n_bs": n_bs, "replications": len(group)}
        for col in ("q1d_delay_per_mu", "q2d_delay_per_mu", "mindist_delay_per_mu",
                    "maxsinr_delay_per_mu", "best_beta"):
            summary[col] = float(np.mean([r[col] for r in group]))
        out.append(summary)
    return out


DELTA_GRID = tuple(round(0.05 * k, 2) for k in range(1, 20))
NOISE_GRID_DBW = tuple(float(n) for n in range(-120, -59, 5))
LINEAR_COLUMNS = (
    "delta", "noise_dbw", "rate_lhs", "rate_winner", "rate_bruteforce",
    "delay_lhs", "delay_winner", "delay_bruteforce",
)
BOUNDARY_COLUMNS = ("criterion", "noise_dbw", "delta_star", "lhs")


def _linear_row(p: LinearNetParams) -> dict:
    s = sc.linear_scenario(p)
    rate, delay = rate_threshold(p), delay_threshold(p)
    return dict(
        delta=p.delta, noise_dbw=p.noise_dbw,
        rate_lhs=rate.lhs, rate_winner=rate.winner, rate_bruteforce=brute_force_linear_winner(s, "RATE"),
        delay_lhs=delay.lhs, delay_winner=delay.winner, delay_bruteforce=brute_force_linear_winner(s, "DELAY"),
    )


def run_linear_example(params: LinearNetParams = LinearNetParams(),
                       delta_grid=DELTA_GRID, noise_grid_dbw=NOISE_GRID_DBW) -> dict[str, list[dict]]:
    """Threshold sweeps, the full (delta, N) grid, and decision boundaries.

    ``delta_sweep`` fixes the noise at ``params.noise_dbw``; ``noise_sweep``
    fixes ``params.delta``. Both criteria appear in every sweep row next to
    the brute-force winners.
    """
    g, d = params.gamma, params.d
    delta_sweep = [_linear_row(LinearNetParams(d, float(x), g, params.noise_dbw)) for x in delta_grid]
    noise_sweep = [_linear_row(LinearNetParams(d, params.delta, g, float(n))) for n in noise_grid_dbw]
    grid = [_linear_row(LinearNetParams(d, float(x), g, float(n)))
            for n in noise_grid_dbw for x in delta_grid]
    boundary = [dict(criterion=b.criterion, noise_dbw=b.noise_dbw, delta_star=b.delta, lhs=b.lhs)
                for b in decision_boundary(g, d, delta_grid, noise_grid_dbw)]
    return {"delta_sweep": delta_sweep, "noise_sweep": noise_sweep, "grid": grid, "boundary": boundary}


LINEAR_TABLE_COLUMNS = {
    "delta_sweep": LINEAR_COLUMNS,
    "noise_sweep": LINEAR_COLUMNS,
    "grid": LINEAR_COLUMNS,
    "boundary": BOUNDARY_COLUMNS,
}
