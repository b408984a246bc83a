"""Command-line front end.

Exit codes: 0 success, 2 configuration error, 3 solver error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from . import harness as hs
from . import scenario as sc
from .hst import build_hst, euclidean_metric, unit_metric
from .netmodel import rate_table
from .scenario import LinearNetParams, ScenarioSpec
from .solvers import (
    FORMULATIONS,
    PGDOptions,
    SolverError,
    heuristic,
    solve_c1d,
    solve_c1r,
    solve_l2d,
    solve_q1d,
    solve_q2d,
)

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER = 0, 2, 3


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _sidecar(out: str | None, cfg: dict):
    if out:
        Path(out + ".config.json").write_text(json.dumps(cfg, indent=2, sort_keys=True) + "\n")


def cmd_generate(args) -> int:
    spec = ScenarioSpec(kind=args.kind, n_bs=args.n_bs, mu_per_bs_ratio=args.ratio, arena_size=args.arena,
                        power_choices=tuple(args.powers), noise_dbw=args.noise_dbw, gamma=args.gamma,
                        seed=args.seed,
                        linear=LinearNetParams(args.d, args.delta, args.gamma, args.noise_dbw))
    _emit(sc.dumps(sc.make_scenario(spec)), args.out)
    return EXIT_OK


def _report_dict(rep) -> dict:
    return {
        "formulation": rep.formulation,
        "beta": rep.beta,
        "objective": rep.objective_value,
        "sum_rate": rep.sum_rate,
        "sum_delay": rep.sum_delay,
        "assignment": rep.rounded.tolist(),
        "occupancy": [int(k) for k in rep.eval.occupancy],
        "per_mu_rate": [float(r) for r in rep.eval.per_mu_rate],
        "fractional": None if rep.fractional is None else rep.fractional.tolist(),
        "seed": rep.seed,
        "iterations": rep.iterations,
    }


def cmd_solve(args) -> int:
    s = sc.load(args.scenario)
    rt = rate_table(s)
    form = args.formulation.upper()
    opts = PGDOptions(seed=args.seed)
    if form in ("Q2D", "L2D") and args.beta is None:
        raise hs.ConfigError(f"--beta is required for {form}")
    if form == "C1R":
        rep = solve_c1r(s, rt)
    elif form == "C1D":
        rep = solve_c1d(s, rt)
    elif form == "Q1D":
        rep = solve_q1d(s, rt, opts)
    elif form == "Q2D":
        rep = solve_q2d(s, rt, args.beta, opts)
    elif form == "L2D":
        metric = unit_metric(s.n_bs) if args.hst_metric == "unit" else euclidean_metric(s.bs_positions)
        rep = solve_l2d(s, rt, args.beta, build_hst(metric, args.hst_seed))
    else:
        rep = heuristic(s, rt, form)
    data = _report_dict(rep)
    if args.format == "json":
        _emit(json.dumps(data, indent=2) + "\n", args.out)
    else:
        row = {k: data[k] for k in ("formulation", "beta", "objective", "sum_rate", "sum_delay")}
        row["assignment"] = " ".join(map(str, data["assignment"]))
        row["occupancy"] = "|".join(map(str, data["occupancy"]))
        _emit(hs.to_csv([row], tuple(row)), args.out)
    return EXIT_OK


def _with_seed(cfg: hs.SweepConfig, seed):
    if seed is None:
        return cfg
    return hs.SweepConfig(**{**cfg.__dict__, "base_seed": seed,
                             "solver": PGDOptions(**{**asdict(cfg.solver), "seed": seed})})


def _write_rows(rows, columns, args, cfg):
    text = hs.to_csv(rows, columns) if args.format == "csv" else hs.to_json(rows)
    _emit(text, args.out)
    _sidecar(args.out, cfg.to_dict())


def cmd_compare(args) -> int:
    cfg = _with_seed(hs.load_config(args.config), args.seed)
    rows = hs.run_compare(cfg)
    columns = hs.COMPARE_COLUMNS + (("wall_time",) if cfg.record_timing else ())
    _write_rows(rows, columns, args, cfg)
    return EXIT_OK


def cmd_scaling(args) -> int:
    cfg = _with_seed(hs.load_config(args.config), args.seed)
    _write_rows(hs.run_scaling(cfg), hs.SCALING_COLUMNS, args, cfg)
    return EXIT_OK


def cmd_linear_example(args) -> int:
    params = LinearNetParams(args.d, args.delta, args.gamma, args.noise_dbw)
    tables = hs.run_linear_example(params)
    if args.format == "json":
        _emit(json.dumps(tables, indent=2) + "\n", args.out)
        return EXIT_OK
    if args.out:
        stem = Path(args.out)
        for name, rows in tables.items():
            path = stem.with_name(f"{stem.stem}.{name}{stem.suffix or '.csv'}")
            path.write_text(hs.to_csv(rows, hs.LINEAR_TABLE_COLUMNS[name]))
    else:
        for name, rows in tables.items():
            sys.stdout.write(f"# {name}\n")
            sys.stdout.write(hs.to_csv(rows, hs.LINEAR_TABLE_COLUMNS[name]))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None,
                        help="default: json for solve, csv otherwise")

    p = argparse.ArgumentParser(prog="cellassoc", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="write a scenario JSON file")
    g.add_argument("--kind", choices=("random", "constructed_4x4", "linear"), default="random")
    g.add_argument("--n-bs", type=int, default=5)
    g.add_argument("--ratio", type=int, default=5)
    g.add_argument("--arena", type=float, default=100.0)
    g.add_argument("--powers", type=float, nargs="+", default=list(sc.DEFAULT_POWERS))
    g.add_argument("--noise-dbw", type=float, default=-90.0)
    g.add_argument("--gamma", type=float, default=3.0)
    g.add_argument("--d", type=float, default=100.0)
    g.add_argument("--delta", type=float, default=0.5)
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", parents=[common], help="solve one formulation on a scenario file")
    s.add_argument("--formulation", required=True, type=str.lower,
                   choices=[f.lower() for f in FORMULATIONS])
    s.add_argument("--scenario", required=True)
    s.add_argument("--beta", type=float, default=None)
    s.add_argument("--hst-seed", type=int, default=0)
    s.add_argument("--hst-metric", choices=("unit", "euclidean"), default="unit")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("compare", parents=[common], help="compare formulations over a beta grid")
    c.add_argument("--config", required=True)
    c.set_defaults(func=cmd_compare)

    sc_ = sub.add_parser("scaling", parents=[common], help="random-network scaling study")
    sc_.add_argument("--config", required=True)
    sc_.set_defaults(func=cmd_scaling)

    le = sub.add_parser("linear-example", parents=[common], help="two-BS deactivation example")
    le.add_argument("--gamma", type=float, default=3.0)
    le.add_argument("--d", type=float, default=100.0)
    le.add_argument("--noise-dbw", type=float, default=-90.0)
    le.add_argument("--delta", type=float, default=0.5)
    le.set_defaults(func=cmd_linear_example)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "json" if args.command == "solve" else "csv"
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:  # ConfigError, ScenarioError, InstanceTooLarge
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SolverError, RuntimeError) as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
