"""Relaxed quadratic delay formulations and their projected-gradient solvers.

Both objectives live on the product of per-MU probability simplices.

* Q1D, the relaxed sum delay ``sum_a (sum_p c_pa x_pa) (sum_q x_qa)`` with
  ``c = 1/r``. Indefinite in general, so it is solved from several starts.
* Q2D, the split objective ``(1-beta) sum c_pa x_pa + beta sum_a kappa_a**2``
  with fractional occupancy ``kappa_a = sum_p x_pa``. Convex.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ..netmodel import RateTable, Scenario, evaluate
from .report import SolveReport, check_fractional, round_argmax

ARMIJO_SLOPE = 1e-4
ARMIJO_SHRINK = 0.5


@dataclass(frozen=True)
class PGDOptions:
    starts: int = 16
    max_iter: int = 5000
    tol: float = 1e-8
    seed: int | None = 0


def q_objective(kind: str, rt: RateTable, beta, x) -> float:
    x = check_fractional(x)
    c = rt.costs
    if x.shape != c.shape:
        raise ValueError(f"x has shape {x.shape}, rate table has {c.shape}")
    return _objective(kind, c, beta)(x)


def q_gradient(kind: str, rt: RateTable, beta, x) -> np.ndarray:
    return _gradient(kind, rt.costs, beta)(np.asarray(x, dtype=float))


def _objective(kind, c, beta):
    if kind == "Q1D":
        return lambda x: float(np.sum(np.sum(c * x, axis=0) * np.sum(x, axis=0)))
    if kind == "Q2D":
        _check_beta(beta)
        return lambda x: float((1.0 - beta) * np.sum(c * x) + beta * np.sum(np.sum(x, axis=0) ** 2))
    raise ValueError(f"unknown quadratic formulation {kind!r}")


def _gradient(kind, c, beta):
    if kind == "Q1D":
        # d/dx_pa of sum_a w_a k_a, w_a = sum_p c_pa x_pa, k_a = sum_q x_qa
        return lambda x: c * np.sum(x, axis=0)[None, :] + np.sum(c * x, axis=0)[None, :]
    if kind == "Q2D":
        _check_beta(beta)
        return lambda x: (1.0 - beta) * c + 2.0 * beta * np.sum(x, axis=0)[None, :]
    raise ValueError(f"unknown quadratic formulation {kind!r}")


def _check_beta(beta):
    if beta is None or not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta!r}")


def simplex_project(v) -> np.ndarray:
    """Euclidean projection of ``v`` onto the probability simplex."""
    return project_rows(np.asarray(v, dtype=float)[None, :])[0]


def project_rows(v: np.ndarray) -> np.ndarray:
    """Project each row of ``v`` onto the probability simplex (sort and threshold)."""
    v = np.asarray(v, dtype=float)
    n = v.shape[1]
    u = -np.sort(-v, axis=1)
    css = np.cumsum(u, axis=1) - 1.0
    k = np.arange(1, n + 1)
    cond = u - css / k > 0
    rho = n - 1 - np.argmax(cond[:, ::-1], axis=1)
    theta = css[np.arange(len(v)), rho] / (rho + 1)
    return np.maximum(v - theta[:, None], 0.0)


def projected_gradient(f, grad, x0, max_iter=5000, tol=1e-8, trace=None):
    """Projected gradient with Armijo backtracking along the projection arc.

    Stops when an accepted step decreases the objective by less than ``tol``
    or no step size gives sufficient decrease. Returns ``(x, f(x), iterations)``.
    """
    x = project_rows(x0)
    fx = f(x)
    if trace is not None:
        trace.append((x.copy(), fx))
    step = 1.0
    it = 0
    for it in range(1, max_iter + 1):
        g = grad(x)
        while True:
            xn = project_rows(x - step * g)
            fn = f(xn)
            if fn <= fx + ARMIJO_SLOPE * float(np.sum(g * (xn - x))):
                break
            step *= ARMIJO_SHRINK
            if step < 1e-20:
                return x, fx, it
        decrease = fx - fn
        x, fx = xn, fn
        if trace is not None:
            trace.append((x.copy(), fx))
        if decrease < tol:
            break
        step *= 2.0
    return x, fx, it


def solve_q1d(s: Scenario, rt: RateTable, opts: PGDOptions = PGDOptions()) -> SolveReport:
    """Multi-start local minimization of the relaxed sum delay."""
    t0 = time.perf_counter()
    c = rt.costs
    f, g = _objective("Q1D", c, None), _gradient("Q1D", c, None)
    rng = np.random.default_rng(opts.seed)
    best = None
    total_iter = 0
    for _ in range(max(1, opts.starts)):
        x0 = rng.dirichlet(np.ones(s.n_bs), size=s.n_mu)
        x, fx, it = projected_gradient(f, g, x0, opts.max_iter, opts.tol)
        total_iter += it
        if best is None or fx < best[1]:
            best = (x, fx)
    x, fx = best
    rounded = round_argmax(x)
    return SolveReport("Q1D", rounded, fx, evaluate(s, rt, rounded), fractional=x,
                       seed=opts.seed, iterations=total_iter, wall_time=time.perf_counter() - t0)


def solve_q2d(s: Scenario, rt: RateTable, beta: float, opts: PGDOptions = PGDOptions()) -> SolveReport:
    """Minimize the convex split objective from the uniform start."""
    _check_beta(beta)
    t0 = time.perf_counter()
    c = rt.costs
    f, g = _objective("Q2D", c, beta), _gradient("Q2D", c, beta)
    x0 = np.full((s.n_mu, s.n_bs), 1.0 / s.n_bs)
    x, fx, it = projected_gradient(f, g, x0, opts.max_iter, opts.tol)
    rounded = round_argmax(x)
    return SolveReport("Q2D", rounded, fx, evaluate(s, rt, rounded), beta=beta, fractional=x,
                       seed=opts.seed, iterations=it, wall_time=time.perf_counter() - t0)


@dataclass(frozen=True)
class ConvexityProbe:
    violations_found: int
    trials: int
    witness: tuple | None = None


def convexity_probe(kind: str, rt: RateTable, beta=None, trials: int = 1000, seed=None,
                    atol: float = 1e-10) -> ConvexityProbe:
    """Test midpoint convexity on random feasible segments."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    c = rt.costs
    f = _objective(kind, c, beta)
    rng = np.random.default_rng(seed)
    n_mu, n_bs = c.shape
    violations, witness = 0, None
    for _ in range(trials):
        x1 = rng.dirichlet(np.ones(n_bs), size=n_mu)
        x2 = rng.dirichlet(np.ones(n_bs), size=n_mu)
        if f(0.5 * (x1 + x2)) > 0.5 * (f(x1) + f(x2)) + atol:
            violations += 1
            if witness is None:
                witness = (x1, x2)
    return ConvexityProbe(violations, trials, witness)
