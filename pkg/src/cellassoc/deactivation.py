"""Two-BS linear network with idle-BS deactivation.

BSs ``a`` and ``b`` sit at ``-d`` and ``+d``; MUs ``p`` and ``q`` at ``-delta*d``
and ``+delta*d``. Up to symmetry only two associations matter:

* ``f1``: both MUs on BS ``a``, so BS ``b`` is idle and silent;
* ``f2``: one MU per BS, both BSs active.

With ``A`` and ``B`` the interference-free SINRs of the near and far MU under
``f1`` and ``C`` the (common) SINR under ``f2``, the sum-rate comparison is
``sqrt((1+A)(1+B)) / (1+C)**2`` and the sum-delay comparison is
``ln(1+A) ln(1+B) / (ln(1+C) ln((1+A)(1+B)))``; ``f1`` wins when the ratio
exceeds 1. An exact tie goes to ``f2``.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .netmodel import Assignment, Scenario, dbw_to_watts, evaluate_deactivated
from .scenario import LinearNetParams
from .solvers.combinatorial import ENUMERATION_CAP, iter_assignment_blocks
from .solvers.report import SolveReport

# lexicographic order of the four 2x2 assignments (MU p, MU q) -> (BS, BS)
LINEAR_ASSIGNMENTS = {(0, 0): "f1", (0, 1): "f2", (1, 0): "f3", (1, 1): "f4"}


@dataclass(frozen=True)
class ThresholdReport:
    lhs: float
    winner: str
    components: tuple  # (A, B, C)


def sinr_terms(p: LinearNetParams) -> tuple[float, float, float]:
    nd = dbw_to_watts(p.noise_dbw) * p.d**p.gamma
    near = (1.0 - p.delta) ** -p.gamma
    far = (1.0 + p.delta) ** -p.gamma
    return near / nd, far / nd, near / (far + nd)


def _winner(lhs: float) -> str:
    return "f1" if lhs > 1.0 else "f2"


def rate_threshold(p: LinearNetParams) -> ThresholdReport:
    a, b, c = sinr_terms(p)
    # log domain keeps (1+A)(1+B) from overflowing at tiny noise
    log_lhs = 0.5 * (math.log1p(a) + math.log1p(b)) - 2.0 * math.log1p(c)
    lhs = math.exp(log_lhs) if log_lhs < 700 else math.inf
    return ThresholdReport(lhs, "f1" if log_lhs > 0 else "f2", (a, b, c))


def delay_threshold(p: LinearNetParams) -> ThresholdReport:
    a, b, c = sinr_terms(p)
    la, lb, lc = math.log1p(a), math.log1p(b), math.log1p(c)
    lhs = (la * lb) / (lc * (la + lb))
    return ThresholdReport(lhs, _winner(lhs), (a, b, c))


CRITERIA = {"rate": rate_threshold, "delay": delay_threshold}


@dataclass(frozen=True)
class BoundaryPoint:
    criterion: str
    noise_dbw: float
    delta: float | None  # None when no crossing in the grid range
    lhs: float | None


def decision_boundary(gamma: float, d: float, delta_grid, noise_grid_dbw, xtol: float = 1e-12) -> list[BoundaryPoint]:
    """Locate ``lhs = 1`` crossings in ``delta`` for each noise level and criterion.

    Sign changes of ``lhs - 1`` between consecutive grid points are refined by
    bracketing root search; every crossing found is reported.
    """
    delta_grid = np.asarray(delta_grid, dtype=float)
    noise_grid = np.asarray(noise_grid_dbw, dtype=float)
    if delta_grid.size == 0 or noise_grid.size == 0:
        raise ValueError("grids must be non-empty")
    if np.any(np.diff(delta_grid) <= 0) or np.any(np.diff(noise_grid) <= 0):
        raise ValueError("grids must be sorted ascending")
    out = []
    for name, rule in CRITERIA.items():
        for n_dbw in noise_grid:
            def g(delta):
                lhs = rule(LinearNetParams(d, delta, gamma, n_dbw)).lhs
                return math.log(lhs)

            vals = [g(x) for x in delta_grid]
            found = False
            for k in range(len(delta_grid) - 1):
                lo, hi = vals[k], vals[k + 1]
                if lo == 0.0:
                    root = delta_grid[k]
                elif lo * hi < 0:
                    root = brentq(g, delta_grid[k], delta_grid[k + 1], xtol=xtol)
                else:
                    continue
                found = True
                lhs = rule(LinearNetParams(d, root, gamma, n_dbw)).lhs
                out.append(BoundaryPoint(name, float(n_dbw), float(root), lhs))
            if vals[-1] == 0.0:
                found = True
                out.append(BoundaryPoint(name, float(n_dbw), float(delta_grid[-1]), 1.0))
            if not found:
                out.append(BoundaryPoint(name, float(n_dbw), None, None))
    return out


def brute_force_deactivated(s: Scenario, objective: str, cap: int = ENUMERATION_CAP) -> SolveReport:
    """Best association when idle BSs are silent, by full enumeration.

    ``objective`` is ``"RATE"`` (maximize sum rate) or ``"DELAY"`` (minimize
    sum delay). Ties keep the lexicographically first assignment.
    """
    objective = objective.upper()
    if objective not in ("RATE", "DELAY"):
        raise ValueError(f"objective must be RATE or DELAY, got {objective!r}")
    t0 = time.perf_counter()
    best_val, best_f, best_ev = None, None, None
    count = 0
    for _, block in iter_assignment_blocks(s.n_bs, s.n_mu, cap):
        for row in block:
            f = Assignment(row, n_bs=s.n_bs)
            ev = evaluate_deactivated(s, f)
            val = ev.sum_rate if objective == "RATE" else -ev.sum_delay
            count += 1
            if best_val is None or val > best_val:
                best_val, best_f, best_ev = val, f, ev
    tag = "C1R-DEACT" if objective == "RATE" else "C1D-DEACT"
    value = best_ev.sum_rate if objective == "RATE" else best_ev.sum_delay
    return SolveReport(tag, best_f, value, best_ev, iterations=count, wall_time=time.perf_counter() - t0)


def linear_label(f: Assignment) -> str:
    return LINEAR_ASSIGNMENTS[tuple(f.tolist())]


def brute_force_linear_winner(s: Scenario, objective: str) -> str:
    """Brute-force winner on a linear network, folded onto ``{f1, f2}``.

    ``f4`` mirrors ``f1``. ``f3`` is dominated by ``f2`` and never expected.
    """
    label = linear_label(brute_force_deactivated(s, objective).rounded)
    if label == "f3":
        raise AssertionError("f3 can never be optimal on the linear network")
    return "f1" if label in ("f1", "f4") else "f2"


def activation_penalty(s: Scenario, f: Assignment, weight=lambda pa, pb: pa * pb) -> float:
    """Score ``sum_{a,b} w(rho_a, rho_b) d(a, b) z_a z_b`` for a given association.

    ``z_a`` marks the BSs serving at least one MU. Evaluation only; nothing
    in this package optimizes this term.
    """
    z = f.occupancy(s.n_bs) > 0
    diff = s.bs_positions[:, None, :] - s.bs_positions[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    total = 0.0
    for a in np.flatnonzero(z):
        for b in np.flatnonzero(z):
            total += weight(s.powers[a], s.powers[b]) * dist[a, b]
    return float(total)


__all__ = [
    "LinearNetParams",
    "ThresholdReport",
    "BoundaryPoint",
    "sinr_terms",
    "rate_threshold",
    "delay_threshold",
    "decision_boundary",
    "brute_force_deactivated",
    "brute_force_linear_winner",
    "linear_label",
    "activation_penalty",
]
