"""Exact solvers by exhaustive enumeration of all ``|B|**|U|`` assignments."""
from __future__ import annotations

import time

import numpy as np

from ..netmodel import Assignment, RateTable, Scenario, evaluate
from ..hst import LabelMetric, unit_metric
from .report import SolveReport

ENUMERATION_CAP = 10**7
_CHUNK = 1 << 16


class InstanceTooLarge(ValueError):
    pass


def check_cap(n_bs: int, n_mu: int, cap: int = ENUMERATION_CAP) -> int:
    total = n_bs**n_mu
    if total > cap:
        raise InstanceTooLarge(
            f"instance too large: {n_bs}**{n_mu} = {total} assignments exceeds cap {cap}"
        )
    return total


def iter_assignment_blocks(n_bs: int, n_mu: int, cap: int = ENUMERATION_CAP, chunk: int = _CHUNK):
    """Yield ``(start, block)`` with ``block[k]`` the assignment of rank ``start + k``.

    Rank order is lexicographic in the assignment vector (MU 0 most significant).
    """
    total = check_cap(n_bs, n_mu, cap)
    weights = n_bs ** np.arange(n_mu - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        ranks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        yield start, (ranks[:, None] // weights[None, :]) % n_bs


def _block_scores(rates: np.ndarray, block: np.ndarray, n_bs: int):
    """Per-assignment sum rate and sum delay for a block of assignments."""
    occ = np.zeros((len(block), n_bs), dtype=np.int64)
    for a in range(n_bs):
        occ[:, a] = np.sum(block == a, axis=1)
    kappa = np.take_along_axis(occ, block, axis=1)
    inst = rates[np.arange(block.shape[1])[None, :], block]
    per_mu = inst / kappa
    return per_mu.sum(axis=1), (1.0 / per_mu).sum(axis=1)


def _search(s: Scenario, rt: RateTable, maximize_rate: bool, cap: int):
    best_val, best_f = None, None
    for _, block in iter_assignment_blocks(s.n_bs, s.n_mu, cap):
        rate, delay = _block_scores(rt.rates, block, s.n_bs)
        if maximize_rate:
            k = int(np.argmax(rate))
            better = best_val is None or rate[k] > best_val
            val = rate[k]
        else:
            k = int(np.argmin(delay))
            better = best_val is None or delay[k] < best_val
            val = delay[k]
        # strict improvement keeps the lexicographically first optimum
        if better:
            best_val, best_f = float(val), block[k].copy()
    return best_f


def solve_c1r(s: Scenario, rt: RateTable, cap: int = ENUMERATION_CAP) -> SolveReport:
    """Maximize the multiplexed sum rate over every single association."""
    t0 = time.perf_counter()
    f = Assignment(_search(s, rt, True, cap), n_bs=s.n_bs)
    ev = evaluate(s, rt, f)
    return SolveReport("C1R", f, ev.sum_rate, ev, iterations=s.n_bs**s.n_mu,
                       wall_time=time.perf_counter() - t0)


def solve_c1d(s: Scenario, rt: RateTable, cap: int = ENUMERATION_CAP) -> SolveReport:
    """Minimize the sum delay over every single association."""
    t0 = time.perf_counter()
    f = Assignment(_search(s, rt, False, cap), n_bs=s.n_bs)
    ev = evaluate(s, rt, f)
    return SolveReport("C1D", f, ev.sum_delay, ev, iterations=s.n_bs**s.n_mu,
                       wall_time=time.perf_counter() - t0)


def pairwise_separation(f: Assignment, metric: LabelMetric) -> float:
    """``1/2 * sum_{p,q} sum_{a,b} d(a,b) x_pa x_qb`` for an integral ``f``."""
    x = f.to_matrix(metric.n)
    return 0.5 * float(np.einsum("pa,ab,qb->", x, metric.dist, x))


def congestion_identity_check(s: Scenario, metric: LabelMetric | None = None,
                              cap: int = ENUMERATION_CAP) -> bool:
    """Check that unit-metric pairwise separation equals ``(|U|^2 - sum kappa^2) / 2``.

    Runs over every assignment of ``s`` in integer arithmetic, so equality is
    exact. ``metric`` defaults to the unit metric and must have integer
    distances.
    """
    metric = metric if metric is not None else unit_metric(s.n_bs)
    if metric.n != s.n_bs:
        raise ValueError("metric size does not match the number of BSs")
    dist = metric.dist.astype(np.int64)
    if not np.array_equal(dist, metric.dist):
        raise ValueError("exact check needs an integer-valued metric")
    n_mu = s.n_mu
    for _, block in iter_assignment_blocks(s.n_bs, n_mu, cap):
        # sum over ordered MU pairs of d(f(p), f(q)); twice the separation
        twice_lhs = dist[block[:, :, None], block[:, None, :]].sum(axis=(1, 2))
        occ = np.stack([np.sum(block == a, axis=1) for a in range(s.n_bs)], axis=1)
        twice_rhs = n_mu * n_mu - np.sum(occ * occ, axis=1)
        if not np.array_equal(twice_lhs, twice_rhs):
            return False
    return True
