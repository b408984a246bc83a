"""HST-linearized split-term delay LP.

Variables are the fractional assignment ``x[p, a]`` and, for every unordered
MU pair ``e = (p, q)`` and every non-root subtree ``T``, a separation
variable ``xbar[e, T]`` standing in for ``|x_pT - x_qT|`` where
``x_pT = sum_{a in L(T)} x[p, a]``. The congestion term is maximized, so
``xbar`` only needs the two upper bounds

    xbar <= x_pT + x_qT,    xbar <= 2 - x_pT - x_qT,

which are tight at integral points.
"""
from __future__ import annotations

import itertools
import time

import numpy as np

from ..hst import HSTree, enumerate_subtrees
from ..netmodel import Assignment, RateTable, Scenario, evaluate
from .report import SolveReport, round_argmax
from .simplex import LPModel, lp_solve


class SolverError(RuntimeError):
    pass


def _subtree_incidence(tree: HSTree, n_bs: int):
    subtrees = enumerate_subtrees(tree)
    lengths = np.array([l for l, _ in subtrees])
    member = np.zeros((len(subtrees), n_bs))
    for k, (_, labels) in enumerate(subtrees):
        member[k, list(labels)] = 1.0
    return lengths, member


def build_l2d_model(rt: RateTable, beta: float, tree: HSTree) -> LPModel:
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta!r}")
    n_mu, n_bs = rt.rates.shape
    if tree.n_labels != n_bs:
        raise ValueError(f"tree has {tree.n_labels} leaves but the scenario has {n_bs} BSs")
    lengths, member = _subtree_incidence(tree, n_bs)
    n_sub = len(lengths)
    pairs = list(itertools.combinations(range(n_mu), 2))
    n_x = n_mu * n_bs
    n_bar = len(pairs) * n_sub
    n = n_x + n_bar

    names = [f"x[{p},{a}]" for p in range(n_mu) for a in range(n_bs)]
    names += [f"xbar[{p},{q};T{t}]" for p, q in pairs for t in range(n_sub)]
    index = {name: k for k, name in enumerate(names)}

    c = np.zeros(n)
    c[:n_x] = (1.0 - beta) * rt.costs.reshape(-1)
    c[n_x:] = -0.5 * beta * np.tile(lengths, len(pairs))

    rows, senses, rhs = [], [], []
    for p in range(n_mu):
        row = np.zeros(n)
        row[p * n_bs:(p + 1) * n_bs] = 1.0
        rows.append(row)
        senses.append("=")
        rhs.append(1.0)
    for e, (p, q) in enumerate(pairs):
        for t in range(n_sub):
            bar = n_x + e * n_sub + t
            mass = np.zeros(n)
            mass[p * n_bs:(p + 1) * n_bs] += member[t]
            mass[q * n_bs:(q + 1) * n_bs] += member[t]
            # xbar - x_pT - x_qT <= 0
            row = -mass
            row[bar] = 1.0
            rows.append(row)
            senses.append("<=")
            rhs.append(0.0)
            # xbar + x_pT + x_qT <= 2
            row = mass.copy()
            row[bar] = 1.0
            rows.append(row)
            senses.append("<=")
            rhs.append(2.0)
    A = np.array(rows) if rows else np.zeros((0, n))
    return LPModel(c, A, tuple(senses), np.array(rhs), np.zeros(n), np.ones(n),
                   names=tuple(names), index=index)


def induced_point(f: Assignment, tree: HSTree, n_bs: int) -> np.ndarray:
    """LP point of an integral assignment with every ``xbar`` at its upper bound."""
    x = f.to_matrix(n_bs)
    lengths, member = _subtree_incidence(tree, n_bs)
    mass = x @ member.T  # [p, T]
    bars = []
    for p, q in itertools.combinations(range(len(x)), 2):
        s = mass[p] + mass[q]
        bars.append(np.minimum(s, 2.0 - s))
    bars = np.concatenate(bars) if bars else np.zeros(0)
    return np.concatenate([x.reshape(-1), bars])


def solve_l2d(s: Scenario, rt: RateTable, beta: float, tree: HSTree) -> SolveReport:
    t0 = time.perf_counter()
    model = build_l2d_model(rt, beta, tree)
    res = lp_solve(model)
    if res.status != "optimal":
        raise SolverError(f"L2D linear program is {res.status}")
    x = np.clip(res.x[: s.n_mu * s.n_bs].reshape(s.n_mu, s.n_bs), 0.0, 1.0)
    rounded = round_argmax(x / x.sum(axis=1, keepdims=True))
    return SolveReport("L2D", rounded, res.value, evaluate(s, rt, rounded), beta=beta,
                       fractional=x, seed=tree.seed, iterations=res.iterations,
                       wall_time=time.perf_counter() - t0)
