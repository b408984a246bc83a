"""Per-MU greedy baselines."""
from __future__ import annotations

import time

import numpy as np

from ..netmodel import Assignment, RateTable, Scenario, distances, evaluate
from .report import SolveReport


def heuristic(s: Scenario, rt: RateTable, kind: str) -> SolveReport:
    """``MINDIST`` picks the nearest BS, ``MAXSINR`` the strongest; ties to the lowest index."""
    t0 = time.perf_counter()
    kind = kind.upper()
    if kind == "MINDIST":
        choice = np.argmin(distances(s), axis=1)
    elif kind == "MAXSINR":
        choice = np.argmax(rt.sinrs, axis=1)
    else:
        raise ValueError(f"unknown heuristic {kind!r}")
    f = Assignment(choice, n_bs=s.n_bs)
    ev = evaluate(s, rt, f)
    return SolveReport(kind, f, ev.sum_delay, ev, wall_time=time.perf_counter() - t0)
