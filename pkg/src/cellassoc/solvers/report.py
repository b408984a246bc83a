from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..netmodel import Assignment, EvalResult

FORMULATIONS = ("C1R", "C1D", "Q1D", "Q2D", "L2D", "MINDIST", "MAXSINR")


@dataclass(frozen=True)
class SolveReport:
    formulation: str
    rounded: Assignment
    objective_value: float
    eval: EvalResult
    beta: float | None = None
    fractional: np.ndarray | None = None
    seed: int | None = None
    iterations: int = 0
    wall_time: float = 0.0

    @property
    def sum_rate(self) -> float:
        return self.eval.sum_rate

    @property
    def sum_delay(self) -> float:
        return self.eval.sum_delay


def check_fractional(x, atol: float = 1e-9) -> np.ndarray:
    """Validate membership in the relaxed assignment polytope."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise ValueError("fractional assignment must be a 2-D |U| x |B| matrix")
    if np.any(x < -atol) or np.any(x > 1 + atol):
        raise ValueError("fractional assignment entries must lie in [0, 1]")
    rows = x.sum(axis=1)
    bad = np.flatnonzero(np.abs(rows - 1.0) > atol)
    if bad.size:
        raise ValueError(f"row {int(bad[0])} sums to {rows[bad[0]]!r}, expected 1")
    return x


def round_argmax(x) -> Assignment:
    """Send each MU to the BS holding its largest fractional mass.

    ``np.argmax`` returns the first maximum, so ties go to the lowest index.
    """
    x = check_fractional(x)
    return Assignment(np.argmax(x, axis=1), n_bs=x.shape[1])
