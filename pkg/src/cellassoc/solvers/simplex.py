"""Dense two-phase tableau simplex with Bland's anti-cycling rule."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

SENSES = ("<=", "=", ">=")
_EPS = 1e-9
_MAX_TABLEAU = 5 * 10**7


@dataclass(frozen=True, eq=False)
class LPModel:
    """``min c.x`` s.t. ``A x (sense) b`` and ``lower <= x <= upper``."""

    c: np.ndarray
    A: np.ndarray
    senses: tuple
    b: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    names: tuple = ()
    index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float).reshape(-1)
        n = len(c)
        A = np.asarray(self.A, dtype=float).reshape(-1, n)
        b = np.asarray(self.b, dtype=float).reshape(-1)
        lo = np.asarray(self.lower, dtype=float).reshape(-1)
        hi = np.asarray(self.upper, dtype=float).reshape(-1)
        senses = tuple(self.senses)
        if len(b) != A.shape[0] or len(senses) != A.shape[0]:
            raise ValueError("constraint rows, senses and rhs disagree in length")
        if len(lo) != n or len(hi) != n:
            raise ValueError("bounds must have one entry per variable")
        if any(sn not in SENSES for sn in senses):
            raise ValueError(f"row senses must be among {SENSES}")
        if not np.all(np.isfinite(lo)):
            raise ValueError("lower bounds must be finite")
        if np.any(hi < lo):
            raise ValueError("upper bound below lower bound")
        if self.names and len(self.names) != n:
            raise ValueError("names must have one entry per variable")
        for k, v in (("c", c), ("A", A), ("b", b), ("lower", lo), ("upper", hi), ("senses", senses)):
            object.__setattr__(self, k, v)

    @property
    def n_vars(self) -> int:
        return len(self.c)

    @property
    def n_rows(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class LPResult:
    x: np.ndarray | None
    value: float | None
    status: str  # "optimal" | "infeasible" | "unbounded"
    iterations: int = 0


def _pivot(T, row, col):
    T[row] /= T[row, col]
    others = np.flatnonzero(T[:, col])
    others = others[others != row]
    T[others] -= np.outer(T[others, col], T[row])


def _run(T, basis, n_cols, max_iter):
    """Minimize with objective in the last row; Bland's rule on entering and leaving."""
    it = 0
    m = len(basis)
    while it < max_iter:
        reduced = T[-1, :n_cols]
        entering = np.flatnonzero(reduced < -_EPS)
        if entering.size == 0:
            return "optimal", it
        col = int(entering[0])
        column = T[:m, col]
        pos = np.flatnonzero(column > _EPS)
        if pos.size == 0:
            return "unbounded", it
        ratios = T[pos, -1] / column[pos]
        best = ratios.min()
        ties = pos[ratios <= best + _EPS * max(1.0, abs(best))]
        row = int(min(ties, key=lambda r: basis[r]))
        _pivot(T, row, col)
        basis[row] = col
        it += 1
    raise RuntimeError("simplex iteration limit reached")


def lp_solve(m: LPModel, max_iter: int = 100_000) -> LPResult:
    lo, hi = m.lower, m.upper
    n = m.n_vars
    # shift to x' = x - lo >= 0 and turn finite upper bounds into rows
    b = m.b - m.A @ lo
    finite_hi = np.flatnonzero(np.isfinite(hi))
    A_rows = [m.A, np.eye(n)[finite_hi]]
    A = np.vstack(A_rows)
    b = np.concatenate([b, (hi - lo)[finite_hi]])
    senses = list(m.senses) + ["<="] * len(finite_hi)
    rows = A.shape[0]

    # slack / surplus columns
    sign = np.array([{"<=": 1.0, "=": 0.0, ">=": -1.0}[sn] for sn in senses])
    slack_rows = np.flatnonzero(sign != 0)
    S = np.zeros((rows, len(slack_rows)))
    S[slack_rows, np.arange(len(slack_rows))] = sign[slack_rows]
    A = np.hstack([A, S])
    flip = b < 0
    A[flip] *= -1
    b = np.where(flip, -b, b)

    n_struct = A.shape[1]
    basis = [-1] * rows
    for j in range(n, n_struct):
        col = A[:, j]
        (r,) = np.flatnonzero(col)
        if col[r] == 1.0:
            basis[r] = j
    need_art = [r for r in range(rows) if basis[r] < 0]
    art = np.zeros((rows, len(need_art)))
    for k, r in enumerate(need_art):
        art[r, k] = 1.0
        basis[r] = n_struct + k
    n_cols = n_struct + len(need_art)
    if (rows + 1) * (n_cols + 1) > _MAX_TABLEAU:
        raise ValueError(f"LP too large for the dense simplex ({rows} rows x {n_cols} columns)")

    T = np.zeros((rows + 1, n_cols + 1))
    T[:rows, :n_struct] = A
    T[:rows, n_struct:n_cols] = art
    T[:rows, -1] = b

    iterations = 0
    if need_art:
        T[-1, n_struct:n_cols] = 1.0
        for r in need_art:
            T[-1] -= T[r]
        status, it = _run(T, basis, n_cols, max_iter)
        iterations += it
        if -T[-1, -1] > 1e-7:
            return LPResult(None, None, "infeasible", iterations)
        # drive zero-level artificials out of the basis, dropping redundant rows
        keep = list(range(rows))
        for r in range(rows):
            if basis[r] >= n_struct:
                cands = np.flatnonzero(np.abs(T[r, :n_struct]) > _EPS)
                if cands.size:
                    _pivot(T, r, int(cands[0]))
                    basis[r] = int(cands[0])
                else:
                    keep.remove(r)
        T = np.vstack([T[keep], T[-1:]])
        basis = [basis[r] for r in keep]
        T = np.hstack([T[:, :n_struct], T[:, -1:]])
        n_cols = n_struct

    cost = np.zeros(n_cols)
    cost[:n] = m.c
    T[-1, :] = 0.0
    T[-1, :n_cols] = cost
    for r, j in enumerate(basis):
        if cost[j] != 0.0:
            T[-1] -= cost[j] * T[r]
    status, it = _run(T, basis, n_cols, max_iter)
    iterations += it
    if status != "optimal":
        return LPResult(None, None, status, iterations)
    xs = np.zeros(n_cols)
    for r, j in enumerate(basis):
        xs[j] = T[r, -1]
    x = xs[:n] + lo
    return LPResult(x, float(m.c @ x), "optimal", iterations)
