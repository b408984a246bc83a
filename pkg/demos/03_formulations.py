# All formulations on the constructed 4 BS / 4 MU topology, then a beta sweep.
from cellassoc.hst import build_hst, unit_metric
from cellassoc.netmodel import rate_table
from cellassoc.scenario import constructed_topology
from cellassoc.solvers import heuristic, solve_c1d, solve_c1r, solve_l2d, solve_q1d, solve_q2d

s = constructed_topology()
rt = rate_table(s)
tree = build_hst(unit_metric(s.n_bs), seed=0)

reports = [solve_c1r(s, rt), solve_c1d(s, rt), solve_q1d(s, rt),
           solve_q2d(s, rt, 0.5), solve_l2d(s, rt, 0.5, tree),
           heuristic(s, rt, "MINDIST"), heuristic(s, rt, "MAXSINR")]
for r in reports:
    print(f"{r.formulation:8s} f={r.rounded.tolist()}  occupancy={r.eval.occupancy.tolist()}  "
          f"sum rate {r.sum_rate:7.3f}  sum delay {r.sum_delay:7.3f}")

# beta trades SINR against load: 0 piles MUs on BS 0, near 1 spreads them out
best = solve_c1d(s, rt).sum_delay
print("\nbeta   Q2D delay  L2D delay   (C1D optimum %.3f)" % best)
for beta in (0.0, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9, 0.99):
    q = solve_q2d(s, rt, beta)
    l = solve_l2d(s, rt, beta, tree)
    print(f"{beta:4.2f}  {q.sum_delay:9.3f}  {l.sum_delay:9.3f}   {q.rounded.tolist()} {l.rounded.tolist()}")
