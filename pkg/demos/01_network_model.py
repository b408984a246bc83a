# SINR, rates and the cost of sharing a BS.
import numpy as np

from cellassoc.netmodel import Assignment, evaluate, evaluate_deactivated, rate_table
from cellassoc.scenario import ScenarioSpec, make_scenario

s = make_scenario(ScenarioSpec(n_bs=3, mu_per_bs_ratio=2, seed=1))
print("BS powers (W):", s.powers)
print("noise (dBW):", s.noise_dbw)

rt = rate_table(s)
np.set_printoptions(precision=3, suppress=True)
print("instantaneous rates r[p, a] (nats/s/Hz):")
print(rt.rates)

# every MU on its best BS, then everybody on BS 0
best = Assignment(np.argmax(rt.rates, axis=1))
crowd = Assignment(np.zeros(s.n_mu, dtype=int))
for name, f in (("best-rate", best), ("all on BS 0", crowd)):
    ev = evaluate(s, rt, f)
    print(f"{name:12s} occupancy {ev.occupancy}  sum rate {ev.sum_rate:.3f}  sum delay {ev.sum_delay:.3f}")

# with idle BSs switched off, crowding one BS removes all interference
ev = evaluate_deactivated(s, crowd)
print(f"all on BS 0, idle BSs silent: sum rate {ev.sum_rate:.3f}  sum delay {ev.sum_delay:.3f}")
