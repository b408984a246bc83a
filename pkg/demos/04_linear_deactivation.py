# Two BSs on a line: when does switching one off pay?
from cellassoc import harness as hs
from cellassoc.deactivation import delay_threshold, rate_threshold
from cellassoc.scenario import LinearNetParams

p = LinearNetParams(d=100.0, delta=0.5, gamma=3.0, noise_dbw=-90.0)
print("rate lhs %.4g -> %s" % (rate_threshold(p).lhs, rate_threshold(p).winner))
print("delay lhs %.4g -> %s" % (delay_threshold(p).lhs, delay_threshold(p).winner))

tables = hs.run_linear_example(p)
print("\nnoise sweep at delta=0.5 (f1: one BS off, f2: both on)")
for r in tables["noise_sweep"]:
    print(f"N={r['noise_dbw']:6.1f} dBW  rate {r['rate_winner']} (brute {r['rate_bruteforce']})  "
          f"delay {r['delay_winner']} (brute {r['delay_bruteforce']})")

print("\ndecision boundary delta* per noise level")
for b in tables["boundary"]:
    where = "none in grid" if b["delta_star"] is None else f"{b['delta_star']:.4f}"
    print(f"{b['criterion']:5s} N={b['noise_dbw']:6.1f} dBW  delta*={where}")
