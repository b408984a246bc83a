# Per-MU sum delay against network size on random drops.
from cellassoc import harness as hs
from cellassoc.scenario import ScenarioSpec

cfg = hs.SweepConfig(generator=ScenarioSpec(seed=0), n_bs_grid=(2, 5, 10), replications=5)
rows = hs.run_scaling(cfg)
print("n_bs   Q1D    Q2D   MINDIST  MAXSINR  best beta")
for r in hs.summarize_scaling(rows):
    print(f"{r['n_bs']:4d} {r['q1d_delay_per_mu']:6.2f} {r['q2d_delay_per_mu']:6.2f} "
          f"{r['mindist_delay_per_mu']:8.2f} {r['maxsinr_delay_per_mu']:8.2f} {r['best_beta']:9.2f}")
