"""
Does the transitive formula still bound the rate on regular graphs?

Random regular graphs are symmetric but in general not vertex-transitive,
so the formula has no proof there. The probe evaluates it anyway and
counts grid points where the simulation beats it by more than the slack.
"""

from pushsum_rates.experiment import ExperimentConfig, GraphSource, count_violations, run_sweep

for seed in (1, 2, 3):
    cfg = ExperimentConfig(GraphSource("regular", {"n": 24, "d": 4}, seed=seed), repetitions=5)
    rows = run_sweep(cfg, probe=True)
    worst = max(r.emp_rate - r.b_transitive for r in rows)
    print(f"seed {seed}: violations {count_violations(rows)} of {len(rows)}, "
          f"largest empirical - formula = {worst:+.4f}")
