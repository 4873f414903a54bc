"""How assigned scores drift as a human screener tires.

Run:  python3 demos/fatigue_drift.py
"""

import numpy as np

from screensim import FatigueModel, RngStream, draw_epsilon, error_moments

wander = FatigueModel.eps1()   # unbiased, widening noise
drift = FatigueModel.eps2()    # downward bias, mild noise

print("error moments by scored-time t (mean, sd):")
print(f"{'t':>4} {'wander':>18} {'drift':>18}")
for t in (1, 11, 26, 51, 101):
    m1, s1 = error_moments(wander, t)
    m2, s2 = error_moments(drift, t)
    print(f"{t:>4} {m1:+.4f} / {s1:.4f}    {m2:+.4f} / {s2:.4f}")

# the first look is always clean: both moments are zero at t=1
assert error_moments(wander, 1) == (0.0, 0.0)

# sample the drift model at a late scored-time and compare with the moments
t = 81
stream = RngStream(master_seed=3, stream_index=0)
draws = np.array([draw_epsilon(drift, t, stream) for _ in range(20_000)])
m, s = error_moments(drift, t)
print()
print(f"drift at t={t}: sample mean {draws.mean():+.4f} (law {m:+.4f}),",
      f"sample sd {draws.std(ddof=1):.4f} (law {s:.4f})")

# a perceived score is the true score plus the draw; nothing is clipped,
# so late in a long queue the drift can push scores below zero
true_score = 0.30
perceived = true_score + draws
print(f"true {true_score} perceived at t={t}: mean {perceived.mean():.3f},",
      f"share below zero {np.mean(perceived < 0):.3%}")
