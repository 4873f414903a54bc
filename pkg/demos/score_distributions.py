"""Sample the three score families and eyeball their shapes.

Run:  python3 demos/score_distributions.py
"""

import numpy as np

from screensim import RngStream, ScoreDistribution, sample_truncated_normal

families = {
    "symmetric": ScoreDistribution(0.5, 0.02),
    "asymmetric": ScoreDistribution(0.8, 0.05),
    "increasing": ScoreDistribution(1.0, 0.05),
}

stream = RngStream(master_seed=42, stream_index=0)
n = 200_000

print(f"{'family':<12} {'mean':>7} {'median':>7} {'p10':>7} {'p90':>7} {'min':>7} {'max':>7}")
for name, dist in families.items():
    x = sample_truncated_normal(dist, n, stream)
    q10, q50, q90 = np.quantile(x, [0.1, 0.5, 0.9])
    print(f"{name:<12} {x.mean():7.3f} {q50:7.3f} {q10:7.3f} {q90:7.3f} {x.min():7.3f} {x.max():7.3f}")

# sigma is the variance of the parent normal, so the spread is sqrt(sigma)
print()
print("parent sd for sigma=0.02:", round(0.02**0.5, 4))
print("parent sd for sigma=0.05:", round(0.05**0.5, 4))

# a crude text histogram for the asymmetric family; mass piles up near 1
x = sample_truncated_normal(families["asymmetric"], 50_000, stream)
counts, edges = np.histogram(x, bins=10, range=(0.0, 1.0))
print()
for c, lo in zip(counts, edges):
    print(f"{lo:4.1f} | {'#' * int(60 * c / counts.max())}")
