"""Trace one screening instance end to end.

Builds a 12-candidate pool, presents it in a random order, and runs both
search styles: the ranked full scan and the sequential threshold cascade.
Prints every scored candidate so the bucket mechanics are visible.

Run:  python3 demos/walk_through_a_cascade.py
"""

import numpy as np

from screensim import (
    CandidatePool,
    ProblemParams,
    RngStream,
    ScoreDistribution,
    cascade_search,
    examination_search,
    fairness_fraction,
    generate_iso_independent,
    jaccard_similarity,
    quota_targets,
    ratio_to_baseline,
    sample_protected,
    sample_truncated_normal,
    utility_add,
    utility_psi,
)

stream = RngStream(master_seed=7, stream_index=0)
n = 12
scores = sample_truncated_normal(ScoreDistribution(0.5, 0.02), n, stream)
protected = sample_protected(0.4, n, stream)
order = generate_iso_independent(n, stream)
pool = CandidatePool(scores, protected)

params = ProblemParams(k=4, q=0.5, psi=0.45)
q_star, r_star = quota_targets(params.k, params.q)
print(f"pick k={params.k} with quota split (q*={q_star}, r*={r_star}), threshold psi={params.psi}")
print()

print("presentation order (position: id, score, group):")
for pos in range(1, n + 1):
    cid = order.candidate_at(pos)
    tag = "P" if protected[cid] else "-"
    print(f"  {pos:2d}: c{cid:<2d} {scores[cid]:.3f} {tag}")

# the ranked scan sees everyone, then takes the best k honoring the quota
best = examination_search(pool, order, params)
print()
print("ranked scan picks:", sorted(best.selection.selected_ids))
print("  truthful utility:", round(utility_add(best.selection, pool), 3))
print("  protected fraction:", fairness_fraction(best.selection, pool))

# the cascade admits the first eligible arrivals and skips what it cannot use
casc = cascade_search(pool, order, params)
print()
print("cascade scoring trace (id, score, scored-time):")
for cid, s, t in casc.scored_sequence:
    print(f"  t={t:2d}  c{cid:<2d} {s:.3f} {'eligible' if s >= params.psi else 'below psi'}")
print("cascade picks:", sorted(casc.selection.selected_ids))
print("  quota bucket:", sorted(casc.selection.quota_set))
print("  open bucket: ", sorted(casc.selection.other_set))
print("  threshold utility:", utility_psi(casc.selection, order, pool, params.psi))
print("  looked at", casc.selection.evaluated_count, "of", n, "candidates")

print()
print("cascade vs ranked:")
print("  ratio to baseline:", round(ratio_to_baseline(casc.selection, best.selection, pool), 3))
print("  overlap (jaccard):", round(jaccard_similarity(casc.selection, best.selection), 3))
