"""Run-level comparison metrics between a compared solution and its baseline."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CandidatePool, Selection

__all__ = ["RunMetrics", "jaccard_similarity", "ratio_to_baseline"]


@dataclass(frozen=True)
class RunMetrics:
    """Per-run record; feasible=False marks a discarded run.

    rtb uses truthful scores for both sides, so fatigue affects it only
    through which candidates were picked.  Values above one are
    legitimate: a threshold screener may beat a baseline chosen under a
    different objective.
    """

    rtb: float
    jds: float
    frac_protected: float
    evaluated_count: int
    feasible: bool = True

    @classmethod
    def discarded(cls) -> "RunMetrics":
        return cls(0.0, 0.0, 0.0, 0, False)


def _truthful_sum(pool: CandidatePool, selection: Selection) -> float:
    ids = np.sort(np.fromiter(selection.selected_ids, dtype=np.int64))
    return float(pool.scores[ids].sum())


def ratio_to_baseline(
    compared: Selection, baseline: Selection, pool: CandidatePool
) -> float:
    """Truthful-score sum of `compared` over that of `baseline`."""
    if not compared.feasible or not baseline.feasible:
        raise ValueError("ratio is defined only for feasible selections")
    if compared.k != baseline.k:
        raise ValueError("selections pick different numbers of candidates")
    denom = _truthful_sum(pool, baseline)
    if denom == 0.0:
        raise ValueError("baseline selection has zero truthful score")
    return _truthful_sum(pool, compared) / denom


def jaccard_similarity(compared: Selection, baseline: Selection) -> float:
    if not compared.feasible or not baseline.feasible:
        raise ValueError("overlap is defined only for feasible selections")
    a, b = compared.selected_ids, baseline.selected_ids
    if not a and not b:
        return 1.0
    return len(a & b) / len(a | b)
