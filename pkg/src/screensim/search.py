"""The two screening procedures and the utility/fairness functionals.

examination_search scores the whole pool first, then fills the selection
from a descending sort (the ranked, full-scan screener solving best-k).
cascade_search walks the screening order once and admits the first
candidates clearing the minimum score (the sequential screener solving
good-k); it may stop early, and it skips a non-protected candidate
without scoring it when the non-quota bucket is already full.

Both admit candidates under the same quota bookkeeping: protected
candidates fill the quota bucket Q up to q*, everyone else (including
protected overflow once Q is full) goes to the open bucket R up to r*.
A search that exhausts the pool before filling k slots reports an
infeasible outcome instead of raising.

With a fatigue model active, the score assigned at evaluation time t is
the truthful score plus an error drawn from the model at t; the clock
ticks only on candidates actually scored. Assigned scores drive the
admission logic, truthful scores drive every utility computed afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CandidatePool, ProblemParams, ScreeningOrder, Selection, quota_targets
from .fatigue import FatigueModel, draw_epsilon, error_moments
from .sampling import RngStream

__all__ = [
    "SearchOutcome",
    "examination_search",
    "cascade_search",
    "fairness_fraction",
    "utility_add",
    "penalty",
    "utility_psi",
    "utility_saved_effort",
]


@dataclass(frozen=True)
class SearchOutcome:
    """A selection plus the scoring trace (candidate, assigned score, time)."""

    selection: Selection
    scored_sequence: tuple[tuple[int, float, int], ...]


def _admit_all(
    candidate_ids: np.ndarray,
    protected: np.ndarray,
    k: int,
    q_star: int,
    r_star: int,
) -> tuple[list[int], list[int], bool]:
    """Fill Q/R scanning candidate_ids in the given order; skip the rest."""
    quota: list[int] = []
    other: list[int] = []
    for cid in candidate_ids:
        is_protected = protected[cid]
        if not is_protected and len(other) == r_star:
            continue
        if is_protected and len(quota) < q_star:
            quota.append(int(cid))
        else:
            other.append(int(cid))
        if len(quota) + len(other) == k:
            return quota, other, True
    return quota, other, False


def examination_search(
    pool: CandidatePool,
    order: ScreeningOrder,
    params: ProblemParams,
    fatigue: FatigueModel | None = None,
    rng: RngStream | None = None,
) -> SearchOutcome:
    """Score everyone in screening order, then select from a descending sort.

    The sort is stable on assigned scores with the earlier screening
    position winning ties. The minimum-score threshold plays no role here.
    """
    if params.k > pool.n:
        raise ValueError("k cannot exceed the pool size")
    q_star, r_star = quota_targets(params.k, params.q)
    fatigue = fatigue or FatigueModel.none()

    by_position = order.position_to_candidate
    truthful = pool.scores[by_position]
    if fatigue.kind == "none" or fatigue.lambda_ == 0.0:
        assigned = truthful
    else:
        moments = [error_moments(fatigue, t) for t in range(1, pool.n + 1)]
        means = np.array([m for m, _ in moments])
        sds = np.array([s for _, s in moments])
        if rng is None:
            raise ValueError("fatigued screening requires a random stream")
        assigned = truthful + rng.generator.normal(means, sds)

    # stable argsort on the negated assigned scores keeps earlier screening
    # positions first among ties
    ranked = by_position[np.argsort(-assigned, kind="stable")]
    quota, other, feasible = _admit_all(ranked, pool.protected, params.k, q_star, r_star)

    sequence = tuple(
        (int(by_position[i]), float(assigned[i]), i + 1) for i in range(pool.n)
    )
    return SearchOutcome(
        Selection(frozenset(quota), frozenset(other), pool.n, feasible),
        sequence,
    )


def cascade_search(
    pool: CandidatePool,
    order: ScreeningOrder,
    params: ProblemParams,
    fatigue: FatigueModel | None = None,
    rng: RngStream | None = None,
) -> SearchOutcome:
    """Walk the screening order once, admitting scores >= psi until k filled.

    Non-protected candidates are skipped unscored once R is full;
    protected candidates are always scored while the search runs. The
    fatigue clock advances only on scored candidates.
    """
    if params.k > pool.n:
        raise ValueError("k cannot exceed the pool size")
    q_star, r_star = quota_targets(params.k, params.q)
    fatigue = fatigue or FatigueModel.none()
    fatigued = fatigue.kind != "none" and fatigue.lambda_ != 0.0
    if fatigued and rng is None:
        raise ValueError("fatigued screening requires a random stream")

    scores = pool.scores
    protected = pool.protected
    psi = params.psi
    quota: list[int] = []
    other: list[int] = []
    sequence: list[tuple[int, float, int]] = []
    t = 1
    feasible = False
    for cid in order.position_to_candidate:
        cid = int(cid)
        is_protected = protected[cid]
        if not is_protected and len(other) == r_star:
            continue
        y = scores[cid] + draw_epsilon(fatigue, t, rng) if fatigued else scores[cid]
        sequence.append((cid, float(y), t))
        t += 1
        if y >= psi:
            if is_protected and len(quota) < q_star:
                quota.append(cid)
            else:
                other.append(cid)
            if len(quota) + len(other) == params.k:
                feasible = True
                break

    return SearchOutcome(
        Selection(frozenset(quota), frozenset(other), len(sequence), feasible),
        tuple(sequence),
    )


def fairness_fraction(selection: Selection, pool: CandidatePool) -> float:
    """Fraction of protected candidates in the selected set."""
    if not selection.feasible:
        raise ValueError("fairness_fraction requires a feasible selection")
    ids = np.fromiter(selection.selected_ids, dtype=np.int64)
    return float(pool.protected[ids].sum() / selection.k)


def _sum_scores(pool: CandidatePool, ids: np.ndarray) -> float:
    # canonical id-ascending summation so equal sets sum bit-identically
    return float(pool.scores[np.sort(ids)].sum())


def utility_add(selection: Selection, pool: CandidatePool) -> float:
    """Sum of truthful scores over the selected set."""
    if not selection.feasible:
        raise ValueError("utility_add requires a feasible selection")
    return _sum_scores(pool, np.fromiter(selection.selected_ids, dtype=np.int64))


def penalty(
    candidate_id: int,
    selection: Selection,
    order: ScreeningOrder,
    pool: CandidatePool,
    psi: float,
) -> int:
    """1 if an unselected same-group candidate scoring >= psi precedes this one.

    Such a candidate is wasted effort: the screener passed over someone
    who was good enough and interchangeable group-wise.
    """
    if candidate_id not in selection.selected_ids:
        raise ValueError("penalty is defined for selected candidates only")
    my_pos = order.candidate_to_position[candidate_id]
    my_group = pool.protected[candidate_id]
    selected = selection.selected_ids
    for earlier_pos in range(1, int(my_pos)):
        cid = int(order.position_to_candidate[earlier_pos - 1])
        if cid in selected:
            continue
        if pool.scores[cid] >= psi and pool.protected[cid] == my_group:
            return 1
    return 0


def utility_psi(
    selection: Selection,
    order: ScreeningOrder,
    pool: CandidatePool,
    psi: float,
) -> float:
    """k minus the selection's total penalty, or 0 if anyone scores below psi."""
    if not selection.feasible:
        raise ValueError("utility_psi requires a feasible selection")
    ids = np.fromiter(selection.selected_ids, dtype=np.int64)
    if np.any(pool.scores[ids] < psi):
        return 0.0
    total = sum(penalty(int(cid), selection, order, pool, psi) for cid in ids)
    return float(selection.k - total)


def utility_saved_effort(
    selection: Selection,
    order: ScreeningOrder,
    pool: CandidatePool,
    psi: float,
) -> float:
    """Positions left unexamined past the deepest selected candidate.

    n minus the maximum selected position when every selected score
    clears psi, else 0. Diagnostic companion to utility_psi.
    """
    if not selection.feasible:
        raise ValueError("utility_saved_effort requires a feasible selection")
    ids = np.fromiter(selection.selected_ids, dtype=np.int64)
    if np.any(pool.scores[ids] < psi):
        return 0.0
    deepest = int(order.candidate_to_position[ids].max())
    return float(order.n - deepest)
