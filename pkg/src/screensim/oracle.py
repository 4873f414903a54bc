"""Exhaustive reference solvers for tiny instances.

These exist as ground truth for property tests, not for experiments:
they enumerate every k-subset, so pools are hard-capped at n <= 20.
Maximizer sets are returned as frozensets of candidate ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .core import CandidatePool, ProblemParams, ScreeningOrder, quota_targets

__all__ = ["OracleResult", "brute_force_best_k", "brute_force_good_k"]

_MAX_N = 20


@dataclass(frozen=True)
class OracleResult:
    max_utility: float | None
    argmax_sets: tuple[frozenset[int], ...]
    feasible: bool
    subsets_evaluated: int


def _check_size(pool: CandidatePool, params: ProblemParams) -> None:
    if pool.n > _MAX_N:
        raise ValueError(f"oracle is capped at n <= {_MAX_N}, got n={pool.n}")
    if params.k > pool.n:
        raise ValueError("k cannot exceed the pool size")


def brute_force_best_k(pool: CandidatePool, params: ProblemParams) -> OracleResult:
    """Maximum truthful-score sum over all k-subsets meeting the quota."""
    _check_size(pool, params)
    q_star, _ = quota_targets(params.k, params.q)
    scores = pool.scores
    protected = pool.protected

    best: float | None = None
    argmax: list[frozenset[int]] = []
    visited = 0
    for combo in combinations(range(pool.n), params.k):
        visited += 1
        ids = np.array(combo)
        if int(protected[ids].sum()) < q_star:
            continue
        value = float(scores[ids].sum())
        if best is None or value > best:
            best, argmax = value, [frozenset(combo)]
        elif value == best:
            argmax.append(frozenset(combo))
    return OracleResult(best, tuple(argmax), best is not None, visited)


def brute_force_good_k(
    pool: CandidatePool,
    order: ScreeningOrder,
    params: ProblemParams,
) -> OracleResult:
    """Maximum threshold utility over all k-subsets meeting the quota.

    Each subset scores k minus one penalty per member preceded (in the
    screening order) by an unselected same-group candidate clearing psi,
    or 0 outright if any member scores below psi.
    """
    _check_size(pool, params)
    q_star, _ = quota_targets(params.k, params.q)
    scores = pool.scores
    protected = pool.protected
    psi = params.psi
    by_position = order.position_to_candidate
    pos_of = order.candidate_to_position

    # eligible same-group candidates at positions strictly before p, per group
    eligible = scores >= psi
    before_counts = np.zeros((pool.n + 1, 2), dtype=np.int64)
    for p in range(1, pool.n + 1):
        cid = int(by_position[p - 1])
        before_counts[p] = before_counts[p - 1]
        if eligible[cid]:
            before_counts[p][int(protected[cid])] += 1

    best: float | None = None
    argmax: list[frozenset[int]] = []
    visited = 0
    for combo in combinations(range(pool.n), params.k):
        visited += 1
        ids = np.array(combo)
        if int(protected[ids].sum()) < q_star:
            continue
        if np.any(scores[ids] < psi):
            value = 0.0
        else:
            total_penalty = 0
            members = sorted(combo, key=lambda c: pos_of[c])
            seen_eligible = [0, 0]  # selected eligible members so far, by group
            for cid in members:
                group = int(protected[cid])
                unselected_before = before_counts[pos_of[cid] - 1][group] - seen_eligible[group]
                if unselected_before > 0:
                    total_penalty += 1
                if eligible[cid]:
                    seen_eligible[group] += 1
            value = float(params.k - total_penalty)
        if best is None or value > best:
            best, argmax = value, [frozenset(combo)]
        elif value == best:
            argmax.append(frozenset(combo))
    return OracleResult(best, tuple(argmax), best is not None, visited)
