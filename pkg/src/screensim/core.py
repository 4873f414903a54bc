"""Domain types for candidate pools, screening orders, and selected sets.

Everything here is immutable after construction and safe to share across
workers. Positions are 1-based in the public API; candidate ids are dense
integers 0..n-1 assigned at pool creation, and the pool stores candidates
in id order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Candidate",
    "CandidatePool",
    "ScreeningOrder",
    "Selection",
    "ProblemParams",
    "quota_targets",
    "position_of",
]


@dataclass(frozen=True)
class Candidate:
    """One pool member: a truthful score in [0, 1] and a protected-group flag."""

    id: int
    score: float
    protected: bool

    def __post_init__(self) -> None:
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score must lie in [0, 1], got {self.score}")


class CandidatePool:
    """An ordered pool of n candidates with dense ids 0..n-1.

    The constructor accepts either parallel arrays (the hot path used by the
    harness) or an explicit candidate sequence, which must already be in
    dense id order.
    """

    __slots__ = ("scores", "protected", "n")

    def __init__(self, scores: np.ndarray, protected: np.ndarray) -> None:
        scores = np.asarray(scores, dtype=np.float64)
        protected = np.asarray(protected, dtype=bool)
        if scores.ndim != 1 or scores.shape != protected.shape:
            raise ValueError("scores and protected must be 1-d arrays of equal length")
        if scores.size < 1:
            raise ValueError("a pool needs at least one candidate")
        if np.any(scores < 0.0) or np.any(scores > 1.0):
            raise ValueError("all scores must lie in [0, 1]")
        self.scores = scores
        self.protected = protected
        self.n = int(scores.size)

    @classmethod
    def from_candidates(cls, candidates: list[Candidate] | tuple[Candidate, ...]) -> CandidatePool:
        ids = [c.id for c in candidates]
        if ids != list(range(len(candidates))):
            raise ValueError("candidate ids must be dense 0..n-1 in order")
        return cls(
            np.array([c.score for c in candidates], dtype=np.float64),
            np.array([c.protected for c in candidates], dtype=bool),
        )

    @property
    def candidates(self) -> tuple[Candidate, ...]:
        return tuple(
            Candidate(i, float(self.scores[i]), bool(self.protected[i]))
            for i in range(self.n)
        )

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:  # pragma: no cover
        return f"CandidatePool(n={self.n})"


class ScreeningOrder:
    """A bijection between positions 1..n and candidate ids.

    ``position_to_candidate[i]`` holds the candidate examined at position
    i+1. The inverse map is precomputed so position lookups are O(1).
    """

    __slots__ = ("position_to_candidate", "candidate_to_position")

    def __init__(self, position_to_candidate: np.ndarray) -> None:
        order = np.asarray(position_to_candidate, dtype=np.int64)
        n = order.size
        if n < 1:
            raise ValueError("an order needs at least one position")
        if order.min() < 0 or order.max() >= n or not np.all(np.bincount(order, minlength=n) == 1):
            raise ValueError("position_to_candidate must be a permutation of 0..n-1")
        inverse = np.empty(n, dtype=np.int64)
        inverse[order] = np.arange(1, n + 1)  # 1-based positions
        self.position_to_candidate = order
        self.candidate_to_position = inverse

    @property
    def n(self) -> int:
        return int(self.position_to_candidate.size)

    def candidate_at(self, position: int) -> int:
        """Candidate id at a 1-based position."""
        if not 1 <= position <= self.n:
            raise IndexError(f"position {position} outside 1..{self.n}")
        return int(self.position_to_candidate[position - 1])

    def __repr__(self) -> str:  # pragma: no cover
        return f"ScreeningOrder({self.position_to_candidate.tolist()})"


@dataclass(frozen=True)
class Selection:
    """A selected set split into its quota bookkeeping.

    quota_set holds protected candidates admitted against the quota,
    other_set everyone else. evaluated_count is how many candidates were
    actually scored before the search stopped. An infeasible selection
    (feasible=False) carries whatever partial sets existed at exhaustion.
    """

    quota_set: frozenset[int]
    other_set: frozenset[int]
    evaluated_count: int
    feasible: bool

    def __post_init__(self) -> None:
        if self.quota_set & self.other_set:
            raise ValueError("quota_set and other_set must be disjoint")

    @property
    def selected_ids(self) -> frozenset[int]:
        return self.quota_set | self.other_set

    @property
    def k(self) -> int:
        return len(self.quota_set) + len(self.other_set)


@dataclass(frozen=True)
class ProblemParams:
    """Selection size k, representational quota q, and minimum score psi.

    psi only matters for the good-k problem; best-k searches ignore it.
    """

    k: int
    q: float
    psi: float = 0.0

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0.0 <= self.q <= 1.0:
            raise ValueError("q must lie in [0, 1]")
        if not 0.0 <= self.psi <= 1.0:
            raise ValueError("psi must lie in [0, 1]")


def quota_targets(k: int, q: float) -> tuple[int, int]:
    """Split k into the protected quota q* = round(q*k) and the rest r*.

    Rounding is half-to-even, so quota_targets(5, 0.5) == (2, 3).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must lie in [0, 1]")
    q_star = round(q * k)
    return q_star, k - q_star


def position_of(order: ScreeningOrder, candidate_id: int) -> int:
    """1-based position of a candidate in the order; raises on unknown ids."""
    if not 0 <= candidate_id < order.n:
        raise KeyError(f"candidate {candidate_id} not in this order")
    return int(order.candidate_to_position[candidate_id])
