"""Instance generators: scores, protected flags, and screening orders.

Scores come from a truncated normal on [0, 1] sampled by inverse-CDF
transform (branch-free, one uniform per draw, so replay is exact).
Screening orders are either uniform permutations or rank-correlated with
the scores through a Gaussian-copula construction whose per-draw Pearson
correlation is induced exactly, keeping the achieved Spearman tight
around the target.

All randomness flows through RngStream, a thin deterministic wrapper
around numpy's seed-sequence machinery: equal (master_seed, stream_index)
pairs replay bit-identical draw sequences, distinct stream indices are
statistically independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.special import ndtr, ndtri
from scipy.stats import rankdata

from .core import ScreeningOrder

__all__ = [
    "ScoreDistribution",
    "IsoSpec",
    "RngStream",
    "sample_truncated_normal",
    "sample_protected",
    "generate_iso_independent",
    "generate_iso_correlated",
    "spearman_rho",
]


@dataclass(frozen=True)
class ScoreDistribution:
    """Truncated-normal score law tN(mu, sigma) on [lower, upper].

    sigma is the variance of the parent normal (sd = sqrt(sigma)): the
    three canonical scenarios tN(0.5, 0.02), tN(0.8, 0.05) and
    tN(1, 0.05) have medians near 0.5, 0.75 and 0.85 only under this
    reading, which the tests pin down.
    """

    mu: float
    sigma: float
    lower: float = 0.0
    upper: float = 1.0

    def __post_init__(self) -> None:
        if self.sigma <= 0.0:
            raise ValueError("sigma must be > 0")
        if not self.lower < self.upper:
            raise ValueError("lower must be < upper")

    @property
    def sd(self) -> float:
        return float(np.sqrt(self.sigma))


@dataclass(frozen=True)
class IsoSpec:
    """Screening-order law: independent of scores, or Spearman-correlated."""

    kind: str  # "independent" | "correlated"
    rho: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("independent", "correlated"):
            raise ValueError(f"unknown iso kind {self.kind!r}")
        if self.kind == "correlated":
            if self.rho is None:
                raise ValueError("correlated iso requires rho")
            if not -1.0 <= self.rho <= 1.0:
                raise ValueError("rho must lie in [-1, 1]")
        elif self.rho is not None:
            raise ValueError("rho is meaningless for an independent iso")


@dataclass(frozen=True)
class RngStream:
    """Deterministic random stream addressed by (master_seed, stream_index)."""

    master_seed: int
    stream_index: int

    @cached_property
    def generator(self) -> np.random.Generator:
        return np.random.default_rng(
            np.random.SeedSequence([self.master_seed, self.stream_index])
        )


def sample_truncated_normal(dist: ScoreDistribution, n: int, rng: RngStream) -> np.ndarray:
    """n inverse-CDF draws from dist; every value lands inside [lower, upper]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    sd = dist.sd
    lo_cdf = ndtr((dist.lower - dist.mu) / sd)
    hi_cdf = ndtr((dist.upper - dist.mu) / sd)
    u = rng.generator.random(n)
    draws = dist.mu + sd * ndtri(lo_cdf + u * (hi_cdf - lo_cdf))
    # guard the truncation bounds against quantile round-off at the edges
    return np.clip(draws, dist.lower, dist.upper)


def sample_protected(pr: float, n: int, rng: RngStream) -> np.ndarray:
    """n Bernoulli(pr) flags, independent of everything else."""
    if not 0.0 <= pr <= 1.0:
        raise ValueError("pr must lie in [0, 1]")
    if n < 1:
        raise ValueError("n must be >= 1")
    return rng.generator.random(n) < pr


def generate_iso_independent(n: int, rng: RngStream) -> ScreeningOrder:
    """Uniformly random screening order over n candidates."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return ScreeningOrder(rng.generator.permutation(n))


def _ordinal_ranks(scores: np.ndarray) -> np.ndarray:
    """Ranks 1..n with ties broken by candidate id (stable argsort)."""
    ranks = np.empty(scores.size, dtype=np.float64)
    ranks[np.argsort(scores, kind="stable")] = np.arange(1, scores.size + 1)
    return ranks


def generate_iso_correlated(scores: np.ndarray, rho: float, rng: RngStream) -> ScreeningOrder:
    """Screening order whose position index targets Spearman rho with scores.

    Negative rho puts high scores at early positions; rho = -1 is exactly
    descending by score, rho = +1 exactly ascending, ties broken by
    candidate id. In between, score ranks are mapped to normal scores z,
    a noise vector is projected orthogonal to z and recombined at the
    Pearson level r = 2 sin(pi*rho/6) (induced exactly per draw), and the
    final order is the ascending rank of the combination.
    """
    scores = np.asarray(scores, dtype=np.float64)
    n = scores.size
    if n < 2:
        raise ValueError("need at least two scores")
    if not -1.0 <= rho <= 1.0:
        raise ValueError("rho must lie in [-1, 1]")

    if rho == -1.0:
        return ScreeningOrder(np.lexsort((np.arange(n), -scores)))
    if rho == 1.0:
        return ScreeningOrder(np.lexsort((np.arange(n), scores)))

    z = ndtri((_ordinal_ranks(scores) - 0.5) / n)
    r = 2.0 * np.sin(np.pi * rho / 6.0)
    gen = rng.generator
    while True:
        e = gen.standard_normal(n)
        e = e - e.mean()
        e = e - (e @ z) / (z @ z) * z
        norm = np.linalg.norm(e)
        if norm > 0.0:  # degenerate residual is measure-zero; redraw
            break
    y = r * z / np.linalg.norm(z) + np.sqrt(1.0 - r * r) * e / norm
    return ScreeningOrder(np.lexsort((np.arange(n), y)))


def spearman_rho(positions: np.ndarray, scores: np.ndarray) -> float:
    """Spearman rank correlation: Pearson of average-rank vectors."""
    positions = np.asarray(positions, dtype=np.float64)
    scores = np.asarray(scores, dtype=np.float64)
    if positions.shape != scores.shape or positions.size < 2:
        raise ValueError("need two equal-length vectors of length >= 2")
    rp = rankdata(positions)
    rs = rankdata(scores)
    if np.ptp(rp) == 0.0 or np.ptp(rs) == 0.0:
        raise ValueError("rank variance is zero; correlation undefined")
    rp -= rp.mean()
    rs -= rs.mean()
    return float((rp @ rs) / np.sqrt((rp @ rp) * (rs @ rs)))
