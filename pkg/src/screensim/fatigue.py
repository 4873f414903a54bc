"""Screener fatigue: linear effort accumulation and two error models.

Effort accumulates as phi(t) = lambda_ * t. The error added to the score
assigned at evaluation time t depends on the effort already spent,
phi(t-1), so the first evaluation is always error-free. Model eps1 is
centered with standard deviation growing in t; eps2 drifts negative with
a smaller, also growing, standard deviation. Fatigued scores are plain
additive perturbations and are never clipped back into [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass

from .sampling import RngStream

__all__ = ["FatigueModel", "accumulated_fatigue", "error_moments", "draw_epsilon"]

_KINDS = ("none", "eps1", "eps2")


@dataclass(frozen=True)
class FatigueModel:
    """Error process descriptor: none, eps1 (centered) or eps2 (biased).

    Defaults reproduce the canonical experiments: lambda_=1,
    eps1 with sd_slope=0.005, eps2 with mean_slope=-0.005 and
    sd_slope=0.001. The slopes are per unit of accumulated effort, so
    with lambda_=1 the sd at evaluation time t is sd_slope*(t-1).
    """

    kind: str = "none"
    lambda_: float = 1.0
    sd_slope: float = 0.005
    mean_slope: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown fatigue kind {self.kind!r}")
        if self.lambda_ < 0.0:
            raise ValueError("lambda_ must be >= 0")
        if self.sd_slope < 0.0:
            raise ValueError("sd_slope must be >= 0")
        if self.mean_slope > 0.0:
            raise ValueError("mean_slope must be <= 0")

    @classmethod
    def none(cls) -> FatigueModel:
        return cls(kind="none")

    @classmethod
    def eps1(cls, sd_slope: float = 0.005, lambda_: float = 1.0) -> FatigueModel:
        return cls(kind="eps1", lambda_=lambda_, sd_slope=sd_slope)

    @classmethod
    def eps2(
        cls,
        mean_slope: float = -0.005,
        sd_slope: float = 0.001,
        lambda_: float = 1.0,
    ) -> FatigueModel:
        return cls(kind="eps2", lambda_=lambda_, sd_slope=sd_slope, mean_slope=mean_slope)


def accumulated_fatigue(model: FatigueModel, t: int) -> float:
    """Effort accumulated after t evaluations: lambda_ * t."""
    if t < 0:
        raise ValueError("t must be >= 0")
    return model.lambda_ * t


def error_moments(model: FatigueModel, t: int) -> tuple[float, float]:
    """(mean, sd) of the error drawn at evaluation time t >= 1.

    Both scale with the effort accumulated before the evaluation,
    normalized by lambda_ so the slopes keep their per-evaluation meaning;
    lambda_=0 degenerates to an effortless, error-free screener.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if model.kind == "none" or model.lambda_ == 0.0:
        return 0.0, 0.0
    grown = accumulated_fatigue(model, t - 1) / model.lambda_
    if model.kind == "eps1":
        return 0.0, model.sd_slope * grown
    return model.mean_slope * grown, model.sd_slope * grown


def draw_epsilon(model: FatigueModel, t: int, rng: RngStream | None) -> float:
    """One error draw at evaluation time t; exactly 0.0 at t=1.

    Degenerate draws (sd=0) return the mean without consuming the stream,
    so kind="none" stays bit-identical to not drawing at all.
    """
    mean, sd = error_moments(model, t)
    if sd == 0.0:
        return mean
    if rng is None:
        raise ValueError("a random stream is required for a non-degenerate draw")
    return float(rng.generator.normal(mean, sd))
