"""Monte Carlo experiment engine.

Each run draws a fresh instance (scores, protected flags, screening
order) from a stream derived from (master_seed, run_index), solves the
no-fatigue ranked baseline on it, solves the compared problem/screener
pair on the same instance, and reduces per-run metrics over feasible
runs.  Fatigue noise comes from a second stream at run_index plus a
fixed offset, so the instance is identical whether or not the compared
screener is fatigued.

Aggregation walks runs in index order after all workers finish, which
makes results byte-identical for any worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .core import CandidatePool, ProblemParams, ScreeningOrder
from .fatigue import FatigueModel
from .metrics import RunMetrics, jaccard_similarity, ratio_to_baseline
from .sampling import (
    IsoSpec,
    RngStream,
    ScoreDistribution,
    generate_iso_correlated,
    generate_iso_independent,
    sample_protected,
    sample_truncated_normal,
)
from .search import cascade_search, examination_search, fairness_fraction

__all__ = [
    "FATIGUE_STREAM_OFFSET",
    "PROBLEMS",
    "SCREENERS",
    "SWEEP_PARAMS",
    "SweepCell",
    "SweepConfig",
    "AggregateResult",
    "run_one",
    "run_sweep",
    "figure_suite",
]

# keeps fatigue draws on streams that instance generation can never touch
FATIGUE_STREAM_OFFSET = 1 << 48

PROBLEMS = ("best_k", "good_k")
SCREENERS = ("algorithmic", "human_like")
SWEEP_PARAMS = ("psi", "q", "rho")


@dataclass(frozen=True)
class SweepConfig:
    """One experiment: a fixed instance family and a compared solver.

    `sweep` optionally names one parameter (psi, q, or rho) and the grid
    of values to run it over; every grid cell reuses the same per-run
    streams, so cells differ only through the swept parameter.
    """

    config_id: str = "adhoc"
    n: int = 120
    k: int = 6
    pr: float = 0.2
    dist: ScoreDistribution = ScoreDistribution(0.5, 0.02)
    iso: IsoSpec = IsoSpec("independent")
    params: ProblemParams = ProblemParams(6, 0.5)
    fatigue: FatigueModel = FatigueModel.none()
    compared: tuple[str, str] = ("best_k", "algorithmic")
    runs: int = 10_000
    master_seed: int = 0
    sweep: tuple[str, tuple[float, ...]] | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.k != self.params.k:
            raise ValueError("k and params.k disagree")
        if self.k > self.n:
            raise ValueError("k cannot exceed n")
        if not 0.0 <= self.pr <= 1.0:
            raise ValueError("pr must lie in [0, 1]")
        if self.runs < 1:
            raise ValueError("runs must be at least 1")
        problem, screener = self.compared
        if problem not in PROBLEMS:
            raise ValueError(f"unknown problem {problem!r}")
        if screener not in SCREENERS:
            raise ValueError(f"unknown screener {screener!r}")
        if self.sweep is not None:
            param, values = self.sweep
            if param not in SWEEP_PARAMS:
                raise ValueError(f"unknown sweep parameter {param!r}")
            if len(values) == 0:
                raise ValueError("sweep needs at least one value")
            if param == "rho":
                if self.iso.kind != "correlated":
                    raise ValueError("rho sweep requires a correlated ISO")
                lo, hi = -1.0, 1.0
            else:
                lo, hi = 0.0, 1.0
            for v in values:
                if not lo <= v <= hi:
                    raise ValueError(f"sweep value {v} outside [{lo}, {hi}]")

    def with_value(self, value: float) -> "SweepConfig":
        """The config for one sweep cell: swept parameter pinned to value."""
        if self.sweep is None:
            raise ValueError("config has no sweep")
        param = self.sweep[0]
        if param == "psi":
            params = replace(self.params, psi=value)
            return replace(self, params=params, sweep=None)
        if param == "q":
            params = replace(self.params, q=value)
            return replace(self, params=params, sweep=None)
        return replace(self, iso=IsoSpec("correlated", value), sweep=None)

    @property
    def q(self) -> float:
        return self.params.q

    @property
    def psi(self) -> float:
        return self.params.psi


@dataclass(frozen=True)
class SweepCell:
    """Aggregate over one sweep value (or the whole config if sweepless).

    Means are over feasible runs only and None when no run was feasible;
    standard deviations are sample deviations and None below 2 runs.
    """

    sweep_value: float | None
    runs_total: int
    runs_feasible: int
    mean_rtb: float | None
    sd_rtb: float | None
    mean_jds: float | None
    sd_jds: float | None
    mean_frac_protected: float | None
    mean_evaluated_count: float | None


@dataclass(frozen=True)
class AggregateResult:
    config: SweepConfig
    cells: tuple[SweepCell, ...]


def _build_instance(
    config: SweepConfig, run_index: int
) -> tuple[CandidatePool, ScreeningOrder]:
    stream = RngStream(config.master_seed, run_index)
    scores = sample_truncated_normal(config.dist, config.n, stream)
    protected = sample_protected(config.pr, config.n, stream)
    if config.iso.kind == "independent":
        order = generate_iso_independent(config.n, stream)
    else:
        order = generate_iso_correlated(scores, config.iso.rho, stream)
    return CandidatePool(scores, protected), order


def run_one(config: SweepConfig, run_index: int) -> RunMetrics:
    """One Monte Carlo run; feasible=False marks a discarded run.

    The baseline is always the no-fatigue ranked search on the same
    instance.  A run is discarded when either solve is infeasible.
    """
    pool, order = _build_instance(config, run_index)
    baseline = examination_search(pool, order, config.params).selection

    problem, screener = config.compared
    if screener == "human_like" and config.fatigue.kind != "none":
        fatigue = config.fatigue
        fatigue_rng = RngStream(config.master_seed, run_index + FATIGUE_STREAM_OFFSET)
    else:
        fatigue, fatigue_rng = None, None

    if problem == "best_k":
        compared = examination_search(pool, order, config.params, fatigue, fatigue_rng)
    else:
        compared = cascade_search(pool, order, config.params, fatigue, fatigue_rng)
    selection = compared.selection

    if not baseline.feasible or not selection.feasible:
        return RunMetrics.discarded()
    return RunMetrics(
        rtb=ratio_to_baseline(selection, baseline, pool),
        jds=jaccard_similarity(selection, baseline),
        frac_protected=fairness_fraction(selection, pool),
        evaluated_count=selection.evaluated_count,
    )


def _run_block(config: SweepConfig, start: int, stop: int) -> list[RunMetrics]:
    return [run_one(config, i) for i in range(start, stop)]


def _collect_runs(config: SweepConfig, threads: int) -> list[RunMetrics]:
    if threads == 0:
        threads = os.cpu_count() or 1
    if threads == 1 or config.runs == 1:
        return _run_block(config, 0, config.runs)
    block = max(1, math.ceil(config.runs / (threads * 4)))
    bounds = [(s, min(s + block, config.runs)) for s in range(0, config.runs, block)]
    out: list[RunMetrics | None] = [None] * config.runs
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(_run_block, config, s, e) for s, e in bounds]
        for (s, e), fut in zip(bounds, futures):
            out[s:e] = fut.result()
    return out


def _reduce(results: list[RunMetrics], sweep_value: float | None) -> SweepCell:
    feasible = [m for m in results if m.feasible]
    total, kept = len(results), len(feasible)
    if kept == 0:
        return SweepCell(sweep_value, total, 0, None, None, None, None, None, None)
    rtb = np.array([m.rtb for m in feasible])
    jds = np.array([m.jds for m in feasible])
    frac = np.array([m.frac_protected for m in feasible])
    evaluated = np.array([m.evaluated_count for m in feasible], dtype=np.float64)
    return SweepCell(
        sweep_value=sweep_value,
        runs_total=total,
        runs_feasible=kept,
        mean_rtb=float(rtb.mean()),
        sd_rtb=float(rtb.std(ddof=1)) if kept > 1 else None,
        mean_jds=float(jds.mean()),
        sd_jds=float(jds.std(ddof=1)) if kept > 1 else None,
        mean_frac_protected=float(frac.mean()),
        mean_evaluated_count=float(evaluated.mean()),
    )


def run_sweep(config: SweepConfig, threads: int = 1) -> AggregateResult:
    """Run every sweep cell; never raises on infeasibility.

    threads=0 picks the CPU count; any thread count yields identical
    results because runs are keyed by index, not completion order.
    """
    if threads < 0:
        raise ValueError("threads must be >= 0")
    if config.sweep is None:
        cells = [_reduce(_collect_runs(config, threads), None)]
    else:
        cells = []
        for value in config.sweep[1]:
            cell_config = config.with_value(value)
            cells.append(_reduce(_collect_runs(cell_config, threads), value))
    return AggregateResult(config, tuple(cells))


_PSI_GRID = tuple(round(0.05 * i, 2) for i in range(12))  # 0.0 .. 0.55
_Q_GRID = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5)
_RHO_GRID = (-1.0, -0.75, -0.5, -0.25, 0.0)

_SYM = ScoreDistribution(0.5, 0.02)
_ASYM = ScoreDistribution(0.8, 0.05)
_INCR = ScoreDistribution(1.0, 0.05)
_DISTS = (("sym", _SYM), ("asym", _ASYM), ("incr", _INCR))


def figure_suite() -> list[SweepConfig]:
    """The frozen experiment grid behind the shipped figures."""
    configs: list[SweepConfig] = []

    def add(config_id: str, **kwargs) -> None:
        configs.append(SweepConfig(config_id=config_id, master_seed=1, **kwargs))

    psi_sweep = ("psi", _PSI_GRID)
    for tag, dist in _DISTS:
        add(f"fig1-rtb-jds-{tag}", dist=dist, compared=("good_k", "algorithmic"),
            sweep=psi_sweep)
    for n, k in ((400, 20), (30, 6)):
        add(f"fig1-nk-{n}-{k}", n=n, k=k, params=ProblemParams(k, 0.5),
            compared=("good_k", "algorithmic"), sweep=psi_sweep)
    for tag, dist in (("sym", _SYM), ("incr", _INCR)):
        for rho in _RHO_GRID:  # all non-positive, so magnitude names them
            suffix = f"{abs(rho):.2f}".replace(".", "")
            add(f"fig1-rho-{tag}-r{suffix}", dist=dist,
                iso=IsoSpec("correlated", rho),
                compared=("good_k", "algorithmic"), sweep=psi_sweep)
    for tag, dist in _DISTS:
        add(f"fig4-eps1-{tag}", dist=dist, fatigue=FatigueModel.eps1(),
            compared=("good_k", "human_like"), sweep=psi_sweep)
        add(f"fig4-eps2-{tag}", dist=dist, fatigue=FatigueModel.eps2(),
            compared=("good_k", "human_like"), sweep=psi_sweep)
    for tag, dist in _DISTS:
        add(f"fig4-bestk-q-{tag}", dist=dist, fatigue=FatigueModel.eps1(),
            compared=("best_k", "human_like"), sweep=("q", (0.0, 0.25, 0.5)))
    add("fig3-q-frac-sym", n=400, k=20, params=ProblemParams(20, 0.5),
        dist=_SYM, compared=("best_k", "algorithmic"), sweep=("q", _Q_GRID))
    add("fig3-q-rtb-incr", n=400, k=20, params=ProblemParams(20, 0.5, 0.5),
        dist=_INCR, compared=("good_k", "algorithmic"), sweep=("q", _Q_GRID))
    return configs
