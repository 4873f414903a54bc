"""Fair top-k screening simulator.

Generates candidate pools with protected-group labels, runs ranked and
sequential threshold screeners under representational quotas and
optional screener fatigue, and aggregates utility/overlap metrics over
Monte Carlo sweeps.
"""

from .core import (
    Candidate,
    CandidatePool,
    ProblemParams,
    ScreeningOrder,
    Selection,
    position_of,
    quota_targets,
)
from .fatigue import FatigueModel, accumulated_fatigue, draw_epsilon, error_moments
from .harness import (
    AggregateResult,
    SweepCell,
    SweepConfig,
    figure_suite,
    run_one,
    run_sweep,
)
from .metrics import RunMetrics, jaccard_similarity, ratio_to_baseline
from .oracle import OracleResult, brute_force_best_k, brute_force_good_k
from .sampling import (
    IsoSpec,
    RngStream,
    ScoreDistribution,
    generate_iso_correlated,
    generate_iso_independent,
    sample_protected,
    sample_truncated_normal,
    spearman_rho,
)
from .search import (
    SearchOutcome,
    cascade_search,
    examination_search,
    fairness_fraction,
    penalty,
    utility_add,
    utility_psi,
    utility_saved_effort,
)

__version__ = "0.1.0"

__all__ = [
    "Candidate",
    "CandidatePool",
    "ProblemParams",
    "ScreeningOrder",
    "Selection",
    "position_of",
    "quota_targets",
    "FatigueModel",
    "accumulated_fatigue",
    "draw_epsilon",
    "error_moments",
    "AggregateResult",
    "SweepCell",
    "SweepConfig",
    "figure_suite",
    "run_one",
    "run_sweep",
    "RunMetrics",
    "jaccard_similarity",
    "ratio_to_baseline",
    "OracleResult",
    "brute_force_best_k",
    "brute_force_good_k",
    "IsoSpec",
    "RngStream",
    "ScoreDistribution",
    "generate_iso_correlated",
    "generate_iso_independent",
    "sample_protected",
    "sample_truncated_normal",
    "spearman_rho",
    "SearchOutcome",
    "cascade_search",
    "examination_search",
    "fairness_fraction",
    "penalty",
    "utility_add",
    "utility_psi",
    "utility_saved_effort",
    "__version__",
]
