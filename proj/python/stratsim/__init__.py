"""Meeting-scheduling simulation under egalitarian, hierarchical and mobile execution orders."""

from ._core import (
    ConfigError,
    FormatError,
    InvariantError,
    ModelConfig,
    RunResult,
    StepRecord,
    correlation_bins,
    decile_advantage,
    expand_sweep,
    kendall_tau,
    kendall_tau_count,
    load_results,
    preferential_comparison,
    run,
    run_id,
    run_sweep,
    top_k_intersection,
    winner_table,
)

__all__ = [
    "ConfigError",
    "FormatError",
    "InvariantError",
    "ModelConfig",
    "RunResult",
    "StepRecord",
    "correlation_bins",
    "decile_advantage",
    "expand_sweep",
    "kendall_tau",
    "kendall_tau_count",
    "load_results",
    "preferential_comparison",
    "run",
    "run_id",
    "run_sweep",
    "top_k_intersection",
    "winner_table",
]
