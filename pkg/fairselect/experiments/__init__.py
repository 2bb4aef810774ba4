from .config import ExperimentConfig
from .harness import run_lambda_sweep, run_selection_experiment
from .metrics import MetricsRow, SweepRow
from .studies import (
    CounterexampleResult,
    DeviationStudy,
    estimate_deviation_rate,
    run_extreme_value_study,
    verify_counterexample,
)

__all__ = [
    "CounterexampleResult",
    "DeviationStudy",
    "ExperimentConfig",
    "MetricsRow",
    "SweepRow",
    "estimate_deviation_rate",
    "run_extreme_value_study",
    "run_lambda_sweep",
    "run_selection_experiment",
    "verify_counterexample",
]
