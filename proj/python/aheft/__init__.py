"""Adaptive-initialization variational eigensolver laboratory."""

from ._aheft import (
    ScheduleConfig,
    energy,
    gradient,
    ground_energy,
    op_norm_bound,
    param_count,
    reference_gap,
    run_experiment_json,
    sigma_crit,
    sigma_zero,
    statevector,
    theory_constants,
    train,
    welch_test,
)

__all__ = [
    "ScheduleConfig",
    "energy",
    "gradient",
    "ground_energy",
    "op_norm_bound",
    "param_count",
    "reference_gap",
    "run_experiment_json",
    "sigma_crit",
    "sigma_zero",
    "statevector",
    "theory_constants",
    "train",
    "welch_test",
]
