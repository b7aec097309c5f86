"""Partitions with divisor-function gaps: exact tables, Dirichlet series and saddle-point asymptotics."""

from ._sigmapart import (
    BudgetError,
    ConfigError,
    D1,
    F_partial,
    InvariantError,
    build_table,
    constant_C,
    exact_distribution,
    ks_trend,
    mean_variance_saddle,
    multiplicative_basics,
    ramanujan_sum,
    run_cli,
    shifted_ramanujan_identity_residual,
    sigma_r,
    solve_saddle,
)

__all__ = [
    "BudgetError",
    "ConfigError",
    "D1",
    "F_partial",
    "InvariantError",
    "build_table",
    "constant_C",
    "exact_distribution",
    "ks_trend",
    "mean_variance_saddle",
    "multiplicative_basics",
    "ramanujan_sum",
    "run_cli",
    "shifted_ramanujan_identity_residual",
    "sigma_r",
    "solve_saddle",
]
