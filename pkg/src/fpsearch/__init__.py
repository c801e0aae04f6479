"""Exact and sampled simulation of two-ancilla fixed point quantum search."""
from .algorithms import (
    OutcomeDistribution,
    RunRecord,
    SearchConfig,
    Variant,
    run_classical,
    run_deferred_measurement,
    run_fixed_point_exact,
    run_fixed_point_sampled,
    run_phase_pi3,
    run_simple_scheme,
)
from .analytics import PlanResult, error_after, plan_queries
from .database import DatabaseSpec, run_fixed_point_full

__version__ = "0.1.0"
