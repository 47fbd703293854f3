"""
Prescribed performance funnels for temporal tasks.

PPF
    Exponential prescribed performance function.
Margin
    Worst-case robustness loss under bounded estimation errors.
FunnelSpec
    Adjusted funnel Γ = γ − ρᵗ of a task.
tune_gamma, design_funnel
    Explicit γ tuning rule per conjunct and per task.
rho_opt, check_rho_max
    Supremum of the smooth robustness and the ρ^max < ρ^opt check.
"""
from ._margin import Margin, MarginTerm, margin_eval
from ._ppf import PPF, ppf_deriv, ppf_eval
from ._spec import FunnelSpec, capital_gamma, capital_gamma_deriv
from ._tune import (
    GRID_POINTS,
    SmoothRobustness,
    check_rho_max,
    design_funnel,
    rho_opt,
    tune_gamma,
)

__all__ = [
    "FunnelSpec",
    "GRID_POINTS",
    "Margin",
    "MarginTerm",
    "PPF",
    "SmoothRobustness",
    "capital_gamma",
    "capital_gamma_deriv",
    "check_rho_max",
    "design_funnel",
    "margin_eval",
    "ppf_deriv",
    "ppf_eval",
    "rho_opt",
    "tune_gamma",
]
