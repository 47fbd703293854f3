"""
Signal temporal logic fragment with quantitative semantics.

Predicate
    Concave atomic predicates (``norm2_le`` and ``linear``).
Formula
    Temporal formula ``G``, ``F`` or ``FG`` over a conjunctive body.
parse_formula
    Formula text parser.
smooth_min
    Log-sum-exp under-approximation of the minimum.
eval_robustness, grad_robustness
    Smooth robustness of a body and its gradient.
monitor_temporal
    Exact robustness of a temporal formula over a sampled trace.
"""
from ._formula import (
    ALWAYS,
    EVENTUALLY,
    EVENTUALLY_ALWAYS,
    Atom,
    Conj,
    Formula,
    TrueConst,
    body_agents,
    conjoin,
    conjuncts,
    predicates,
)
from ._monitor import body_signal, monitor_signal, monitor_temporal
from ._parser import parse_formula
from ._predicate import LINEAR, NORM2_LE, Predicate, eval_predicate, grad_predicate
from ._robustness import (
    eval_robustness,
    exact_robustness,
    grad_robustness,
    robustness_and_gradients,
    term_values,
)
from ._smooth import SmoothMinConfig, smooth_min, smooth_min_gap

__all__ = [
    "ALWAYS",
    "Atom",
    "Conj",
    "EVENTUALLY",
    "EVENTUALLY_ALWAYS",
    "Formula",
    "LINEAR",
    "NORM2_LE",
    "Predicate",
    "SmoothMinConfig",
    "TrueConst",
    "body_agents",
    "body_signal",
    "conjoin",
    "conjuncts",
    "eval_predicate",
    "eval_robustness",
    "exact_robustness",
    "grad_predicate",
    "grad_robustness",
    "monitor_signal",
    "monitor_temporal",
    "parse_formula",
    "predicates",
    "robustness_and_gradients",
    "smooth_min",
    "smooth_min_gap",
    "term_values",
]
