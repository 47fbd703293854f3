from ._numbers import clamp_open
from .check import (
    check_agent_ids,
    check_interval,
    check_nonnegative,
    check_positive,
    check_vector,
)
from .errors import (
    AssumptionError,
    FormulaError,
    FunnelError,
    ObserverError,
    ScenarioError,
    TopologyError,
    TraceFormatError,
)
from .format import format_object

__all__ = [
    "AssumptionError",
    "FormulaError",
    "FunnelError",
    "ObserverError",
    "ScenarioError",
    "TopologyError",
    "TraceFormatError",
    "check_agent_ids",
    "check_interval",
    "check_nonnegative",
    "check_positive",
    "check_vector",
    "clamp_open",
    "format_object",
]
