"""
Scenario documents, verification reports, plots and the command line.

Scenario, load_scenario
    Scenario document, its closed-loop design and precondition checks.
validate_document
    Schema check with JSON paths.
Report, verify_trace
    Verdicts re-derived from a recorded trace.
run_scenario
    Simulate and verify.
plot_trace
    SVG panels of a run.
main
    ``stlppc`` command line.
"""
from ._cli import main, run_scenario, topology_text
from ._plot import PANELS, plot_trace
from ._report import ClusterVerdict, Report, TaskVerdict, verify_trace
from ._scenario import (
    Design,
    Scenario,
    TaskSpec,
    load_scenario,
    resolve_scenario,
    shipped_scenarios,
)
from ._schema import validate_document

__all__ = [
    "ClusterVerdict",
    "Design",
    "PANELS",
    "Report",
    "Scenario",
    "TaskSpec",
    "TaskVerdict",
    "load_scenario",
    "main",
    "plot_trace",
    "resolve_scenario",
    "run_scenario",
    "shipped_scenarios",
    "topology_text",
    "validate_document",
    "verify_trace",
]
