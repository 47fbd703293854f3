"""
Decentralised control of multi-agent systems under signal temporal logic tasks.

Each agent steers the robustness of its task inside a prescribed performance
funnel, reading far agents through a k-hop state observer.
"""
from . import control, example, funnel, observer, scenario, sim, stl, topology
from ._testit import test

__version__ = "1.0.0"

__all__ = [
    "__version__",
    "control",
    "example",
    "funnel",
    "observer",
    "scenario",
    "sim",
    "stl",
    "test",
    "topology",
]
