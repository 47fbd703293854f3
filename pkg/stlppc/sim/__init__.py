"""
Closed-loop simulation of plant, observer and controller.

AgentDynamics, eval_drift, eval_g
    Control-affine agent dynamics.
DisturbanceSpec, sample_disturbance
    Bounded piecewise-constant disturbance.
ClosedLoop
    Plant, observer and controller of a run.
World, step, run, rk4_step
    Fixed-step RK4 integration.
Trace
    Sampled run with CSV I/O.
FaultLog
    Runtime faults and their warning categories.
"""
from ._closed_loop import STAGEWISE, ZOH, ClosedLoop
from ._disturbance import DisturbanceSpec, DisturbanceStream, sample_disturbance
from ._dynamics import AgentDynamics, eval_drift, eval_g
from ._faults import Fault, FaultLog, FunnelFault, IntegrationFault, ObserverFault
from ._trace import FAULTS_FILE, TRACE_FILE, Trace
from ._world import World, rk4_step, run, step

__all__ = [
    "AgentDynamics",
    "ClosedLoop",
    "DisturbanceSpec",
    "DisturbanceStream",
    "FAULTS_FILE",
    "Fault",
    "FaultLog",
    "FunnelFault",
    "IntegrationFault",
    "ObserverFault",
    "STAGEWISE",
    "TRACE_FILE",
    "Trace",
    "World",
    "ZOH",
    "eval_drift",
    "eval_g",
    "rk4_step",
    "run",
    "sample_disturbance",
    "step",
]
