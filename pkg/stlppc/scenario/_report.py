import json
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from numpy import asarray, empty, inf, isfinite

from .._util import TraceFormatError
from ..control import task_view
from ..observer import ObserverBoundsReport, scan_observer_bounds
from ..sim import FaultLog
from ..stl import eval_robustness, monitor_temporal
from ..topology import AssumptionReport


@dataclass
class TaskVerdict:
    """
    Temporal robustness of a task on the true states, and whether its
    normalised error stayed inside (-1, 0).
    """

    name: str
    agent: int
    robustness: float
    funnel_ok: bool
    error_min: float
    error_max: float
    first_funnel_violation: Optional[float] = None

    @property
    def satisfied(self):
        return self.robustness > 0

    @property
    def passed(self):
        return self.satisfied and self.funnel_ok

    def as_dict(self):
        return {
            "name": self.name,
            "agent": self.agent,
            "robustness": self.robustness,
            "satisfied": self.satisfied,
            "funnel_ok": self.funnel_ok,
            "error_range": [self.error_min, self.error_max],
            "first_funnel_violation": self.first_funnel_violation,
        }


@dataclass
class ClusterVerdict:
    index: int
    members: Tuple[int, ...]
    tasks: Tuple[str, ...]
    robustness: float

    @property
    def satisfied(self):
        return self.robustness > 0

    def as_dict(self):
        return {
            "cluster": self.index,
            "members": list(self.members),
            "tasks": list(self.tasks),
            "robustness": self.robustness if isfinite(self.robustness) else None,
            "satisfied": self.satisfied,
        }


@dataclass
class Report:
    """
    Verdicts of one run.

    It passes when every assumption holds, every task is satisfied with its
    error inside the funnel, every estimate stays inside δ and no runtime
    fault was logged.
    """

    scenario: str
    seed: int
    dt: float
    assumptions: AssumptionReport
    tasks: List[TaskVerdict] = field(default_factory=list)
    observers: ObserverBoundsReport = field(default_factory=ObserverBoundsReport)
    clusters: List[ClusterVerdict] = field(default_factory=list)
    faults: FaultLog = field(default_factory=FaultLog)

    @property
    def passed(self):
        return (
            self.assumptions.passed
            and bool(self.tasks)
            and all(t.passed for t in self.tasks)
            and self.observers.passed
            and not self.faults
        )

    def task(self, name):
        for t in self.tasks:
            if t.name == name:
                return t
        raise KeyError(name)

    def as_dict(self):
        return {
            "scenario": self.scenario,
            "seed": self.seed,
            "dt": self.dt,
            "passed": self.passed,
            "assumptions": self.assumptions.as_dict(),
            "tasks": [t.as_dict() for t in self.tasks],
            "observers": self.observers.as_dict(),
            "clusters": [c.as_dict() for c in self.clusters],
            "faults": self.faults.summary(),
        }

    def write_json(self, path):
        with open(path, "w") as fp:
            json.dump(self.as_dict(), fp, indent=2)

    def to_text(self):
        lines = [f"scenario {self.scenario}  seed {self.seed}  dt {self.dt:g}"]
        lines.append(f"assumptions: {_verdict(self.assumptions.passed)}")
        for c in self.assumptions.checks:
            line = f"  {c.name:<18} {_verdict(c.passed)}"
            lines.append(line if c.passed else f"{line}  {c.message}")

        if self.tasks:
            lines.append("tasks:")
        for t in self.tasks:
            line = f"  {t.name:<10} agent {t.agent}  robustness {t.robustness:+.6f}"
            line += f"  funnel {_verdict(t.funnel_ok)}"
            if t.first_funnel_violation is not None:
                line += f" (left at t={t.first_funnel_violation:g})"
            lines.append(line)

        if self.observers.pairs:
            worst = max(p.error_norm / p.delta for p in self.observers.pairs)
            lines.append(
                f"observers: {_verdict(self.observers.passed)}"
                f" ({len(self.observers.pairs)} pairs, worst |error|/delta {worst:.3f})"
            )
        for p in self.observers.failures():
            lines.append(f"  {p.pair[0]}->{p.pair[1]} left delta at t={p.first_violation:g}")

        if self.clusters:
            lines.append("clusters (leaves first):")
        for c in self.clusters:
            members = ", ".join(map(str, c.members))
            state = "satisfied" if c.satisfied else "violated"
            lines.append(f"  C{c.index} {{{members}}}  {state}")

        s = self.faults.summary()
        if s["count"]:
            kinds = ", ".join(f"{k} {n}" for k, n in sorted(s["by_kind"].items()))
            lines.append(f"faults: {s['count']} ({kinds})")
        else:
            lines.append("faults: none")
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def verify_trace(trace, scenario, faults=None):
    """
    Re-derive every verdict of a run from its trace.

    Task robustness is monitored on the true-state columns, the funnel error
    is recomputed from the owner's view (true states and estimate columns),
    and the estimation errors are checked against δ. The runtime fault log
    enters only through ``faults``.

    Parameters
    ----------
    trace : :class:`stlppc.sim.Trace`
        Recorded run.
    scenario : :class:`.Scenario`
        Scenario the trace was produced from.
    faults : FaultLog, optional
        Runtime faults to report. Defaults to the faults of ``trace``.

    Returns
    -------
    :class:`.Report`
        Verdicts of the run.

    Raises
    ------
    TraceFormatError
        If the trace columns do not match the scenario.
    ValueError
        If a task window exceeds the trace horizon.
    """
    faults = trace.faults if faults is None else faults
    assumptions = scenario.check()
    report = Report(scenario.name, scenario.seed, trace.dt, assumptions, faults=faults)
    if not assumptions.passed:
        return report

    design = scenario.design()
    _check_columns(trace, scenario, design)
    if not trace.is_uniform():
        raise TraceFormatError("Trace sampling is not uniform.")

    times = trace.times
    states = trace.states()
    estimates = {pair: trace.estimate(*pair) for pair in design.system.pairs}

    for t in scenario.tasks:
        phi = scenario.formulas[t.name]
        rho = monitor_temporal(phi, times, {j: states[j] for j in phi.agents})
        ok, lo, hi, first = _funnel_containment(
            design.binding(t.name), times, states, estimates, scenario.eta
        )
        report.tasks.append(TaskVerdict(t.name, t.agent, rho, ok, lo, hi, first))

    if design.system.pairs:
        errors = {(i, r): est - states[r] for (i, r), est in estimates.items()}
        report.observers = scan_observer_bounds(times, errors, design.observer_funnels)

    robustness = {v.agent: v.robustness for v in report.tasks}
    clustering = design.analysis.clustering
    for c in design.analysis.order:
        members = tuple(sorted(clustering.clusters[c]))
        owned = [t for t in scenario.tasks if t.agent in members]
        value = min((robustness[t.agent] for t in owned), default=inf)
        report.clusters.append(
            ClusterVerdict(c + 1, members, tuple(t.name for t in owned), value)
        )
    return report


def _funnel_containment(binding, times, states, estimates, eta):
    n = times.shape[0]
    rho_hat = empty(n)
    for k in range(n):
        snapshot = {j: states[j][k] for j in states}
        observer = {(binding.agent, j): estimates[(binding.agent, j)][k] for j in binding.estimated}
        view = task_view(binding, snapshot, observer)
        rho_hat[k] = eval_robustness(binding.body, view, eta)

    Gamma = asarray(binding.funnel.capital_gamma(times), float)
    e = (rho_hat - binding.rho_max) / Gamma
    inside = (Gamma > 0) & (e > -1) & (e < 0)
    first = None if inside.all() else float(times[(~inside).argmax()])
    return bool(inside.all()), float(e.min()), float(e.max()), first


def _check_columns(trace, scenario, design):
    problems = []
    if trace.agents() != scenario.agents:
        problems.append(f"agents {trace.agents()} instead of {scenario.agents}")
    else:
        for i, n in scenario.dims.items():
            if trace.state(i).shape[1] != n:
                problems.append(f"agent {i} has {trace.state(i).shape[1]} state columns")
    pairs = sorted(design.system.pairs)
    if trace.pairs() != pairs:
        problems.append(f"observer pairs {trace.pairs()} instead of {pairs}")
    missing = sorted({t.name for t in scenario.tasks} - set(trace.tasks()))
    if missing:
        problems.append(f"no columns for tasks {missing}")
    if problems:
        raise TraceFormatError("Column mismatch: " + "; ".join(problems) + ".")


def _verdict(ok):
    return "pass" if ok else "fail"
