import json
import os
from copy import deepcopy
from dataclasses import dataclass, replace
from typing import List, Optional

from numpy import asarray
from numpy.linalg import eigvalsh

from .._util import AssumptionError, FormulaError, ObserverError, ScenarioError
from ..control import SIGN, TRANSPOSE, TaskBinding, task_view
from ..funnel import PPF, check_rho_max, design_funnel
from ..observer import ObserverFunnels, ObserverLinks, ObserverState, init_observer, observer_links
from ..sim import ZOH, AgentDynamics, ClosedLoop, DisturbanceSpec, World
from ..stl import Atom, Predicate, conjoin, eval_robustness, parse_formula
from ..topology import AssumptionCheck, AssumptionReport, Graph, analyze_topology, task_graph
from ._schema import validate_document

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

DESIGN_CHECKS = ("rho-opt", "initialization", "feasibility", "funnel-positivity")


@dataclass(frozen=True)
class TaskSpec:
    """
    One task entry of a scenario document.
    """

    name: str
    agent: int
    text: str
    rho_max: float
    r_target: float
    gamma_width: Optional[float] = None
    t_star: Optional[float] = None
    bound_radius: Optional[float] = None


@dataclass
class Design:
    """
    Closed loop built from a scenario: funnels tuned, observer initialised.
    """

    analysis: object
    links: Optional[ObserverLinks]
    observer_funnels: Optional[ObserverFunnels]
    observer: Optional[ObserverState]
    bindings: List[TaskBinding]
    system: ClosedLoop

    def binding(self, name):
        for b in self.bindings:
            if b.name == name:
                return b
        raise KeyError(name)


class Scenario:
    """
    Multi-agent scenario: dynamics, graphs, tasks, observer and disturbance.

    The document is checked against the schema on construction; the
    closed-loop preconditions are checked by :meth:`design` and reported by
    :meth:`check`.

    Parameters
    ----------
    doc : dict
        Scenario document.
    source : str, optional
        File the document was read from.

    Example
    -------

    .. doctest::

        >>> from stlppc.scenario import load_scenario
        >>>
        >>> s = load_scenario("path_four", validate=False)
        >>> s.name, s.horizon, s.dt
        ('path_four', 3.0, 0.01)
        >>> [t.name for t in s.tasks]
        ['reach', 'home']
    """

    def __init__(self, doc, source=None):
        validate_document(doc)
        self._doc = deepcopy(doc)
        self.source = source
        self._analysis = None
        self._design = None
        self._build()

    def _build(self):
        doc = self._doc
        errors = []

        self.dynamics = {}
        self.initial_states = {}
        for k, a in enumerate(doc["agents"]):
            i = int(a["id"])
            dyn = a.get("dynamics", {})
            try:
                self.dynamics[i] = AgentDynamics(
                    a["dim"], dyn.get("drift"), dyn.get("input_matrix")
                )
            except ValueError as e:
                errors.append(f"$.agents[{k}].dynamics: {e}")
            self.initial_states[i] = asarray(a["initial_state"], float)
        self.initial_states = dict(sorted(self.initial_states.items()))
        self.dims = {i: x.shape[0] for i, x in self.initial_states.items()}

        n = len(self.dims)
        self.gc = Graph(n, [tuple(e) for e in doc["communication_edges"]])

        self.predicates = {}
        for name, p in doc["predicates"].items():
            coeffs = {int(j): c for j, c in p["coeffs"].items()}
            offset = None
            if p["kind"] == "norm2_le":
                offset = p.get("offset", [0.0] * _image_dim(coeffs, self.dims))
            try:
                self.predicates[name] = Predicate(
                    p["kind"],
                    coeffs,
                    offset=offset,
                    radius_sq=p.get("radius_sq"),
                    bias=p.get("bias"),
                    name=name,
                )
            except ValueError as e:
                errors.append(f"$.predicates.{name}: {e}")
        if errors:
            raise ScenarioError(errors)

        self.tasks = []
        self.formulas = {}
        for k, t in enumerate(doc["tasks"]):
            spec = TaskSpec(
                name=t["name"],
                agent=int(t["agent"]),
                text=t["formula"],
                rho_max=float(t["rho_max"]),
                r_target=float(t["r_target"]),
                gamma_width=t.get("gamma_width"),
                t_star=t.get("t_star"),
                bound_radius=t.get("bound_radius"),
            )
            try:
                phi = parse_formula(spec.text, self.predicates)
            except FormulaError as e:
                errors.append(f"$.tasks[{k}].formula: {e}")
                continue
            if spec.agent not in phi.agents:
                errors.append(f"$.tasks[{k}].formula: must read the state of agent {spec.agent}")
                continue
            self.tasks.append(spec)
            self.formulas[spec.name] = phi
        if errors:
            raise ScenarioError(errors)

        reads = {t.agent: self.formulas[t.name].agents for t in self.tasks}
        self.gt = task_graph(n, reads)

        obs = doc.get("observer")
        self.observer_params = None
        if obs is not None:
            self.observer_params = {
                "alpha": float(obs.get("alpha", 1.0)),
                "delta": _ppf(obs["delta"]),
                "rho": _ppf(obs["rho"]),
                "init_perturbation": float(obs.get("init_perturbation", 0.0)),
            }

        dist = doc.get("disturbance", {})
        self.disturbance = DisturbanceSpec(dist.get("bound", 0.0), dist.get("hold", 1))

        ctl = doc.get("controller", {})
        self.mode = ctl.get("mode", TRANSPOSE)
        self.signs = {int(j): float(s) for j, s in ctl.get("signs", {}).items()}

    @property
    def doc(self):
        return deepcopy(self._doc)

    @property
    def name(self):
        return self._doc["name"]

    @property
    def description(self):
        return self._doc.get("description", "")

    @property
    def horizon(self):
        return float(self._doc["horizon"])

    @property
    def dt(self):
        return float(self._doc["dt"])

    @property
    def seed(self):
        return int(self._doc.get("seed", 0))

    @property
    def eta(self):
        return float(self._doc.get("eta", 10.0))

    @property
    def coupling(self):
        return self._doc.get("coupling", ZOH)

    @property
    def agents(self):
        return list(self.dims)

    def task(self, name):
        for t in self.tasks:
            if t.name == name:
                return t
        raise KeyError(name)

    def with_overrides(self, seed=None, dt=None, eta=None, **fields):
        """
        Copy with some top-level fields replaced; ``None`` keeps a field.
        """
        doc = self.doc
        for key, value in dict(seed=seed, dt=dt, eta=eta, **fields).items():
            if value is not None:
                doc[key] = value
        return Scenario(doc, self.source)

    def analysis(self):
        """
        :class:`stlppc.topology.TopologyAnalysis` of the scenario graphs.
        """
        if self._analysis is None:
            self._analysis = analyze_topology(self.gc, self.gt)
        return self._analysis

    def design(self):
        """
        Tune every funnel and build the closed loop.

        Raises
        ------
        AssumptionError
            Naming the first precondition that fails.
        ObserverError
            If the observer funnels are inconsistent.
        """
        if self._design is None:
            self._design = self._make_design()
        return self._design

    def check(self):
        """
        Every closed-loop precondition with its verdict.

        Returns
        -------
        :class:`stlppc.topology.AssumptionReport`
            Topology checks followed by ``observer-funnels``, ``rho-opt``,
            ``initialization``, ``feasibility`` and ``funnel-positivity``.
        """
        analysis = self.analysis()
        report = AssumptionReport(list(analysis.report.checks))
        if not analysis.report.passed:
            return report

        failures = []
        try:
            design = self._make_design(failures)
        except ObserverError as e:
            report.checks.append(AssumptionCheck("observer-funnels", False, None, str(e)))
            return report

        if design.observer_funnels is not None:
            report.checks.append(AssumptionCheck("observer-funnels", True))
        for name in DESIGN_CHECKS:
            failed = [f for f in failures if f.name == name]
            report.checks.extend(failed or [AssumptionCheck(name, True)])
        if not failures:
            self._design = design
        return report

    def world(self, seed=None):
        """
        Fresh :class:`stlppc.sim.World` at the initial condition.
        """
        design = self.design()
        seed = self.seed if seed is None else seed
        return World(design.system, self.initial_states, design.observer, seed)

    def _make_design(self, failures=None):
        def fail(e, task):
            if failures is None:
                raise e
            failures.append(AssumptionCheck(e.assumption, False, task, str(e)))

        analysis = self.analysis()
        if failures is None:
            analysis.report.raise_on_failure()

        links = funnels = observer = None
        pairs = analysis.observer_pairs
        if pairs:
            if self.observer_params is None:
                msg = f"Required hop depth is {analysis.k} but the scenario has no observer."
                raise ScenarioError([f"$.observer: {msg}"])
            p = self.observer_params
            links = observer_links(self.gc, pairs)
            funnels = ObserverFunnels.uniform(pairs, p["delta"], p["rho"], p["alpha"])
            funnels.check()
            try:
                observer = init_observer(
                    links,
                    funnels,
                    self.initial_states,
                    p["init_perturbation"],
                    self.seed,
                )
            except AssumptionError as e:
                fail(e, None)
                observer = None

        horizon = self.horizon
        bindings = []
        for t in self.tasks:
            communicated, estimated = analysis.readers(t.agent)
            phi = self._augmented(t, communicated)
            try:
                check_rho_max(phi.body, t.rho_max, self.dims, self.eta)
            except AssumptionError as e:
                fail(e, t.name)
                continue

            if estimated and observer is None:
                continue
            deltas = {j: funnels.delta((t.agent, j)) for j in estimated}
            binding = TaskBinding(
                t.name,
                t.agent,
                phi,
                None,
                communicated,
                estimated,
                monitored=self.formulas[t.name],
            )
            binding.check_observers(pairs)
            view = task_view(binding, self.initial_states, observer)
            rho_hat_0 = eval_robustness(phi.body, view, self.eta)
            try:
                spec = design_funnel(
                    phi,
                    t.rho_max,
                    rho_hat_0,
                    t.r_target,
                    deltas,
                    eta=self.eta,
                    t_star=t.t_star,
                    width=t.gamma_width,
                    horizon=max(horizon, phi.end_time),
                )
            except AssumptionError as e:
                fail(e, t.name)
                continue
            bindings.append(replace(binding, funnel=spec))

        self._check_sign_mode()

        system = ClosedLoop(
            dynamics=self.dynamics,
            bindings=bindings,
            clusters=analysis.clustering.clusters,
            links=links,
            observer_funnels=funnels,
            eta=self.eta,
            mode=self.mode,
            signs=self.signs,
            coupling=self.coupling,
            disturbance=self.disturbance,
        )
        return Design(analysis, links, funnels, observer, bindings, system)

    def _augmented(self, t, communicated):
        phi = self.formulas[t.name]
        if t.bound_radius is None:
            return phi
        dims = {j: self.dims[j] for j in {t.agent} | set(communicated)}
        name = f"bound_{t.name}"
        bound = Predicate.bound(dims, t.bound_radius, name=name)
        return replace(phi, body=conjoin(phi.body, Atom(name, bound)))

    def _check_sign_mode(self):
        if self.mode != SIGN:
            return
        errors = []
        for i, dyn in self.dynamics.items():
            g = dyn.input_matrix(self.initial_states[i])
            s = self.signs.get(i, 1.0)
            if g.shape[0] != g.shape[1] or not (abs(g - g.T) < 1e-12).all():
                errors.append(f"$.controller.mode: input matrix of agent {i} is not symmetric")
            elif not (eigvalsh(s * g) > 0).all():
                errors.append(f"$.controller.signs.{i}: sign does not make g definite")
        if errors:
            raise ScenarioError(errors)

    def __repr__(self):
        return f"Scenario(name={self.name!r}, agents={len(self.dims)}, tasks={len(self.tasks)})"


def resolve_scenario(path):
    """
    File of a scenario given as a path, a path without ``.json`` or the name
    of a shipped scenario.
    """
    for p in (path, path + ".json", os.path.join(DATA_DIR, path + ".json")):
        if os.path.isfile(p):
            return p
    raise FileNotFoundError(f"No scenario found at {path}.")


def shipped_scenarios():
    return sorted(f[:-5] for f in os.listdir(DATA_DIR) if f.endswith(".json"))


def load_scenario(path, validate=True, seed=None, dt=None, eta=None):
    """
    Read a scenario document.

    Parameters
    ----------
    path : str
        Scenario file or shipped scenario name.
    validate : bool, optional
        Check every closed-loop precondition. Defaults to ``True``.
    seed, dt, eta : optional
        Overrides of the document fields.

    Returns
    -------
    :class:`.Scenario`
        The scenario, designed when ``validate`` is set.

    Raises
    ------
    ScenarioError
        If the file is not JSON or does not follow the schema.
    AssumptionError
        If a precondition fails, naming it.
    """
    filename = resolve_scenario(path)
    with open(filename) as f:
        try:
            doc = json.load(f)
        except json.JSONDecodeError as e:
            raise ScenarioError([f"$: not valid JSON (line {e.lineno}, column {e.colno})"])

    scenario = Scenario(doc, filename).with_overrides(seed=seed, dt=dt, eta=eta)
    if validate:
        scenario.design()
    return scenario


def _ppf(d):
    return PPF(d["v0"], d["v_inf"], d.get("decay", 0.0))


def _image_dim(coeffs, dims):
    for j, c in coeffs.items():
        if isinstance(c, list) and c and isinstance(c[0], list):
            return len(c)
        return dims[j]
    return 0
