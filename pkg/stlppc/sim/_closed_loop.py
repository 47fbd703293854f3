from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional

from numpy import abs as npabs, asarray, concatenate

from .._util import FunnelError
from ..control import TRANSPOSE, assemble_input, evaluate_task, task_view
from ..observer import ObserverFunnels, ObserverLinks, observer_rhs, observer_xi
from ._disturbance import DisturbanceSpec
from ._dynamics import AgentDynamics

ZOH = "zoh"
STAGEWISE = "stagewise"


@dataclass
class ClosedLoop:
    """
    Plant, observer and controller of a multi-agent run.

    With ``coupling="zoh"`` the inputs, the disturbance and the exchanged
    messages are frozen at the start of each step; with ``"stagewise"`` the
    inputs and messages are recomputed at every integration stage.
    """

    dynamics: Dict[int, AgentDynamics]
    bindings: list
    clusters: List[FrozenSet[int]]
    links: Optional[ObserverLinks] = None
    observer_funnels: Optional[ObserverFunnels] = None
    eta: float = 10.0
    mode: str = TRANSPOSE
    signs: Dict[int, float] = field(default_factory=dict)
    coupling: str = ZOH
    disturbance: DisturbanceSpec = field(default_factory=DisturbanceSpec)

    def __post_init__(self):
        if self.coupling not in (ZOH, STAGEWISE):
            raise ValueError(f"Unknown coupling: {self.coupling}.")
        self.clusters = [frozenset(c) for c in self.clusters]
        self._cluster_of = {i: c for c in self.clusters for i in c}
        missing = set(self.dynamics) - set(self._cluster_of)
        if missing:
            raise ValueError(f"Agents {sorted(missing)} belong to no cluster.")

    @property
    def agents(self):
        return sorted(self.dynamics)

    @property
    def pairs(self):
        return [] if self.links is None else self.links.pairs

    def dims(self):
        return {i: d.dim for i, d in sorted(self.dynamics.items())}

    def cluster_tasks(self, i):
        """
        Tasks owned by the agents of the cluster of ``i``.
        """
        members = self._cluster_of[i]
        return [b for b in self.bindings if b.agent in members]

    def evaluate(self, t, states, observer):
        """
        Task name to :class:`.TaskEvaluation` from one snapshot.
        """
        return {
            b.name: evaluate_task(b, task_view(b, states, observer), t, self.eta)
            for b in self.bindings
        }

    def collapsed_funnels(self, t):
        """
        Task name to Γ(t) for every task whose funnel width is not positive
        at ``t``. An infeasible margin maps to NaN.
        """
        out = {}
        for b in self.bindings:
            try:
                Gamma = float(b.funnel.capital_gamma(t))
            except FunnelError:
                Gamma = float("nan")
            if not Gamma > 0:
                out[b.name] = Gamma
        return out

    def inputs(self, states, evaluations):
        """
        Agent id to control input, every agent reading the same snapshot.
        """
        u = {}
        for i in self.agents:
            members = self._cluster_of[i]
            evals = [evaluations[b.name] for b in self.bindings if b.agent in members]
            g = self.dynamics[i].input_matrix(states[i])
            u[i] = assemble_input(i, evals, g, self.mode, self.signs.get(i, 1.0))
        return u

    def plant_derivative(self, states, inputs, disturbance):
        dx = {}
        for i in self.agents:
            dyn = self.dynamics[i]
            x = states[i]
            dx[i] = dyn.drift(x) + dyn.input_matrix(x) @ inputs[i] + disturbance[i]
        return dx

    def observer_derivative(self, t, own, shared, relayed):
        """
        Estimate derivatives of every pair.

        ``own`` holds the estimates being integrated, ``shared`` the estimates
        received from neighbours and ``relayed`` the true states relayed by
        neighbours.

        Returns
        -------
        dxhat : dict
            Pair to estimate derivative.
        clamped : set
            Pairs whose residual left its funnel.
        """
        dxhat = {}
        clamped = set()
        for pair in self.pairs:
            i, r = pair
            consensus = self.links.consensus[pair]
            anchors = self.links.anchors[pair]
            xi = observer_xi(
                i,
                r,
                own[pair],
                {l: shared[(l, r)] for l in consensus},
                relayed[r] if anchors > 0 else None,
                anchors,
                consensus,
            )
            rho_t = self.observer_funnels.rho(pair).value(t)
            dxhat[pair], hit = observer_rhs(xi, rho_t, return_clamped=True)
            if hit:
                clamped.add(pair)
        return dxhat, clamped

    def residual_violations(self, t, states, observer):
        """
        Pairs with |ξ| ≥ ρ(t) in some component.
        """
        if not self.pairs:
            return []
        out = []
        for pair in self.pairs:
            i, r = pair
            consensus = self.links.consensus[pair]
            anchors = self.links.anchors[pair]
            xi = observer_xi(
                i,
                r,
                observer[pair],
                {l: observer[(l, r)] for l in consensus},
                states[r] if anchors > 0 else None,
                anchors,
                consensus,
            )
            if not (npabs(xi) < self.observer_funnels.rho(pair).value(t)).all():
                out.append(pair)
        return out

    def pack(self, states, observer):
        parts = [asarray(states[i], float) for i in self.agents]
        if observer is not None and len(observer):
            parts.append(observer.as_vector())
        return concatenate(parts)

    def pack_rates(self, dx, dxhat):
        parts = [asarray(dx[i], float) for i in self.agents]
        parts.extend(asarray(dxhat[p], float) for p in self.pairs)
        return concatenate(parts)

    def unpack(self, y, observer):
        states = {}
        k = 0
        for i, n in self.dims().items():
            states[i] = y[k : k + n]
            k += n
        if observer is not None and len(observer):
            observer = observer.with_vector(y[k:])
        return states, observer
