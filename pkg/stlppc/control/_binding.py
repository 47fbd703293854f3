from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Optional

from numpy import asarray

from .._util import ObserverError
from ..funnel import FunnelSpec
from ..stl import Formula, robustness_and_gradients
from ._transform import ErrorTransform, normalized_error


@dataclass
class TaskBinding:
    """
    A task attached to its owner together with the agents it reads.

    ``communicated`` are read from direct messages and ``estimated`` from the
    owner's observer estimates; the owner reads its own state.
    ``monitored`` is the formula checked on the true states when it differs
    from the controlled ``formula``; it defaults to ``formula``.
    """

    name: str
    agent: int
    formula: Formula
    funnel: FunnelSpec
    communicated: FrozenSet[int] = frozenset()
    estimated: FrozenSet[int] = frozenset()
    monitored: Optional[Formula] = None

    def __post_init__(self):
        self.communicated = frozenset(self.communicated)
        self.estimated = frozenset(self.estimated)
        readers = set(self.formula.agents) - {self.agent}
        if readers != self.communicated | self.estimated:
            msg = f"Task {self.name}: reader sets {sorted(self.communicated)} and"
            msg += f" {sorted(self.estimated)} do not cover {sorted(readers)}."
            raise ValueError(msg)
        if self.communicated & self.estimated:
            raise ValueError(f"Task {self.name}: an agent is both communicated and estimated.")

    @property
    def body(self):
        return self.formula.body

    @property
    def monitored_body(self):
        phi = self.formula if self.monitored is None else self.monitored
        return phi.body

    @property
    def rho_max(self):
        return self.funnel.rho_max

    @property
    def kind(self):
        return "collaborative" if self.communicated | self.estimated else "individual"

    def check_observers(self, pairs):
        """
        Raise :class:`.ObserverError` unless every estimated agent is
        observed by the owner.
        """
        pairs = set(pairs)
        for j in sorted(self.estimated):
            if (self.agent, j) not in pairs:
                msg = f"Task {self.name} of agent {self.agent} estimates agent {j},"
                raise ObserverError(msg + " which is outside its k-hop neighbourhood.")


def task_view(binding, states, observer=None):
    """
    States seen by the owner of a task: true states for itself and its
    communicated agents, its own estimates for the others.
    """
    view = {binding.agent: asarray(states[binding.agent], float)}
    for j in binding.communicated:
        view[j] = asarray(states[j], float)
    for j in binding.estimated:
        if observer is None:
            raise ObserverError(f"Task {binding.name} needs an estimate of agent {j}.")
        view[j] = observer[(binding.agent, j)]
    return view


@dataclass
class TaskEvaluation:
    """
    Funnel quantities of one task at one instant.
    """

    name: str
    rho_hat: float
    Gamma: float
    gamma: float
    error: ErrorTransform
    clamped: bool
    gradients: Dict[int, object] = field(default_factory=dict)
    raw_error: Optional[float] = None


def evaluate_task(binding, view, t, eta=10.0):
    """
    ρ̂, Γ(t), the normalised and transformed errors, and ∂ρ̂/∂x of every agent
    in ``view``.
    """
    rho_hat, grads = robustness_and_gradients(binding.body, view, sorted(view), eta)
    Gamma = binding.funnel.capital_gamma(t)
    e, clamped = normalized_error(rho_hat, binding.rho_max, Gamma, return_clamped=True)
    return TaskEvaluation(
        name=binding.name,
        rho_hat=float(rho_hat),
        Gamma=float(Gamma),
        gamma=float(binding.funnel.gamma(t)),
        error=ErrorTransform.at(e),
        clamped=clamped,
        gradients=grads,
        raw_error=(float(rho_hat) - binding.rho_max) / float(Gamma),
    )
