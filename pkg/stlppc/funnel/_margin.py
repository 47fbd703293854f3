from numpy import asarray, maximum, ndim, zeros_like

from .._util import FunnelError
from ..stl import NORM2_LE, Atom, conjuncts


class MarginTerm:
    """
    Worst-case robustness loss of one predicate under bounded estimation
    errors.

    With Δ(t) = Σⱼ ‖𝙲ⱼ‖₂δⱼ(t) over the estimated agents, a ``norm2_le``
    predicate loses at most 2Δr − Δ² (which requires Δ < r), its negation at
    most 2Δr + Δ², and a ``linear`` predicate (either polarity) at most
    Σⱼ ‖𝐚ⱼ‖₁δⱼ(t).

    Parameters
    ----------
    predicate : Predicate
        The predicate.
    deltas : dict
        Estimated agent id to its error bound δⱼ (a :class:`.PPF`).
    negated : bool
        Polarity of the predicate in the body.
    """

    def __init__(self, predicate, deltas, negated=False):
        self._pred = predicate
        self._negated = bool(negated)
        self._deltas = {}
        self._gains = {}
        for j, d in deltas.items():
            if not predicate.reads(j):
                continue
            self._deltas[j] = d
            self._gains[j] = predicate.coeff_norm(j)

    @property
    def predicate(self):
        return self._pred

    @property
    def agents(self):
        return tuple(sorted(self._deltas))

    def aggregate(self, t):
        """
        Δ(t), the worst-case error of the predicate argument.
        """
        total = 0.0
        for j, d in self._deltas.items():
            total = total + self._gains[j] * d.value(t)
        return total

    def aggregate_limit(self):
        return sum(self._gains[j] * d.v_inf for j, d in self._deltas.items())

    def aggregate_deriv(self, t):
        total = 0.0
        for j, d in self._deltas.items():
            total = total + self._gains[j] * d.derivative(t)
        return total

    def value(self, t):
        return self._from_aggregate(self.aggregate(t))

    def limit(self):
        return self._from_aggregate(self.aggregate_limit())

    def derivative(self, t):
        D = self.aggregate(t)
        dD = self.aggregate_deriv(t)
        if self._pred.kind != NORM2_LE:
            return dD
        r = self._pred.radius
        if self._negated:
            return (2 * r + 2 * D) * dD
        return (2 * r - 2 * D) * dD

    def _from_aggregate(self, D):
        if self._pred.kind != NORM2_LE:
            return D
        r = self._pred.radius
        if self._negated:
            return 2 * D * r + D * D
        if (asarray(D) >= r).any():
            name = self._pred.name or "norm2_le predicate"
            msg = f"Estimation error bound {float(asarray(D).max()):.6g} reaches the"
            msg += f" radius {r:.6g} of {name}: the margin is infeasible."
            raise FunnelError(msg)
        return 2 * D * r - D * D


class Margin:
    """
    Margin ρᵗ(t): the largest :class:`.MarginTerm` of a body.

    It is zero when the body reads no estimated agent.

    Example
    -------

    .. doctest::

        >>> from stlppc.funnel import PPF, Margin
        >>> from stlppc.stl import Atom, Predicate
        >>>
        >>> p = Predicate("norm2_le", {1: 1.0, 3: -1.0}, offset=[0, 0], radius_sq=25.0)
        >>> m = Margin.for_body(Atom("p", p), {3: PPF(1.0, 1.0)})
        >>> m.value(0.0)
        9.0
    """

    def __init__(self, terms=()):
        self._terms = tuple(t for t in terms if t.agents)

    @classmethod
    def for_body(cls, body, deltas):
        """
        Margin of a non-temporal body given the δ funnels of its estimated
        agents.
        """
        terms = []
        for t in conjuncts(body):
            if isinstance(t, Atom):
                terms.append(MarginTerm(t.predicate, deltas, t.negated))
        return cls(terms)

    @property
    def terms(self):
        return self._terms

    @property
    def is_zero(self):
        return len(self._terms) == 0

    def value(self, t):
        if self.is_zero:
            return 0.0 if ndim(t) == 0 else zeros_like(asarray(t, float))
        v = self._terms[0].value(t)
        for term in self._terms[1:]:
            v = maximum(v, term.value(t))
        return float(v) if ndim(v) == 0 else v

    def limit(self):
        if self.is_zero:
            return 0.0
        return max(float(term.limit()) for term in self._terms)

    def derivative(self, t):
        """
        Derivative of the active (largest) term.
        """
        if self.is_zero:
            return 0.0
        values = [float(term.value(t)) for term in self._terms]
        k = max(range(len(values)), key=values.__getitem__)
        return float(self._terms[k].derivative(t))


def margin_eval(m, t):
    return m.value(t)
