from dataclasses import dataclass
from typing import Dict, Tuple

from numpy import abs as npabs, asarray, concatenate, zeros
from numpy.random import RandomState

from .._util import AssumptionError, ObserverError


@dataclass(frozen=True)
class ObserverLinks:
    """
    Who feeds the residual ξᵣⁱ of each observer pair.

    ``consensus[(i, r)]`` lists the neighbours l of i that also observe r and
    ``anchors[(i, r)]`` counts the neighbours of i that are neighbours of r,
    hence relay the true xᵣ.
    """

    consensus: Dict[Tuple[int, int], Tuple[int, ...]]
    anchors: Dict[Tuple[int, int], int]

    @property
    def pairs(self):
        return list(self.consensus)


def observer_links(gc, pairs):
    """
    Consensus neighbours and relay counts of every observer pair.

    Example
    -------

    .. doctest::

        >>> from stlppc.example import path_graphs
        >>> from stlppc.observer import observer_links
        >>>
        >>> gc, _ = path_graphs()
        >>> links = observer_links(gc, [(1, 3), (2, 4), (3, 1), (4, 2)])
        >>> links.consensus[(1, 3)], links.anchors[(1, 3)]
        ((), 1)
    """
    pairs = sorted(tuple(p) for p in pairs)
    observed = {}
    for i, r in pairs:
        observed.setdefault(r, set()).add(i)

    consensus = {}
    anchors = {}
    for i, r in pairs:
        ni = gc.neighbors(i)
        consensus[(i, r)] = tuple(sorted(l for l in ni if l != i and l in observed[r]))
        anchors[(i, r)] = len(ni & gc.neighbors(r))
        if not consensus[(i, r)] and anchors[(i, r)] == 0:
            raise ObserverError(f"Observer pair {(i, r)} receives no information.")
    return ObserverLinks(consensus, anchors)


class ObserverState:
    """
    Estimates x̂ᵣⁱ of every observer pair, kept in sorted pair order.

    Parameters
    ----------
    estimates : dict
        Pair (i, r) to the estimate of xᵣ held by agent i.
    """

    def __init__(self, estimates):
        self._est = {p: asarray(v, float).copy() for p, v in sorted(estimates.items())}

    @property
    def pairs(self):
        return list(self._est)

    def __getitem__(self, pair):
        try:
            return self._est[pair]
        except KeyError:
            raise ObserverError(f"No estimate for observer pair {pair}.")

    def __contains__(self, pair):
        return pair in self._est

    def __len__(self):
        return len(self._est)

    def estimates_of(self, i):
        """
        Target id to estimate, for the targets of agent ``i``.
        """
        return {r: v for (o, r), v in self._est.items() if o == i}

    def as_vector(self):
        if not self._est:
            return zeros(0)
        return concatenate(list(self._est.values()))

    def with_vector(self, x):
        """
        New state with the same pairs and the values of the flat vector ``x``.
        """
        x = asarray(x, float)
        est = {}
        k = 0
        for p, v in self._est.items():
            est[p] = x[k : k + v.shape[0]]
            k += v.shape[0]
        if k != x.shape[0]:
            raise ObserverError(f"Expected {k} observer values, got {x.shape[0]}.")
        return ObserverState(est)

    def copy(self):
        return ObserverState(self._est)

    def __repr__(self):
        return f"ObserverState(pairs={len(self._est)})"


def init_observer(
    links, funnels, true_states, perturbation=0.0, seed=0, estimates=None
):
    """
    Initial observer estimates.

    Each estimate starts at its target's true state plus a perturbation drawn
    uniformly from [−``perturbation``, ``perturbation``] per component. The
    result must satisfy |ξᵣⁱ(0)| < ρᵣⁱ(0) componentwise for every pair.

    Parameters
    ----------
    links : ObserverLinks
        Observer pairs and their information sources.
    funnels : ObserverFunnels
        Observer funnels.
    true_states : dict
        Agent id to its state at t = 0.
    perturbation : float, optional
        Half-width of the initial perturbation. Defaults to ``0``.
    seed : int, optional
        Seed of the perturbation.
    estimates : dict, optional
        Explicit initial estimates per pair, used instead of the rule above.

    Returns
    -------
    :class:`.ObserverState`
        Initial estimates.

    Raises
    ------
    AssumptionError
        ``"initialization"`` naming the first pair outside its residual
        funnel.
    """
    from ._dynamics import observer_residuals

    if estimates is None:
        random = RandomState(seed)
        estimates = {}
        for i, r in links.pairs:
            x = asarray(true_states[r], float)
            estimates[(i, r)] = x + perturbation * random.uniform(-1, 1, x.shape[0])

    state = ObserverState(estimates)
    if set(state.pairs) != set(links.pairs):
        raise ObserverError("Initial estimates must cover every observer pair.")

    xi = observer_residuals(state, links, true_states)
    for pair in state.pairs:
        rho0 = funnels.rho(pair).v0
        worst = float(npabs(xi[pair]).max())
        if not worst < rho0:
            msg = f"Observer pair {pair}: |xi(0)| = {worst:.6g} is not below"
            msg += f" rho(0) = {rho0:.6g}."
            raise AssumptionError("initialization", msg)
    return state
