"""
Decentralised k-hop prescribed performance state observer.

ObserverFunnels
    δ and ρ funnels of every observer pair and the α constraint.
ObserverLinks, observer_links
    Consensus neighbours and relays feeding each pair.
ObserverState, init_observer
    Estimates and their initialisation.
observer_xi, observer_residuals, observer_rhs
    Residual ξ and the estimate dynamics.
check_observer_bounds, scan_observer_bounds
    Estimation errors against δ.
"""
from ._bounds import (
    ObserverBoundsReport,
    PairBound,
    check_observer_bounds,
    scan_observer_bounds,
)
from ._dynamics import observer_residuals, observer_rhs, observer_xi
from ._funnels import ObserverFunnels
from ._state import ObserverLinks, ObserverState, init_observer, observer_links

__all__ = [
    "ObserverBoundsReport",
    "ObserverFunnels",
    "ObserverLinks",
    "ObserverState",
    "PairBound",
    "check_observer_bounds",
    "init_observer",
    "observer_links",
    "observer_residuals",
    "observer_rhs",
    "observer_xi",
    "scan_observer_bounds",
]
