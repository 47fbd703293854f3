from numpy import asarray, log, zeros_like

from .._util import ObserverError, clamp_open


def observer_xi(
    i, r, estimate, neighbor_estimates, relayed_true=None, anchors=0, consensus=None
):
    """
    Consensus-plus-anchor residual of observer pair (i, r).

        ξᵣⁱ = Σₗ (x̂ᵣⁱ − x̂ᵣˡ) + |Nᵢ ∩ Nᵣ| (x̂ᵣⁱ − xᵣ),

    with l ranging over the neighbours of i that also observe r.

    Parameters
    ----------
    i, r : int
        Observer and target.
    estimate : array_like
        x̂ᵣⁱ.
    neighbor_estimates : dict
        Neighbour id l to x̂ᵣˡ.
    relayed_true : array_like, optional
        True xᵣ relayed by common neighbours; required iff ``anchors > 0``.
    anchors : int, optional
        Number of common neighbours |Nᵢ ∩ Nᵣ|.
    consensus : sequence, optional
        Neighbours expected in ``neighbor_estimates``. Defaults to its keys.

    Returns
    -------
    ndarray
        ξᵣⁱ.

    Example
    -------

    .. doctest::

        >>> from stlppc.observer import observer_xi
        >>>
        >>> print(observer_xi(1, 3, [1.0, 2.0], {}, [0.5, 2.0], anchors=1))
        [0.5 0. ]
    """
    x = asarray(estimate, float)
    if consensus is None:
        consensus = sorted(neighbor_estimates)

    xi = zeros_like(x)
    for l in consensus:
        if l == i:
            continue
        try:
            xl = neighbor_estimates[l]
        except KeyError:
            raise ObserverError(f"Missing estimate of agent {r} from neighbour {l} of {i}.")
        xi += x - asarray(xl, float)

    if anchors > 0:
        if relayed_true is None:
            raise ObserverError(f"Missing relayed state of agent {r} for observer {i}.")
        xi += anchors * (x - asarray(relayed_true, float))
    elif relayed_true is not None:
        raise ObserverError(f"Observer {i} has no common neighbour with {r} to relay it.")
    return xi


def observer_residuals(state, links, true_states):
    """
    ξᵣⁱ for every observer pair from one synchronous message snapshot.

    Every agent shares its estimates with its neighbours and relays the true
    states of its own neighbours, so both terms of ξ use same-step data.
    """
    xi = {}
    for i, r in state.pairs:
        consensus = links.consensus[(i, r)]
        anchors = links.anchors[(i, r)]
        xi[(i, r)] = observer_xi(
            i,
            r,
            state[(i, r)],
            {l: state[(l, r)] for l in consensus},
            true_states[r] if anchors > 0 else None,
            anchors,
            consensus,
        )
    return xi


def observer_rhs(xi, rho_t, return_clamped=False):
    """
    Estimate derivative −ρ⁻¹ J(e) ε(e) with e = ξ/ρ, componentwise.

    J(e) = log(2/(1 − e²)) and ε(e) = log((1 + e)/(1 − e)). Components with
    |e| ≥ 1 are clamped to ±(1 − 1e-9).

    Parameters
    ----------
    xi : array_like
        Residual ξ.
    rho_t : float
        Residual funnel ρ(t) > 0.
    return_clamped : bool, optional
        Also return whether a clamp happened. Defaults to ``False``.

    Example
    -------

    .. doctest::

        >>> from stlppc.observer import observer_rhs
        >>>
        >>> print(f"{observer_rhs([0.5], 1.0)[0]:.4f}")
        -1.0776
    """
    rho_t = float(rho_t)
    if not rho_t > 0:
        raise ObserverError(f"Residual funnel must be positive, got {rho_t}.")
    e, clamped = clamp_open(asarray(xi, float) / rho_t, -1.0, 1.0)
    e = asarray(e, float)
    rhs = -(1 / rho_t) * log(2 / (1 - e * e)) * log((1 + e) / (1 - e))
    if return_clamped:
        return rhs, clamped
    return rhs
