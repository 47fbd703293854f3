from numpy import asarray, inf, zeros

from .._util import check_vector
from ._formula import Atom, TrueConst, body_agents, conjuncts
from ._smooth import SmoothMinConfig, smooth_min


def term_values(body, xs):
    """
    Robustness of each top-level conjunct of ``body``.

    Negated predicates contribute −ρ and ``true`` contributes +∞.
    """
    return asarray([_term_value(t, xs) for t in conjuncts(body)], float)


def exact_robustness(body, xs):
    """
    Robustness of ``body`` with the exact minimum over conjuncts.
    """
    return float(term_values(body, xs).min())


def eval_robustness(body, xs, cfg=None):
    """
    Smooth robustness ρ̄ of a non-temporal body.

    Conjunctions use :func:`.smooth_min`, so the result never exceeds the
    exact robustness.

    Parameters
    ----------
    body : Atom, Conj or TrueConst
        Non-temporal formula.
    xs : dict
        Agent id to state vector.
    cfg : SmoothMinConfig or float, optional
        Smooth-minimum sharpness. Defaults to η = 10.

    Returns
    -------
    float
        ρ̄(𝐱).

    Example
    -------

    .. doctest::

        >>> from stlppc.stl import Predicate, parse_formula, eval_robustness
        >>>
        >>> p = Predicate("linear", {1: [1.0, 0.0]}, bias=0.0)
        >>> phi = parse_formula("G[0,1](p && p)", {"p": p})
        >>> print(f"{eval_robustness(phi.body, {1: [3.0, 7.0]}, 10.0):.6f}")
        2.930685
    """
    value, _ = _smooth(term_values(body, xs), cfg)
    return value


def grad_robustness(body, xs, agent, cfg=None):
    """
    Gradient of :func:`eval_robustness` with respect to the state of ``agent``.

    It is the softmin-weighted sum of the conjunct gradients; the zero vector
    when no conjunct reads ``agent``.
    """
    return robustness_and_gradients(body, xs, [agent], cfg)[1][agent]


def robustness_and_gradients(body, xs, agents, cfg=None):
    """
    Smooth robustness and its gradients with respect to several agents.

    Returns
    -------
    value : float
        ρ̄(𝐱).
    grads : dict
        Agent id to ∂ρ̄/∂𝐱ₐ.
    """
    xs = _checked_states(body, xs, agents)
    terms = conjuncts(body)
    values = asarray([_term_value(t, xs) for t in terms], float)
    value, weights = _smooth(values, cfg)

    grads = {}
    for a in agents:
        g = zeros(asarray(xs[a]).shape[0])
        for t, w in zip(terms, weights):
            if w == 0 or not isinstance(t, Atom) or not t.predicate.reads(a):
                continue
            gt = t.predicate.gradient(xs, a)
            g += (-w if t.negated else w) * gt
        grads[a] = g
    return value, grads


def _checked_states(body, xs, agents):
    states = {}
    for a in sorted(set(body_agents(body)) | set(agents)):
        if a not in xs:
            raise ValueError(f"The state of agent {a} is missing.")
        states[a] = check_vector(xs[a], name=f"state of agent {a}")
    return states


def _term_value(t, xs):
    if isinstance(t, TrueConst):
        return inf
    v = t.predicate.value(xs)
    return -v if t.negated else v


def _smooth(values, cfg):
    if cfg is None:
        cfg = SmoothMinConfig()
    eta = cfg.eta if isinstance(cfg, SmoothMinConfig) else float(cfg)
    return smooth_min(values, eta)
