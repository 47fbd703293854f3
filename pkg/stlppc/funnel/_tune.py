from numpy import asarray, concatenate, linspace, log
from numpy.random import RandomState
from optimix import Function, Vector

from .._util import AssumptionError, FunnelError, check_positive
from ..stl import NORM2_LE, Atom, conjuncts, eval_robustness, robustness_and_gradients
from ._margin import Margin
from ._ppf import PPF
from ._spec import FunnelSpec

GRID_POINTS = 10000


def tune_gamma(
    phi,
    rho_max,
    rho_hat_0,
    r_target,
    margin=None,
    t_star=None,
    width=None,
    slack=0.0,
    horizon=None,
    grid=GRID_POINTS,
):
    """
    Tune γ for one conjunct of a temporal task.

    Let gap = ρ^max − ρ̂₀ and cap = ρ^max − r_target. The initial width is
    w₀ = max(2·gap, ``width``) + ``slack``, which puts the normalised error
    near −1/2 at t = 0, and γ(0) = ρᵗ(0) + w₀. The funnel stays flat if γ(0)
    is already below cap. Otherwise γ^∞ sits halfway between ρᵗ(∞) and cap
    and the decay rate makes γ(t*) = cap, with t* the satisfaction instant.

    Parameters
    ----------
    phi : Formula
        Temporal task.
    rho_max : float
        Upper funnel boundary.
    rho_hat_0 : float
        Estimated robustness at t = 0.
    r_target : float
        Robustness to be certified from t* on, r_target > 0.
    margin : Margin, optional
        Margin of the conjunct. Defaults to zero.
    t_star : float, optional
        Satisfaction instant for ``F`` tasks. Defaults to the midpoint.
    width : float, optional
        Lower bound on the initial funnel width.
    slack : float, optional
        Extra initial width. Defaults to ``0``.
    horizon : float, optional
        End of the Γ > 0 check grid. Defaults to the formula end time.
    grid : int, optional
        Number of grid points.

    Returns
    -------
    :class:`.PPF`
        γ.

    Raises
    ------
    AssumptionError
        ``"initialization"`` if ρ̂₀ ≥ ρ^max or the funnel cannot shrink in
        time, ``"feasibility"`` if the margin leaves no room below cap, and
        ``"funnel-positivity"`` if Γ = γ − ρᵗ is not positive on the grid.

    Example
    -------

    .. doctest::

        >>> from stlppc.funnel import tune_gamma
        >>> from stlppc.stl import Predicate, parse_formula
        >>>
        >>> p = Predicate("norm2_le", {3: 1.0}, offset=[0, 0], radius_sq=7.0)
        >>> phi = parse_formula("G[1,2](p)", {"p": p})
        >>> gamma = tune_gamma(phi, rho_max=6.0, rho_hat_0=1.0, r_target=1.0)
        >>> print(f"{gamma.v0:.3f} {gamma.value(1.0):.3f}")
        10.000 5.000
    """
    rho_max = check_positive(rho_max, "rho_max")
    r_target = check_positive(r_target, "r_target")
    rho_hat_0 = float(rho_hat_0)
    margin = Margin() if margin is None else margin

    cap = rho_max - r_target
    if cap <= 0:
        raise FunnelError(f"r_target={r_target} must be below rho_max={rho_max}.")

    gap = rho_max - rho_hat_0
    if gap <= 0:
        msg = f"Initial robustness {rho_hat_0:.6g} is not below rho_max={rho_max}."
        raise AssumptionError("initialization", msg)

    ts = phi.satisfaction_instant(t_star)
    w_lo, w_hi = phi.satisfaction_window(t_star)
    window = linspace(w_lo, w_hi, max(2, grid // 10))
    try:
        m_window = float(asarray(margin.value(window)).max())
        m0 = float(margin.value(0.0))
        m_inf = margin.limit()
    except FunnelError as e:
        raise AssumptionError("feasibility", str(e))

    if rho_max - m_window <= 0 or cap - m_window <= 0 or cap - m_inf <= 0:
        msg = f"Margin up to {max(m_window, m_inf):.6g} leaves no room below"
        msg += f" rho_max - r_target = {cap:.6g}."
        raise AssumptionError("feasibility", msg)

    w0 = max(2 * gap, 0.0 if width is None else float(width)) + float(slack)
    g0 = m0 + w0

    if g0 < cap:
        gamma = PPF(g0, g0, 0.0)
    else:
        if ts <= 0:
            msg = f"gamma(0)={g0:.6g} exceeds rho_max - r_target={cap:.6g}"
            msg += " and the task must hold at t = 0."
            raise AssumptionError("initialization", msg)
        g_inf = m_inf + (cap - m_inf) / 2
        decay = log((g0 - g_inf) / (cap - g_inf)) / ts
        gamma = PPF(g0, g_inf, decay)

    end = phi.end_time if horizon is None else float(horizon)
    _check_positive_width(gamma, margin, max(end, ts), grid)
    return gamma


def design_funnel(
    phi,
    rho_max,
    rho_hat_0,
    r_target,
    deltas=None,
    eta=10.0,
    t_star=None,
    width=None,
    horizon=None,
    grid=GRID_POINTS,
):
    """
    Tune one γⱼ per conjunct of the body of ``phi``.

    Each conjunct gets the margin of its estimated agents and an extra
    initial width of log(p)/η, so the smooth-minimum Γ(0) still covers the
    initial error.

    Parameters
    ----------
    deltas : dict, optional
        Estimated agent id to its δ funnel.

    Returns
    -------
    :class:`.FunnelSpec`
        Funnel of the task.
    """
    deltas = {} if deltas is None else deltas
    terms = conjuncts(phi.body)
    p = len(terms)
    slack = log(p) / eta if p > 1 else 0.0

    gammas = []
    margins = []
    for t in terms:
        m = Margin.for_body(t, deltas) if isinstance(t, Atom) else Margin()
        g = tune_gamma(
            phi,
            rho_max,
            rho_hat_0,
            r_target,
            margin=m,
            t_star=t_star,
            width=width,
            slack=slack,
            horizon=horizon,
            grid=grid,
        )
        gammas.append(g)
        margins.append(m)

    spec = FunnelSpec(gammas, margins, rho_max, eta)

    Gamma0 = spec.capital_gamma(0.0)
    if not (-Gamma0 < rho_hat_0 - rho_max < 0):
        msg = f"Initial error {rho_hat_0 - rho_max:.6g} is outside (-{Gamma0:.6g}, 0)."
        raise AssumptionError("initialization", msg)

    end = phi.end_time if horizon is None else float(horizon)
    times = linspace(0, end, grid)
    if not (spec.capital_gamma(times) > 0).all():
        raise AssumptionError("funnel-positivity", "Gamma(t) <= 0 on the time grid.")

    return spec


def rho_opt(body, dims, eta=10.0, restarts=100, bound=200.0, seed=0):
    """
    Supremum of the smooth robustness of a body.

    For bodies made of ``norm2_le`` predicates only it is min r² − log(p)/η.
    Any other body is maximised numerically with bounded L-BFGS from
    ``restarts`` random starting points.

    Parameters
    ----------
    body : Atom or Conj
        Non-temporal formula.
    dims : dict
        Agent id to state dimension.
    eta : float
        Smooth-minimum sharpness.

    Returns
    -------
    float
        ρ^opt.

    Example
    -------

    .. doctest::

        >>> from stlppc.funnel import rho_opt
        >>> from stlppc.stl import Predicate, parse_formula
        >>>
        >>> p = Predicate("norm2_le", {3: 1.0}, offset=[0, 0], radius_sq=7.0)
        >>> rho_opt(parse_formula("G[1,2](p)", {"p": p}).body, {3: 2})
        7.0
    """
    terms = conjuncts(body)
    atoms = [t for t in terms if isinstance(t, Atom)]
    if not atoms:
        raise FunnelError("A task body needs at least one predicate.")

    if all(t.predicate.kind == NORM2_LE and not t.negated for t in atoms):
        v = min(t.predicate.radius_sq for t in atoms)
        return float(v - log(len(terms)) / eta) if len(terms) > 1 else float(v)

    agents = sorted({a for t in atoms for a in t.predicate.agents})
    random = RandomState(seed)
    best = -float("inf")
    for _ in range(restarts):
        x0 = concatenate([random.uniform(-10, 10, dims[a]) for a in agents])
        f = SmoothRobustness(body, agents, dims, eta, x0, bound)
        f.maximize()
        best = max(best, f.value())
    return best


def check_rho_max(body, rho_max, dims, eta=10.0):
    """
    Raise ``AssumptionError("rho-opt")`` unless 0 < ρ^max < ρ^opt.
    """
    opt = rho_opt(body, dims, eta)
    if not (0 < rho_max < opt):
        msg = f"rho_max={rho_max:.6g} must lie in (0, rho_opt={opt:.6g})."
        raise AssumptionError("rho-opt", msg)
    return opt


class SmoothRobustness(Function):
    """
    Smooth robustness of a body as a function of the stacked agent states.
    """

    def __init__(self, body, agents, dims, eta, x0, bound=200.0):
        self._body = body
        self._agents = list(agents)
        self._dims = [int(dims[a]) for a in self._agents]
        self._eta = eta
        self._x = Vector(asarray(x0, float))
        self._x.bounds = [(-bound, +bound)] * len(x0)
        Function.__init__(self, "SmoothRobustness", x=self._x)

    def _states(self):
        x = asarray(self._x.value, float)
        xs = {}
        k = 0
        for a, n in zip(self._agents, self._dims):
            xs[a] = x[k : k + n]
            k += n
        return xs

    def value(self):
        return eval_robustness(self._body, self._states(), self._eta)

    def gradient(self):
        _, grads = robustness_and_gradients(
            self._body, self._states(), self._agents, self._eta
        )
        return dict(x=concatenate([grads[a] for a in self._agents]))

    def maximize(self, verbose=False):
        self._maximize(verbose=verbose, factr=1e5, pgtol=1e-8)


def _check_positive_width(gamma, margin, end, grid):
    times = linspace(0, end, grid)
    widths = gamma.value(times) - margin.value(times)
    if not (widths > 0).all():
        t = float(times[(widths <= 0).argmax()])
        msg = f"Gamma(t) = gamma(t) - margin(t) <= 0 at t = {t:.6g}."
        raise AssumptionError("funnel-positivity", msg)
