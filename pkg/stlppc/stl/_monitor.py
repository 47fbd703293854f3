from numpy import allclose, asarray, diff, empty, flatnonzero

from ._formula import ALWAYS, EVENTUALLY, EVENTUALLY_ALWAYS
from ._robustness import exact_robustness


def body_signal(body, states):
    """
    Exact body robustness at every sample.

    Parameters
    ----------
    body : Atom, Conj or TrueConst
        Non-temporal formula.
    states : dict
        Agent id to (T, n) array of sampled states.

    Returns
    -------
    (T,) ndarray
        Robustness per sample.
    """
    states = {j: asarray(v, float) for j, v in states.items()}
    T = next(iter(states.values())).shape[0]
    out = empty(T)
    for k in range(T):
        out[k] = exact_robustness(body, {j: v[k] for j, v in states.items()})
    return out


def monitor_temporal(phi, times, states, t=0.0):
    """
    Robustness of a temporal formula over a uniformly sampled trace.

    G takes the minimum of the exact body robustness over the samples in
    [t+a, t+b], F the maximum, and FG the maximum over t₁ ∈ [t+a, t+b] of the
    minimum over [t₁+ā, t₁+b̄]. No smoothing is applied.

    Parameters
    ----------
    phi : Formula
        Temporal formula.
    times : array_like
        Uniform sampling instants.
    states : dict
        Agent id to (T, n) array of sampled states.
    t : float, optional
        Evaluation instant. Defaults to ``0``.

    Returns
    -------
    float
        Temporal robustness.

    Example
    -------

    .. doctest::

        >>> from numpy import linspace, ones
        >>> from stlppc.stl import Predicate, parse_formula, monitor_temporal
        >>>
        >>> p = Predicate("linear", {1: [1.0]}, bias=0.0)
        >>> phi = parse_formula("G[1,2](p)", {"p": p})
        >>> times = linspace(0, 2, 201)
        >>> monitor_temporal(phi, times, {1: 5 * ones((201, 1))})
        5.0
    """
    return monitor_signal(phi, times, body_signal(phi.body, states), t)


def monitor_signal(phi, times, values, t=0.0):
    """
    Same as :func:`monitor_temporal` for a precomputed body robustness signal.
    """
    times = asarray(times, float)
    values = asarray(values, float)
    if times.ndim != 1 or times.shape != values.shape:
        raise ValueError("Times and robustness values must be aligned vectors.")

    if times.shape[0] < 2:
        raise ValueError("A trace needs at least two samples.")

    steps = diff(times)
    dt = float(steps.mean())
    if not allclose(steps, dt, rtol=1e-6, atol=1e-12):
        raise ValueError("Trace sampling must be uniform.")

    tol = 1e-6 * dt
    end = t + phi.end_time
    if end > times[-1] + tol or t + phi.a < times[0] - tol:
        msg = f"Formula window ends at {end} but the trace covers "
        msg += f"[{times[0]}, {times[-1]}]: window exceeds trace horizon."
        raise ValueError(msg)

    idx = _window(times, t + phi.a, t + phi.b, tol)

    if phi.op == ALWAYS:
        return float(values[idx].min())

    if phi.op == EVENTUALLY:
        return float(values[idx].max())

    assert phi.op == EVENTUALLY_ALWAYS
    lo = int(round(phi.inner[0] / dt))
    hi = int(round(phi.inner[1] / dt))
    best = -float("inf")
    for k in idx:
        best = max(best, float(values[k + lo : k + hi + 1].min()))
    return best


def _window(times, a, b, tol):
    idx = flatnonzero((times >= a - tol) & (times <= b + tol))
    if idx.shape[0] == 0:
        raise ValueError(f"No samples inside the window [{a}, {b}].")
    return idx
