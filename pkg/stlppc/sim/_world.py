import pandas as pd
from numpy import asarray, errstate, full_like, nan
from numpy.linalg import norm
from numpy.random import RandomState
from numpy_sugar import is_all_finite
from tqdm import tqdm

from ..stl import exact_robustness, term_values
from ._closed_loop import STAGEWISE, ZOH
from ._disturbance import DisturbanceStream
from ._faults import FaultLog
from ._trace import Trace


class World:
    """
    Mutable state of one run: clock, agent states, observer estimates,
    disturbance generator and fault log.

    Parameters
    ----------
    system : ClosedLoop
        The closed loop.
    states : dict
        Agent id to initial state.
    observer : ObserverState, optional
        Initial observer estimates.
    seed : int, optional
        Disturbance seed. Defaults to ``0``.
    """

    def __init__(self, system, states, observer=None, seed=0):
        self.t = 0.0
        self.step_index = 0
        self.states = {i: asarray(states[i], float).copy() for i in system.agents}
        self.observer = observer.copy() if observer is not None else None
        self.faults = FaultLog()
        self.diverged = False
        self._disturbance = DisturbanceStream(
            system.disturbance, system.dims(), RandomState(seed)
        )

    def disturbance(self):
        return self._disturbance.at(self.step_index)

    def __repr__(self):
        return f"World(t={self.t:.6g}, step={self.step_index}, faults={len(self.faults)})"


def rk4_step(f, t, y, dt):
    """
    One classical Runge-Kutta step of ẏ = f(t, y).

    Example
    -------

    .. doctest::

        >>> from stlppc.sim import rk4_step
        >>>
        >>> print(f"{rk4_step(lambda t, y: -y, 0.0, 1.0, 0.1):.7f}")
        0.9048375
    """
    k1 = f(t, y)
    k2 = f(t + dt / 2, y + dt / 2 * k1)
    k3 = f(t + dt / 2, y + dt / 2 * k2)
    k4 = f(t + dt, y + dt * k3)
    return y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def step(world, system, dt, evaluations=None, inputs=None):
    """
    Advance ``world`` by one synchronous round.

    The round takes a message snapshot, computes every control input from
    it, integrates plant and observer jointly with one RK4 step and advances
    the clock. A non-finite state, at the end of the step or at any of its
    stages, is logged as an integration fault and marks the world as
    diverged.

    Parameters
    ----------
    world : World
        Current state; updated in place.
    system : ClosedLoop
        The closed loop.
    dt : float
        Step size.
    evaluations, inputs : dict, optional
        Task evaluations and inputs already computed on the snapshot.

    Returns
    -------
    :class:`.World`
        ``world``.
    """
    dt = float(dt)
    if not dt > 0:
        raise ValueError(f"Step size must be positive, got {dt}.")

    t0 = world.t
    states0 = world.states
    obs0 = world.observer
    if evaluations is None:
        evaluations = system.evaluate(t0, states0, obs0)
    if inputs is None:
        inputs = system.inputs(states0, evaluations)
    w = world.disturbance()
    clamped = set()

    def f(t, y):
        if not is_all_finite(y):
            return full_like(y, nan)
        states, obs = system.unpack(y, obs0)
        if system.coupling == ZOH:
            u = inputs
            shared, relayed = obs0, states0
        else:
            u = system.inputs(states, system.evaluate(t, states, obs))
            shared, relayed = obs, states
        dx = system.plant_derivative(states, u, w)
        dxhat = {}
        if system.pairs:
            dxhat, hit = system.observer_derivative(t, obs, shared, relayed)
            clamped.update(hit)
        return system.pack_rates(dx, dxhat)

    with errstate(over="ignore", invalid="ignore"):
        y = rk4_step(f, t0, system.pack(states0, obs0), dt)

    for pair in sorted(clamped):
        world.faults.record(
            "observer", world.step_index, t0, _pair_name(pair), "residual clamped at |e| = 1"
        )

    world.step_index += 1
    world.t = world.step_index * dt
    if not is_all_finite(y):
        world.diverged = True
        world.faults.record(
            "integration", world.step_index, world.t, "state", "non-finite state"
        )
        return world

    world.states, world.observer = system.unpack(y, obs0)
    return world


def run(system, world, horizon, dt, verbose=False):
    """
    Simulate up to ``horizon`` and record one trace row per step.

    Every row is checked for funnel clamps, residuals outside their funnels
    and estimation errors outside δ; faults are logged and the run goes on.
    It stops early, keeping the rows recorded so far, when the state
    diverges or when a task funnel width Γ(t) stops being positive.

    Returns
    -------
    :class:`.Trace`
        The recorded run with its fault log.
    """
    dt = float(dt)
    n = int(round(float(horizon) / dt))
    rows = []
    for k in tqdm(range(n + 1), desc="Run", disable=not verbose):
        if _funnel_collapsed(system, world, [world.t]):
            break
        evals = system.evaluate(world.t, world.states, world.observer)
        inputs = system.inputs(world.states, evals)
        rows.append(_record(system, world, evals, inputs))
        _check_row(system, world, evals)
        if k == n:
            break
        if system.coupling == STAGEWISE:
            if _funnel_collapsed(system, world, [world.t + dt / 2, world.t + dt]):
                break
        step(world, system, dt, evals, inputs)
        if world.diverged:
            break

    return Trace(pd.DataFrame(rows), world.faults)


def _funnel_collapsed(system, world, times):
    for t in times:
        collapsed = system.collapsed_funnels(t)
        for name, Gamma in sorted(collapsed.items()):
            msg = f"funnel width Gamma = {Gamma:.6g} is not positive"
            world.faults.record("funnel", world.step_index, t, name, msg)
        if collapsed:
            return True
    return False


def _check_row(system, world, evals):
    t = world.t
    for name, ev in evals.items():
        if ev.clamped:
            msg = f"e = {ev.raw_error:.6g} outside (-1, 0)"
            world.faults.record("funnel", world.step_index, t, name, msg)

    for pair in system.residual_violations(t, world.states, world.observer):
        world.faults.record(
            "observer", world.step_index, t, _pair_name(pair), "residual outside its funnel"
        )

    for pair in system.pairs:
        err = world.observer[pair] - world.states[pair[1]]
        d = system.observer_funnels.delta(pair).value(t)
        if not (norm(err) < d and (abs(err) < d).all()):
            msg = f"|error| = {norm(err):.6g} not below delta = {d:.6g}"
            world.faults.record("observer", world.step_index, t, _pair_name(pair), msg)


def _record(system, world, evals, inputs):
    row = {"t": world.t}
    for i in system.agents:
        for c, v in enumerate(world.states[i], 1):
            row[f"x_{i}_{c}"] = v
    for i in system.agents:
        for c, v in enumerate(inputs[i], 1):
            row[f"u_{i}_{c}"] = v
    for i, r in system.pairs:
        xhat = world.observer[(i, r)]
        for c, v in enumerate(xhat, 1):
            row[f"xhat_{i}_{r}_{c}"] = v
        row[f"err_{i}_{r}"] = float(norm(xhat - world.states[r]))
        row[f"delta_{i}_{r}"] = system.observer_funnels.delta((i, r)).value(world.t)
    for b in system.bindings:
        ev = evals[b.name]
        row[f"rhohat_{b.name}"] = ev.rho_hat
        row[f"rho_{b.name}"] = exact_robustness(b.monitored_body, world.states)
        row[f"e_{b.name}"] = ev.error.e
        row[f"Gamma_{b.name}"] = ev.Gamma
        row[f"gamma_{b.name}"] = ev.gamma
        for j, v in enumerate(term_values(b.monitored_body, world.states), 1):
            row[f"rho_{b.name}_{j}"] = v
    return row


def _pair_name(pair):
    return f"{pair[0]}->{pair[1]}"

