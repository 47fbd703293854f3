from numpy import asarray, zeros

TRANSPOSE = "transpose"
SIGN = "sign"


def assemble_input(agent, evaluations, g, mode=TRANSPOSE, sign=1.0):
    """
    Control input of ``agent`` from the evaluated tasks of its cluster.

        u = −g(x)ᵀ Σⱼ ∂ρ̂ⱼ/∂x Γⱼ⁻¹ Jⱼ εⱼ

    or −s Σⱼ … in ``"sign"`` mode. Tasks whose robustness does not depend on
    ``agent`` contribute nothing.

    Parameters
    ----------
    agent : int
        Agent id.
    evaluations : list
        :class:`.TaskEvaluation` of every task in the agent's cluster.
    g : array_like
        Input matrix of the agent at its current state.
    mode : str, optional
        ``"transpose"`` (default) or ``"sign"``.
    sign : float, optional
        Known sign of g in ``"sign"`` mode.

    Returns
    -------
    ndarray
        u.
    """
    g = asarray(g, float)
    total = zeros(g.shape[0])
    for ev in sorted(evaluations, key=lambda v: v.name):
        grad = ev.gradients.get(agent)
        if grad is None:
            continue
        total = total + asarray(grad, float) * (ev.error.gain / ev.Gamma)

    if mode == TRANSPOSE:
        return -(g.T @ total)
    if mode == SIGN:
        return -float(sign) * total
    raise ValueError(f"Unknown controller mode: {mode}.")


def control_input(
    agent, bindings, states, observer, t, g, eta=10.0, mode=TRANSPOSE, sign=1.0
):
    """
    Control input of ``agent`` from the tasks of its own cluster.

    Each task is evaluated on the view of its owner: true states of the owner
    and of its communicated agents, estimates for the other agents.

    Parameters
    ----------
    agent : int
        Agent id.
    bindings : list
        :class:`.TaskBinding` of every task in the agent's cluster.
    states : dict
        Agent id to true state.
    observer : ObserverState
        Observer estimates, or ``None`` if no task needs them.
    t : float
        Time.
    g : array_like
        Input matrix of ``agent`` at its state.

    Returns
    -------
    ndarray
        u.
    """
    from ._binding import evaluate_task, task_view

    evals = [evaluate_task(b, task_view(b, states, observer), t, eta) for b in bindings]
    return assemble_input(agent, evals, g, mode, sign)
