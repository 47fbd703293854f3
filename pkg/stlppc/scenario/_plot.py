from os.path import join

from numpy import cos, linspace, pi, sin

PANELS = (
    "trajectories.svg",
    "estimation_errors.svg",
    "estimated_robustness.svg",
    "true_robustness.svg",
)


def plot_trace(trace, out_dir, circles=8):
    """
    Draw the four panels of a run as SVG files.

    Panels: agent trajectories with the δ tubes around the estimates,
    estimation-error norms against δ, estimated robustness inside its funnel,
    and the true robustness of every conjunct. The two estimation panels are
    skipped when the trace has no observer pairs.

    Parameters
    ----------
    trace : :class:`stlppc.sim.Trace`
        Recorded run.
    out_dir : str
        Existing output directory.
    circles : int, optional
        δ circles drawn along each estimate path. Defaults to ``8``.

    Returns
    -------
    files : list
        Written files.
    notes : list
        One message per skipped panel.
    """
    import matplotlib

    matplotlib.use("Agg")
    matplotlib.rcParams.update({"font.size": 9, "svg.fonttype": "none"})
    import matplotlib.pyplot as plt

    files = []
    notes = []
    pairs = trace.pairs()

    fig = _trajectories(plt, trace, pairs, circles)
    files.append(_save(plt, fig, out_dir, PANELS[0]))

    if pairs:
        files.append(_save(plt, _errors(plt, trace, pairs), out_dir, PANELS[1]))
        files.append(_save(plt, _estimated(plt, trace), out_dir, PANELS[2]))
    else:
        notes.append("No observer pairs: estimation panels skipped.")

    if trace.tasks():
        files.append(_save(plt, _true(plt, trace), out_dir, PANELS[3]))
    else:
        notes.append("No tasks: robustness panel skipped.")
    return files, notes


def _save(plt, fig, out_dir, name):
    path = join(out_dir, name)
    fig.savefig(path)
    plt.close(fig)
    return path


def _trajectories(plt, trace, pairs, circles):
    t = trace.times
    states = trace.states()
    planar = all(x.shape[1] == 2 for x in states.values())
    fig, ax = plt.subplots(figsize=(6, 5), constrained_layout=True)

    if not planar:
        for i, x in states.items():
            for c in range(x.shape[1]):
                ax.plot(t, x[:, c], label=f"x{i}[{c + 1}]")
        ax.set_xlabel("t")
        ax.legend(loc="best", fontsize="small")
        return fig

    colors = {}
    for i, x in states.items():
        (line,) = ax.plot(x[:, 0], x[:, 1], label=f"agent {i}")
        colors[i] = line.get_color()
        ax.plot(x[0, 0], x[0, 1], "o", color=colors[i], markersize=4)

    theta = linspace(0, 2 * pi, 60)
    idx = linspace(0, len(t) - 1, circles).astype(int)
    for i, r in pairs:
        xhat = trace.estimate(i, r)
        delta = trace.column(f"delta_{i}_{r}")
        ax.plot(xhat[:, 0], xhat[:, 1], "--", color=colors[r], linewidth=0.7)
        for k in idx:
            ax.plot(
                xhat[k, 0] + delta[k] * cos(theta),
                xhat[k, 1] + delta[k] * sin(theta),
                color=colors[r],
                linewidth=0.3,
                alpha=0.5,
            )
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_xlabel("x[1]")
    ax.set_ylabel("x[2]")
    ax.legend(loc="best", fontsize="small")
    return fig


def _errors(plt, trace, pairs):
    t = trace.times
    fig, ax = plt.subplots(figsize=(7, 4), constrained_layout=True)
    for i, r in pairs:
        ax.plot(t, trace.column(f"err_{i}_{r}"), linewidth=0.8, label=f"{i}->{r}")
    for i, r in pairs:
        ax.plot(t, trace.column(f"delta_{i}_{r}"), "k--", linewidth=0.8)
    ax.set_xlabel("t")
    ax.set_ylabel("|estimation error|")
    ax.legend(loc="best", fontsize="x-small", ncol=2)
    return fig


def _estimated(plt, trace):
    t = trace.times
    tasks = trace.tasks()
    fig, axes = plt.subplots(len(tasks), 1, figsize=(7, 2 * len(tasks)), sharex=True,
                             constrained_layout=True, squeeze=False)
    for ax, name in zip(axes[:, 0], tasks):
        rho_hat = trace.column(f"rhohat_{name}")
        Gamma = trace.column(f"Gamma_{name}")
        rho_max = rho_hat - trace.column(f"e_{name}") * Gamma
        ax.plot(t, rho_hat, label="estimated")
        ax.plot(t, rho_max, "k--", linewidth=0.8)
        ax.plot(t, rho_max - Gamma, "k--", linewidth=0.8)
        ax.set_ylabel(name)
    axes[-1, 0].set_xlabel("t")
    return fig


def _true(plt, trace):
    t = trace.times
    tasks = trace.tasks()
    fig, axes = plt.subplots(len(tasks), 1, figsize=(7, 2 * len(tasks)), sharex=True,
                             constrained_layout=True, squeeze=False)
    for ax, name in zip(axes[:, 0], tasks):
        for j, values in enumerate(trace.conjunct_robustness(name), 1):
            ax.plot(t, values, linewidth=0.8, label=f"{name}[{j}]")
        ax.axhline(0.0, color="k", linewidth=0.5)
        ax.set_ylabel(name)
        ax.legend(loc="best", fontsize="x-small")
    axes[-1, 0].set_xlabel("t")
    return fig
