"""
Small canned objects for doctests and tests.
"""


def five_agent_graphs():
    """
    Communication and task graphs of the shipped five-agent scenario.
    """
    from stlppc.topology import Graph, task_graph

    gc = Graph(5, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5)])
    gt = task_graph(5, {1: [1, 2, 3], 2: [2, 3, 4, 5], 3: [3], 4: [4, 5], 5: [5]})
    return gc, gt


def five_agent_states():
    """
    Initial states of the five-agent scenario.
    """
    from numpy import array

    return {
        1: array([0.0, 0.5]),
        2: array([0.025, 0.812]),
        3: array([0.325, -1.618]),
        4: array([-0.1, 0.532]),
        5: array([1.9, -0.882]),
    }


def five_agent_tasks():
    """
    Predicate table and task formulas of the five-agent scenario.

    Returns
    -------
    table : dict
        Predicate name to :class:`stlppc.stl.Predicate`.
    formulas : dict
        Owner id to ``(formula text, rho_max)``.
    """
    from stlppc.stl import Predicate

    def target(i, c):
        return Predicate("norm2_le", {i: 1.0}, offset=c, radius_sq=7.0, name=f"near{i}")

    def pair(i, j, r2):
        return Predicate(
            "norm2_le", {i: 1.0, j: -1.0}, offset=[0, 0], radius_sq=r2, name=f"d{i}{j}"
        )

    table = {
        "near1": target(1, [0.0, 2.0]),
        "near3": target(3, [-1.175, -1.618]),
        "near5": target(5, [1.9, 0.618]),
        "d12": pair(1, 2, 26.75),
        "d13": pair(1, 3, 70.05),
        "d23": pair(2, 3, 26.75),
        "d24": pair(2, 4, 70.05),
        "d25": pair(2, 5, 70.05),
        "d45": pair(4, 5, 26.75),
    }
    formulas = {
        1: ("G[1,2](near1 && d12 && d13)", 6.0),
        2: ("G[1,2](d23 && d24 && d25)", 22.0),
        3: ("G[1,2](near3)", 6.0),
        4: ("G[1,2](d45)", 22.0),
        5: ("G[1,2](near5)", 6.0),
    }
    return table, formulas


def path_graphs():
    """
    Four agents on a path where agent 1 has a task on agent 3.
    """
    from stlppc.topology import Graph, task_graph

    gc = Graph(4, [(1, 2), (2, 3), (3, 4)])
    gt = task_graph(4, {1: [1, 3], 3: [3]})
    return gc, gt
