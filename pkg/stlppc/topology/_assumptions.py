from dataclasses import dataclass, field
from typing import List, Optional

import networkx as nx

from .._util import AssumptionError, TopologyError
from ._graph import bfs_distances


@dataclass
class AssumptionCheck:
    """
    Outcome of one named check; ``witness`` describes a counterexample.
    """

    name: str
    passed: bool
    witness: Optional[object] = None
    message: str = ""

    def as_dict(self):
        w = self.witness
        if isinstance(w, (set, frozenset)):
            w = sorted(w)
        elif isinstance(w, tuple):
            w = list(w)
        return {"name": self.name, "passed": self.passed, "witness": w, "message": self.message}


@dataclass
class AssumptionReport:
    checks: List[AssumptionCheck] = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def raise_on_failure(self):
        """
        Raise :class:`.AssumptionError` naming the first failed check.
        """
        for c in self.checks:
            if not c.passed:
                raise AssumptionError(c.name, c.message)

    def as_dict(self):
        return {"passed": self.passed, "checks": [c.as_dict() for c in self.checks]}


def communicated_agents(gc, gt, i):
    """
    Agents read by the task of ``i`` that communicate with ``i``.
    """
    return {j for j in gt.neighbors(i) if j != i and gc.has_edge(i, j)}


def estimated_agents(gc, gt, i):
    """
    Agents read by the task of ``i`` that do not communicate with ``i``.
    """
    return {j for j in gt.neighbors(i) if j != i and not gc.has_edge(i, j)}


def required_k(gc, gt):
    """
    Largest hop distance between an agent and a state its task reads without
    a communication link; ``0`` when there is no such pair.

    Raises
    ------
    TopologyError
        If some such pair is disconnected in the communication graph.
    """
    k = 0
    for i in gc.nodes:
        missing = estimated_agents(gc, gt, i)
        if not missing:
            continue
        dist = bfs_distances(gc, i)
        for j in sorted(missing):
            if j not in dist:
                msg = f"Agent {i} reads agent {j} but they are disconnected."
                raise TopologyError(msg)
            k = max(k, dist[j])
    return k


def validate_assumptions(gc, gt, clustering):
    """
    Check the communication, task and cluster preconditions of the closed loop.

    The report has three checks: ``connectivity`` (the communication graph is
    connected), ``acyclicity`` (the task graph has no directed cycle other
    than self-loops) and ``communication`` (inside a cluster, each agent
    communicates with every agent its task reads).

    Returns
    -------
    :class:`.AssumptionReport`
        Pass/fail per check with witnesses.
    """
    report = AssumptionReport()

    g = gc.to_networkx()
    comps = sorted((sorted(c) for c in nx.connected_components(g)), key=min)
    if len(comps) == 1:
        report.checks.append(AssumptionCheck("connectivity", True))
    else:
        msg = f"Communication graph has {len(comps)} components: {comps}."
        report.checks.append(AssumptionCheck("connectivity", False, comps[1][0], msg))

    dg = gt.to_networkx()
    dg.remove_edges_from([(i, i) for i in gt.nodes])
    if nx.is_directed_acyclic_graph(dg):
        report.checks.append(AssumptionCheck("acyclicity", True))
    else:
        cycle = [a for a, _ in nx.find_cycle(dg)]
        msg = "Task graph has a cycle: " + " -> ".join(map(str, cycle + cycle[:1])) + "."
        report.checks.append(AssumptionCheck("acyclicity", False, tuple(cycle), msg))

    witness = None
    for i in gt.nodes:
        cluster = clustering.cluster_of(i)
        for j in sorted(gt.neighbors(i)):
            if j != i and j in cluster and not gc.has_edge(i, j):
                witness = (i, j)
                break
        if witness is not None:
            break
    if witness is None:
        report.checks.append(AssumptionCheck("communication", True))
    else:
        i, j = witness
        msg = f"Agent {i} reads agent {j} in its own cluster without communicating."
        report.checks.append(AssumptionCheck("communication", False, witness, msg))

    return report
