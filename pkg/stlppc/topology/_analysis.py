from dataclasses import dataclass
from typing import List, Optional, Tuple

from ._assumptions import (
    AssumptionCheck,
    AssumptionReport,
    communicated_agents,
    estimated_agents,
    required_k,
    validate_assumptions,
)
from ._cluster import ClusterDag, Clustering, cluster_induced_dag, compute_clusters
from ._graph import Graph, intersect_graphs, k_hop_neighbors


@dataclass
class TopologyAnalysis:
    """
    Everything the closed loop derives from the two graphs.
    """

    gc: Graph
    gt: Graph
    intersection: Graph
    clustering: Clustering
    dag: Optional[ClusterDag]
    order: List[int]
    k: int
    observer_pairs: Tuple[Tuple[int, int], ...]
    report: AssumptionReport

    def targets(self, i):
        """
        Agents observed by ``i``.
        """
        return [r for o, r in self.observer_pairs if o == i]

    def observers(self, r):
        """
        Agents observing ``r``.
        """
        return [o for o, t in self.observer_pairs if t == r]

    def readers(self, i):
        """
        Communicated and estimated agents of the task of ``i``.
        """
        return communicated_agents(self.gc, self.gt, i), estimated_agents(self.gc, self.gt, i)

    def task_kind(self, i):
        others = self.gt.neighbors(i) - {i}
        if not self.gt.neighbors(i):
            return "none"
        return "collaborative" if others else "individual"

    def as_dict(self):
        clusters = [sorted(c) for c in self.clustering.clusters]
        return {
            "clusters": clusters,
            "cluster_dag": sorted([a + 1, b + 1] for a, b in self.dag.edges)
            if self.dag is not None
            else None,
            "topological_order": [c + 1 for c in self.order],
            "k": self.k,
            "observer_pairs": [list(p) for p in self.observer_pairs],
            "tasks": {
                str(i): {
                    "kind": self.task_kind(i),
                    "communicated": sorted(self.readers(i)[0]),
                    "estimated": sorted(self.readers(i)[1]),
                }
                for i in self.gt.nodes
            },
            "assumptions": self.report.as_dict(),
        }


def observer_pairs(gc, k):
    """
    Pairs (i, r) with r a k-hop neighbour of i, sorted.
    """
    if k < 2:
        return ()
    pairs = []
    for i in gc.nodes:
        pairs.extend((i, r) for r in sorted(k_hop_neighbors(gc, i, k)))
    return tuple(pairs)


def analyze_topology(gc, gt):
    """
    Clusters, cluster DAG, leaf-first order, k and observer pairs.

    The assumption report is filled in even when some check fails; the
    cluster DAG and order are left empty if the task graph is cyclic. A
    task reading an agent it cannot reach fails the ``k-hop`` check and
    leaves k at zero.

    Example
    -------

    .. doctest::

        >>> from stlppc.example import five_agent_graphs
        >>> from stlppc.topology import analyze_topology
        >>>
        >>> a = analyze_topology(*five_agent_graphs())
        >>> [sorted(c) for c in a.clustering.clusters], a.k
        ([[1, 2, 3], [4, 5]], 3)
        >>> len(a.observer_pairs)
        10
    """
    from .._util import TopologyError
    from ._cluster import topological_order

    clustering = compute_clusters(gc, gt)
    report = validate_assumptions(gc, gt, clustering)

    try:
        dag = cluster_induced_dag(clustering, gt)
        order = topological_order(dag)
    except TopologyError:
        dag, order = None, []

    try:
        k = required_k(gc, gt)
        report.checks.append(AssumptionCheck("k-hop", True, k, f"k = {k}"))
    except TopologyError as e:
        k = 0
        report.checks.append(AssumptionCheck("k-hop", False, None, str(e)))

    return TopologyAnalysis(
        gc=gc,
        gt=gt,
        intersection=intersect_graphs(gc, gt),
        clustering=clustering,
        dag=dag,
        order=order,
        k=k,
        observer_pairs=observer_pairs(gc, k),
        report=report,
    )

