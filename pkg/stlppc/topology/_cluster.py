from dataclasses import dataclass
from typing import Dict, FrozenSet, Tuple

import networkx as nx

from .._util import TopologyError
from ._graph import intersect_graphs


@dataclass(frozen=True)
class Clustering:
    """
    Partition of the agents into clusters.

    Clusters are ordered by their smallest member; ``membership`` maps an
    agent to its cluster index.
    """

    clusters: Tuple[FrozenSet[int], ...]
    edges: Tuple[FrozenSet[Tuple[int, int]], ...]
    membership: Dict[int, int]

    def cluster_of(self, agent):
        return self.clusters[self.membership[agent]]

    def __len__(self):
        return len(self.clusters)


@dataclass(frozen=True)
class ClusterDag:
    """
    Dependencies between clusters: (l, j) means a task in cluster l reads a
    state in cluster j.
    """

    nodes: Tuple[int, ...]
    edges: FrozenSet[Tuple[int, int]]

    def to_networkx(self):
        g = nx.DiGraph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(sorted(self.edges))
        return g

    def leaves(self):
        src = {a for a, _ in self.edges}
        return [c for c in self.nodes if c not in src]


def compute_clusters(gc, gt):
    """
    Connected components of the intersection graph.

    Example
    -------

    .. doctest::

        >>> from stlppc.topology import Graph, compute_clusters
        >>>
        >>> gc = Graph(3, [(1, 2), (2, 3)])
        >>> gt = Graph(3, [(1, 2)], directed=True)
        >>> [sorted(c) for c in compute_clusters(gc, gt).clusters]
        [[1, 2], [3]]
    """
    gi = intersect_graphs(gc, gt)
    comps = sorted((frozenset(c) for c in nx.connected_components(gi.to_networkx())), key=min)

    membership = {}
    for idx, c in enumerate(comps):
        for a in c:
            membership[a] = idx

    edges = tuple(
        frozenset(e for e in gi.edges if e[0] in c and e[1] in c) for c in comps
    )

    _assert_partition(comps, gc.n)
    return Clustering(tuple(comps), edges, membership)


def cluster_induced_dag(clustering, gt):
    """
    Directed graph between clusters induced by cross-cluster task edges.

    Raises
    ------
    TopologyError
        If the induced graph has a directed cycle.
    """
    m = clustering.membership
    edges = set()
    for i, j in gt.edges:
        if m[i] != m[j]:
            edges.add((m[i], m[j]))

    dag = ClusterDag(tuple(range(len(clustering))), frozenset(edges))
    _check_acyclic(dag)
    return dag


def topological_order(dag):
    """
    Cluster indices with leaves first.

    Every edge (l, j) of ``dag`` has j before l. Ties follow index order.

    Example
    -------

    .. doctest::

        >>> from stlppc.topology import ClusterDag, topological_order
        >>>
        >>> topological_order(ClusterDag((0, 1, 2), frozenset({(0, 1), (1, 2)})))
        [2, 1, 0]
    """
    _check_acyclic(dag)
    return list(nx.lexicographical_topological_sort(dag.to_networkx().reverse()))


def _check_acyclic(dag):
    g = dag.to_networkx()
    if not nx.is_directed_acyclic_graph(g):
        cycle = nx.find_cycle(g)
        text = " -> ".join(f"C{a + 1}" for a, _ in cycle) + f" -> C{cycle[0][0] + 1}"
        raise TopologyError(f"Cluster-induced graph has a cycle: {text}.")


def _assert_partition(comps, n):
    seen = set()
    for c in comps:
        assert not (seen & c), "clusters overlap"
        seen |= c
    assert seen == set(range(1, n + 1)), "clusters do not cover all agents"
