"""
Communication and task graphs, clusters and the cluster-induced DAG.

Graph
    Agent graph; undirected for communication, directed for tasks.
bfs_distances, k_hop_neighbors
    Hop distances and k-hop neighbourhoods.
intersect_graphs, compute_clusters
    Intersection graph and its connected components.
cluster_induced_dag, topological_order
    Dependencies between clusters, leaves first.
required_k
    Hop depth the state observer must cover.
validate_assumptions
    Connectivity, acyclicity and in-cluster communication checks.
analyze_topology
    All of the above at once.
"""
from ._analysis import TopologyAnalysis, analyze_topology, observer_pairs
from ._assumptions import (
    AssumptionCheck,
    AssumptionReport,
    communicated_agents,
    estimated_agents,
    required_k,
    validate_assumptions,
)
from ._cluster import (
    ClusterDag,
    Clustering,
    cluster_induced_dag,
    compute_clusters,
    topological_order,
)
from ._graph import Graph, bfs_distances, intersect_graphs, k_hop_neighbors, task_graph

__all__ = [
    "AssumptionCheck",
    "AssumptionReport",
    "ClusterDag",
    "Clustering",
    "Graph",
    "TopologyAnalysis",
    "analyze_topology",
    "bfs_distances",
    "cluster_induced_dag",
    "communicated_agents",
    "compute_clusters",
    "estimated_agents",
    "intersect_graphs",
    "k_hop_neighbors",
    "observer_pairs",
    "required_k",
    "task_graph",
    "topological_order",
    "validate_assumptions",
]
