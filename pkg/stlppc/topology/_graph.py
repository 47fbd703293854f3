import networkx as nx

from .._util import TopologyError


class Graph:
    """
    Graph over agents 1, …, n.

    Undirected graphs store each edge once as an ordered pair (i, j) with
    i < j and reject self-loops. Directed graphs model task dependencies and
    may hold self-loops.

    Parameters
    ----------
    n : int
        Number of agents.
    edges : iterable
        Pairs of agent ids.
    directed : bool
        ``True`` for a task graph. Defaults to ``False``.

    Example
    -------

    .. doctest::

        >>> from stlppc.topology import Graph
        >>>
        >>> g = Graph(3, [(2, 1), (3, 2), (1, 2)])
        >>> sorted(g.edges)
        [(1, 2), (2, 3)]
        >>> g.neighbors(2)
        {1, 3}
    """

    def __init__(self, n, edges=(), directed=False):
        n = int(n)
        if n < 1:
            raise TopologyError("A graph needs at least one agent.")

        self._n = n
        self._directed = bool(directed)

        store = set()
        for e in edges:
            i, j = (int(v) for v in e)
            if not (1 <= i <= n and 1 <= j <= n):
                raise TopologyError(f"Edge ({i}, {j}) has ids outside [1, {n}].")
            if i == j and not directed:
                raise TopologyError(f"Self-loop ({i}, {i}) in an undirected graph.")
            store.add((i, j) if directed else (min(i, j), max(i, j)))
        self._edges = frozenset(store)

    @property
    def n(self):
        return self._n

    @property
    def nodes(self):
        return range(1, self._n + 1)

    @property
    def edges(self):
        return self._edges

    @property
    def directed(self):
        return self._directed

    def has_edge(self, i, j):
        if self._directed:
            return (i, j) in self._edges
        return (min(i, j), max(i, j)) in self._edges

    def neighbors(self, i):
        """
        One-hop neighbours of ``i`` (successors for directed graphs).
        """
        out = set()
        for a, b in self._edges:
            if a == i:
                out.add(b)
            elif b == i and not self._directed:
                out.add(a)
        return out

    def to_networkx(self):
        g = nx.DiGraph() if self._directed else nx.Graph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(sorted(self._edges))
        return g

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self._n == other._n
            and self._directed == other._directed
            and self._edges == other._edges
        )

    def __hash__(self):
        return hash((self._n, self._directed, self._edges))

    def __repr__(self):
        kind = "directed" if self._directed else "undirected"
        return f"Graph(n={self._n}, {kind}, edges={sorted(self._edges)})"


def task_graph(n, reads):
    """
    Task dependency graph from the agents each task reads.

    Parameters
    ----------
    n : int
        Number of agents.
    reads : dict
        Task owner to the ids of the agents its task reads; an owner reading
        its own state gives a self-loop.
    """
    edges = []
    for i, agents in reads.items():
        edges.extend((int(i), int(j)) for j in agents)
    return Graph(n, edges, directed=True)


def bfs_distances(g, source):
    """
    Hop counts of shortest paths from ``source``.

    Unreachable agents are absent from the result.

    Example
    -------

    .. doctest::

        >>> from stlppc.topology import Graph, bfs_distances
        >>>
        >>> bfs_distances(Graph(4, [(1, 2), (2, 3), (3, 4)]), 1)
        {1: 0, 2: 1, 3: 2, 4: 3}
    """
    if g.directed:
        raise TopologyError("bfs_distances expects an undirected graph.")
    if not (1 <= source <= g.n):
        raise TopologyError(f"Source {source} is outside [1, {g.n}].")
    dist = nx.single_source_shortest_path_length(g.to_networkx(), source)
    return dict(sorted(dist.items()))


def k_hop_neighbors(g, i, k):
    """
    Agents at shortest-path distance between 2 and ``k`` from ``i``.
    """
    k = int(k)
    if k < 2:
        raise TopologyError(f"k must be at least 2, got {k}.")
    dist = bfs_distances(g, i)
    return {j for j, d in dist.items() if 2 <= d <= k}


def intersect_graphs(gc, gt):
    """
    Undirected intersection of a communication graph and a task graph.

    Edge {i, j} is kept when it is a communication edge and either (i, j) or
    (j, i) is a task edge. Task self-loops are dropped.
    """
    if gc.n != gt.n:
        raise TopologyError(f"Vertex-count mismatch: {gc.n} and {gt.n}.")

    edges = []
    for i, j in gt.edges:
        if i != j and gc.has_edge(i, j):
            edges.append((i, j))
    return Graph(gc.n, edges)
