import pytest

from stlppc._util import TopologyError
from stlppc.example import five_agent_graphs, path_graphs
from stlppc.topology import Graph, bfs_distances, intersect_graphs, k_hop_neighbors


def test_graph_undirected_edges():
    g = Graph(3, [(2, 1), (1, 2), (3, 2)])
    assert g.edges == {(1, 2), (2, 3)}
    assert g.has_edge(2, 1)
    assert g.neighbors(2) == {1, 3}

    with pytest.raises(TopologyError):
        Graph(3, [(1, 1)])

    with pytest.raises(TopologyError):
        Graph(3, [(1, 4)])


def test_graph_directed_self_loops():
    g = Graph(2, [(1, 1), (1, 2)], directed=True)
    assert g.has_edge(1, 2)
    assert not g.has_edge(2, 1)
    assert g.neighbors(1) == {1, 2}


def test_bfs_distances():
    g = Graph(4, [(1, 2), (2, 3), (3, 4)])
    assert bfs_distances(g, 1) == {1: 0, 2: 1, 3: 2, 4: 3}

    gc, _ = five_agent_graphs()
    assert bfs_distances(gc, 2)[5] == 3

    g = Graph(4, [(1, 2), (2, 3)])
    assert 4 not in bfs_distances(g, 1)

    with pytest.raises(TopologyError):
        bfs_distances(g, 5)


def test_k_hop_neighbors():
    g = Graph(4, [(1, 2), (2, 3), (3, 4)])
    assert k_hop_neighbors(g, 1, 3) == {3, 4}
    assert k_hop_neighbors(g, 1, 2) == {3}

    complete = Graph(4, [(i, j) for i in range(1, 5) for j in range(i + 1, 5)])
    for i in range(1, 5):
        assert k_hop_neighbors(complete, i, 2) == set()

    gc, _ = five_agent_graphs()
    assert {4, 5} <= k_hop_neighbors(gc, 2, 3)
    assert not (k_hop_neighbors(gc, 2, 3) & (gc.neighbors(2) | {2}))

    with pytest.raises(TopologyError):
        k_hop_neighbors(g, 1, 1)


def test_intersect_graphs():
    gc = Graph(2, [(1, 2)])
    assert intersect_graphs(gc, Graph(2, [(1, 2)], directed=True)).edges == {(1, 2)}
    assert intersect_graphs(gc, Graph(2, [(2, 1)], directed=True)).edges == {(1, 2)}
    assert intersect_graphs(gc, Graph(2, [(1, 1)], directed=True)).edges == set()

    gc, gt = five_agent_graphs()
    gi = intersect_graphs(gc, gt)
    assert gi.edges == {(1, 2), (1, 3), (2, 3), (4, 5)}

    gc, gt = path_graphs()
    assert intersect_graphs(gc, gt).edges == set()

    with pytest.raises(TopologyError):
        intersect_graphs(Graph(2), Graph(3, directed=True))
