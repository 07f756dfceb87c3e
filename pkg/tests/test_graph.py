from itertools import combinations

import networkx as nx
import pytest

from chromoh.graph import (
    Graph,
    GraphError,
    complete_graph,
    cycle_graph,
    empty_graph,
    enumerate_connected_graphs,
    is_bipartite,
    is_bridge,
    path_graph,
    sample_connected_graphs,
)


def to_nx(G):
    H = nx.MultiGraph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    return H


def brute_connected_count(n, m_max=None):
    """Connected labeled graphs on n vertices, by checking every edge subset."""
    pairs = list(combinations(range(n), 2))
    count = 0
    for mask in range(1 << len(pairs)):
        if m_max is not None and mask.bit_count() > m_max:
            continue
        H = nx.Graph()
        H.add_nodes_from(range(n))
        H.add_edges_from(p for k, p in enumerate(pairs) if mask >> k & 1)
        count += nx.is_connected(H)
    return count


def test_validation():
    with pytest.raises(GraphError):
        Graph(3, ((0, 3),))
    with pytest.raises(GraphError):
        Graph(-1, ())
    with pytest.raises(GraphError):
        complete_graph(3).delete_edge(3)


def test_delete_edge_examples(k3, c4):
    assert k3.delete_edge(1).m == 2
    assert k3.delete_edge(1).is_connected()
    assert path_graph(2).delete_edge(0) == empty_graph(2)
    P = c4.delete_edge(0)
    assert P.m == 3 and P.is_connected() and is_bipartite(P) is not None


def test_contract_edge_examples(k3, c4):
    C = c4.contract_edge(0)
    assert C.n == 3 and C.m == 3 and C.is_simple() and is_bipartite(C) is None
    D = k3.contract_edge(0)
    assert D.n == 2 and D.edges == ((0, 1), (0, 1))
    assert path_graph(3).contract_edge(0) == path_graph(2)


def test_contract_keeps_loops():
    G = Graph(3, ((0, 1), (0, 1), (1, 2)))
    H = G.contract_edge(0)
    assert H.has_loop()
    with pytest.raises(GraphError):
        H.contract_edge([k for k, (u, v) in enumerate(H.edges) if u == v][0])


def test_bipartite(k3, c4):
    parts = is_bipartite(c4)
    assert {v for v in range(4) if parts[v] == parts[0]} == {0, 2}
    assert is_bipartite(k3) is None
    assert is_bipartite(Graph(2, ((0, 1), (1, 1)))) is None


def test_bridges(c4):
    assert all(is_bridge(path_graph(5), e) for e in range(4))
    assert not any(is_bridge(c4, e) for e in range(4))
    assert not is_bridge(Graph(2, ((0, 1), (0, 1))), 0)


def test_bridge_against_networkx():
    for G in enumerate_connected_graphs(5, 10):
        bridges = {tuple(sorted(e)) for e in nx.bridges(nx.Graph(G.edges))}
        for e, (u, v) in enumerate(G.edges):
            assert is_bridge(G, e) == ((min(u, v), max(u, v)) in bridges)


def test_components_against_networkx():
    G = Graph(6, ((0, 1), (2, 3), (3, 4), (1, 0)))
    assert G.n_components() == nx.number_connected_components(to_nx(G))
    assert G.components()[0] == G.components()[1]
    assert G.components(0) == list(range(6))


def test_enumeration_counts():
    assert [G.n for G in enumerate_connected_graphs(2, 1)] == [1, 2]
    assert sum(1 for _ in enumerate_connected_graphs(3, 3)) == 1 + 1 + 3 + 1
    # 1 + 1 + 4 + 38: the n <= 3 graphs counted above plus 38 on four vertices
    assert sum(1 for _ in enumerate_connected_graphs(4, 6)) == 44
    by_n = {}
    for G in enumerate_connected_graphs(5, 10):
        by_n[G.n] = by_n.get(G.n, 0) + 1
        assert G.is_simple() and G.is_connected()
    assert by_n == {n: brute_connected_count(n) for n in range(1, 6)}
    assert by_n[5] == 728


def test_enumeration_respects_edge_bound():
    graphs = list(enumerate_connected_graphs(5, 5))
    assert all(G.m <= 5 for G in graphs)
    assert sum(G.n == 5 for G in graphs) == brute_connected_count(5, m_max=5)
    assert len(set(graphs)) == len(graphs)


def test_sampling_is_seeded():
    a = sample_connected_graphs(20, 3, 5, 7, 12)
    b = sample_connected_graphs(20, 3, 5, 7, 12)
    assert a == b
    assert a != sample_connected_graphs(20, 4, 5, 7, 12)
    assert all(G.is_connected() and G.m <= 12 and 5 <= G.n <= 7 for G in a)


def test_simplify_and_reorder():
    G = Graph(3, ((0, 1), (1, 0), (1, 2)))
    assert G.simplify() == path_graph(3)
    assert Graph(2, ((0, 1), (1, 1), (1, 1))).simplify().edges == ((0, 1), (1, 1))
    R = cycle_graph(4).reorder_edges([3, 2, 1, 0])
    assert R.edges == tuple(reversed(cycle_graph(4).edges))
