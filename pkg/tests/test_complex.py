from fractions import Fraction
from math import comb

import networkx as nx
import pytest

from chromoh.complex import (
    DifferentialKind,
    EnhancedState,
    StateSumComplex,
    apply_differential,
    apply_edge,
    differential_matrix,
)
from chromoh.graph import Graph, complete_graph, cycle_graph, enumerate_connected_graphs

D, PHI, PHID = DifferentialKind.D, DifferentialKind.PHI, DifferentialKind.PHID


def n_components(G, mask):
    H = nx.MultiGraph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(e for k, e in enumerate(G.edges) if mask >> k & 1)
    return nx.number_connected_components(H)


def test_chain_group_dims(k3, k1):
    cx = StateSumComplex(k3)
    assert [cx.dim(0, j) for j in range(4)] == [1, 3, 3, 1]
    assert [cx.dim(1, j) for j in range(3)] == [3, 6, 3]
    assert [StateSumComplex(k1).dim(0, j) for j in range(2)] == [1, 1]


def test_dims_against_component_count():
    G = Graph(4, ((0, 1), (1, 2), (2, 0), (2, 3), (0, 1)))
    cx = StateSumComplex(G)
    for i in range(G.m + 1):
        for j in range(G.n + 1):
            expected = sum(
                comb(n_components(G, mask), j) for mask in range(1 << G.m) if mask.bit_count() == i
            )
            assert cx.dim(i, j) == expected


def test_index_is_basis_position(c4):
    cx = StateSumComplex(c4)
    for i in range(c4.m + 1):
        basis = cx.ungraded_basis(i)
        assert [cx.index(S) for S in basis] == list(range(len(basis)))
        assert [S.degree for S in basis] == cx.degree_of_index(i)
        for j in range(c4.n + 1):
            assert basis[cx.block_range(i, j).start : cx.block_range(i, j).stop] == cx.enhanced_basis(i, j)


def test_apply_edge_examples(p2, k3):
    # x on vertex 0, 1 on vertex 1; merging gives x
    assert apply_edge(p2, EnhancedState(0, 0b01), 0, D) == {EnhancedState(1, 1): 1}
    # one earlier edge in the state gives the sign
    out = apply_edge(k3, EnhancedState(0b001, 0), 2, D)
    assert list(out.values()) == [-1]
    assert apply_edge(p2, EnhancedState(0, 0b11), 0, PHI) == {EnhancedState(1, 0): 1}
    assert apply_edge(p2, EnhancedState(0, 0b11), 0, D) == {}
    with pytest.raises(ValueError):
        apply_edge(p2, EnhancedState(1, 0), 0, D)


def test_small_matrices(p2):
    assert differential_matrix(p2, 0, 1, D).to_dense() == [[1, 1]]
    assert differential_matrix(p2, 0, 2, PHI).to_dense() == [[1]]


def test_phi_is_zero_on_non_merging_edges():
    G = Graph(2, ((0, 1), (0, 1)))
    S = EnhancedState(0b01, 1)
    assert apply_edge(G, S, 1, PHI) == {}
    assert apply_edge(G, S, 1, D) == {EnhancedState(0b11, 1): -1}
    loop = Graph(1, ((0, 0),))
    assert apply_edge(loop, EnhancedState(0, 1), 0, PHID) == {EnhancedState(1, 1): 1}


@pytest.mark.parametrize(
    "G",
    [
        complete_graph(4),
        cycle_graph(5),
        Graph(3, ((0, 1), (1, 2), (0, 1), (2, 2))),
        Graph(4, ((2, 3), (0, 1), (1, 3), (0, 2), (1, 2))),
    ],
)
def test_matrix_builder_matches_reference(G):
    cx = StateSumComplex(G)
    for kind in DifferentialKind:
        for i in range(G.m):
            M = cx.matrix(kind, i)
            src, tgt = cx.ungraded_basis(i), cx.ungraded_basis(i + 1)
            for col, S in enumerate(src):
                image = apply_differential(G, {S: Fraction(1)}, kind)
                column = {r: v for (r, c, v) in M.triplets() if c == col}
                assert column == {tgt.index(T): int(v) for T, v in image.items()}


def test_graded_blocks_respect_degree(c4):
    cx = StateSumComplex(c4)
    for i in range(c4.m):
        full = cx.matrix(D, i)
        deg_src, deg_tgt = cx.degree_of_index(i), cx.degree_of_index(i + 1)
        assert all(deg_src[c] == deg_tgt[r] for r, c, _ in full.triplets())
        full = cx.matrix(PHI, i)
        assert all(deg_src[c] - 2 == deg_tgt[r] for r, c, _ in full.triplets())
    with pytest.raises(ValueError):
        cx.graded(PHID, 0, 0)


def test_identities_on_small_corpus():
    for G in enumerate_connected_graphs(4, 6):
        cx = StateSumComplex(G)
        for i in range(G.m - 1):
            d0, d1 = cx.matrix(D, i), cx.matrix(D, i + 1)
            p0, p1 = cx.matrix(PHI, i), cx.matrix(PHI, i + 1)
            s0, s1 = cx.matrix(PHID, i), cx.matrix(PHID, i + 1)
            assert (d1 @ d0).is_zero()
            assert (p1 @ p0).is_zero()
            assert (p1 @ d0 + d1 @ p0).is_zero()
            assert (s1 @ s0).is_zero()
        for i in range(G.m):
            assert cx.matrix(PHID, i) == cx.matrix(D, i) + cx.matrix(PHI, i)
