from fractions import Fraction

import pytest
import sympy

from chromoh.cohomology import (
    GraphCohomology,
    basic_cocycles,
    betti_table,
    filtered_dims,
    induced_phi_rank,
    phi_d_cohomology,
)
from chromoh.complex import DifferentialKind, EnhancedState, StateSumComplex, apply_differential
from chromoh.graph import Graph, GraphError, complete_graph, cycle_graph, is_bipartite, path_graph
from chromoh.linalg import kernel_basis

D, PHI, PHID = DifferentialKind.D, DifferentialKind.PHI, DifferentialKind.PHID


def srank(M):
    return sympy.Matrix(M.to_dense()).rank() if M.nrows and M.ncols else 0


def span_rank(vectors):
    return sympy.Matrix(vectors).rank() if vectors else 0


def oracle_betti(G):
    cx = StateSumComplex(G)
    out = {}
    for i in range(G.m + 1):
        for j in range(G.n + 1):
            c = cx.dim(i, j)
            r_out = srank(cx.graded(D, i, j)) if i < G.m else 0
            r_in = srank(cx.graded(D, i - 1, j)) if i > 0 else 0
            if c - r_out - r_in:
                out[(i, j)] = c - r_out - r_in
    return out


def oracle_induced(G, i, j):
    """rank of Phi_* from explicit cocycle and coboundary vectors."""
    cx = StateSumComplex(G)
    Z = kernel_basis(cx.graded(D, i, j))
    phi = cx.graded(PHI, i, j).to_dense()
    images = [[sum(a * b for a, b in zip(row, z)) for row in phi] for z in Z]
    d_low = cx.graded(D, i, j - 2)
    B = [list(col) for col in zip(*d_low.to_dense())] if d_low.nrows and d_low.ncols else []
    return span_rank(images + B) - span_rank(B)


def oracle_filtered(G, i, j):
    cx = StateSumComplex(G)
    w = cx.block_start[i][min(j, G.n)] + cx.dims[i][min(j, G.n)]
    M = cx.matrix(PHID, i) if i < G.m else None
    if M is not None and M.nrows:
        Z = [v + [0] * (cx.dim(i) - w) for v in kernel_basis(M.block(0, M.nrows, 0, w))]
    else:
        Z = [[int(r == c) for c in range(cx.dim(i))] for r in range(w)]
    if i > 0:
        P = cx.matrix(PHID, i - 1).to_dense()
        B = [list(col) for col in zip(*P)] if P and P[0] else []
    else:
        B = []
    return span_rank(Z + B) - span_rank(B)


SMALL = [
    Graph(1, ()),
    path_graph(2),
    path_graph(3),
    complete_graph(3),
    cycle_graph(4),
    Graph(4, ((0, 1), (1, 2), (2, 0), (2, 3))),
    complete_graph(4),
    cycle_graph(5),
]


def test_betti_examples(k1, k3, c4):
    assert betti_table(k1).entries == {(0, 0): 1, (0, 1): 1}
    assert betti_table(k3).entries == {(0, 3): 1, (1, 1): 1}
    assert betti_table(c4).entries == {(0, 4): 1, (0, 3): 1, (1, 3): 1, (2, 1): 1}
    assert betti_table(k3).bipartite is False and betti_table(c4).bipartite is True
    assert betti_table(Graph(3, ((0, 1),))).bipartite is None


@pytest.mark.parametrize("G", SMALL, ids=repr)
def test_betti_against_sympy(G):
    assert betti_table(G).entries == oracle_betti(G)


def test_loops_kill_everything():
    G = Graph(3, ((0, 1), (1, 1), (1, 2)))
    hc = GraphCohomology(G)
    assert hc.betti().entries == {}
    assert hc.phid() == {}


def test_phi_d_examples(k3, p3, k1):
    assert phi_d_cohomology(k3) == {}
    assert phi_d_cohomology(p3) == {0: 2}
    assert phi_d_cohomology(k1) == {0: 2}


def test_filtered_examples(c4, k3, p2):
    assert filtered_dims(c4).row(0) == [0, 0, 0, 1, 2]
    F = filtered_dims(k3)
    assert all(F[i, j] == 0 for i in range(4) for j in range(4))
    assert filtered_dims(p2).row(0) == [0, 1, 2]
    assert filtered_dims(p2)[0, 9] == 2 and filtered_dims(p2)[0, -1] == 0


@pytest.mark.parametrize("G", SMALL, ids=repr)
def test_filtered_against_oracle(G):
    F = filtered_dims(G)
    for i in range(G.m + 1):
        for j in range(G.n + 1):
            assert F[i, j] == oracle_filtered(G, i, j), (i, j)


def test_induced_rank_examples(k3, c4):
    assert induced_phi_rank(k3, 0, 3) == 1
    assert induced_phi_rank(c4, 0, 4) == 0
    assert induced_phi_rank(c4, 1, 3) == 1
    assert induced_phi_rank(c4, 0, 1) == 0


@pytest.mark.parametrize("G", SMALL, ids=repr)
def test_induced_rank_against_kernel_oracle(G):
    hc = GraphCohomology(G)
    for i in range(G.m):
        for j in range(2, G.n + 1):
            assert hc.induced_phi_rank(i, j) == oracle_induced(G, i, j), (i, j)


def test_basic_cocycles_p2(p2):
    S0, S1 = basic_cocycles(p2)
    q = Fraction(1, 4)
    # S0 = a0 (x) a1 = (1/4)(x+1)(x) (x-1); bit v of the coloring is vertex v
    assert S0 == {
        EnhancedState(0, 0b00): -q,
        EnhancedState(0, 0b01): -q,
        EnhancedState(0, 0b10): q,
        EnhancedState(0, 0b11): q,
    }
    assert S1[EnhancedState(0, 0b11)] == S0[EnhancedState(0, 0b11)]


@pytest.mark.parametrize("G", [path_graph(2), path_graph(3), cycle_graph(4)], ids=repr)
def test_basic_cocycles_are_cocycles(G):
    S0, S1 = basic_cocycles(G)
    assert apply_differential(G, S0, PHID) == {}
    assert apply_differential(G, S1, PHID) == {}
    top = EnhancedState(0, (1 << G.n) - 1)
    assert S0[top] - S1[top] == 0


def test_basic_cocycles_need_bipartite(k3):
    with pytest.raises(GraphError):
        basic_cocycles(k3)
    assert is_bipartite(cycle_graph(6)) is not None
