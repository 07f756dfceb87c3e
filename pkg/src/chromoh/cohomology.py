"""Betti tables of ``d``, cohomology of ``Phi + d``, its degree filtration,
and the map induced by ``Phi`` on ``d``-cohomology.

All dimensions come from exact ranks of the matrices in
:mod:`chromoh.complex`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Iterator, Optional

from .complex import Cochain, DifferentialKind, EnhancedState, StateSumComplex, build_complex
from .graph import Graph, GraphError, is_bipartite
from .linalg import SparseIntMatrix, dim_sum, hstack, rank, vstack

D = DifferentialKind.D
PHI = DifferentialKind.PHI
PHID = DifferentialKind.PHID


@dataclass(frozen=True)
class BigradedDims:
    """Nonzero entries ``(i, j) -> dim H^{i,j}`` plus facts about the graph.

    ``bipartite`` is ``None`` for disconnected graphs.
    """

    n: int
    m: int
    bipartite: Optional[bool]
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.entries))

    def items(self) -> list[tuple[tuple[int, int], int]]:
        return sorted(self.entries.items())

    def total(self) -> int:
        return sum(self.entries.values())


@dataclass(frozen=True)
class FilteredDims:
    """``(i, j) -> dim H^{i,<=j}_{Phi+d}`` for ``0 <= i <= m``, ``0 <= j <= n``."""

    n: int
    m: int
    entries: dict[tuple[int, int], int]

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if j < 0:
            return 0
        return self.entries.get((i, min(j, self.n)), 0)

    def row(self, i: int) -> list[int]:
        return [self[i, j] for j in range(self.n + 1)]


def _bipartite_flag(G: Graph) -> Optional[bool]:
    if G.n == 0 or not G.is_connected():
        return None
    return is_bipartite(G) is not None


class GraphCohomology:
    """Memoized rank computations for one graph."""

    def __init__(self, G: Graph, complex_: Optional[StateSumComplex] = None):
        self.graph = G
        self.cx = complex_ or build_complex(G)
        self._rank_cache: dict[tuple, int] = {}
        self._betti: Optional[BigradedDims] = None

    # -- ranks --------------------------------------------------------------

    def _rank(self, key: tuple, make) -> int:
        if key not in self._rank_cache:
            self._rank_cache[key] = rank(make())
        return self._rank_cache[key]

    def rank_d(self, i: int, j: int) -> int:
        if i < 0 or i >= self.cx.m or not 0 <= j <= self.cx.n:
            return 0
        return self._rank(("d", i, j), lambda: self.cx.graded(D, i, j))

    def rank_phid(self, i: int) -> int:
        if i < 0 or i >= self.cx.m:
            return 0
        return self._rank(("phid", i), lambda: self.cx.matrix(PHID, i))

    # -- tables -------------------------------------------------------------

    def betti(self) -> BigradedDims:
        if self._betti is None:
            self._betti = self._compute_betti()
        return self._betti

    def _compute_betti(self) -> BigradedDims:
        cx = self.cx
        entries = {}
        for i in range(cx.m + 1):
            for j in range(cx.n + 1):
                c = cx.dim(i, j)
                if not c:
                    continue
                h = c - self.rank_d(i, j) - self.rank_d(i - 1, j)
                if h:
                    entries[(i, j)] = h
        return BigradedDims(cx.n, cx.m, _bipartite_flag(self.graph), entries)

    def phid(self) -> dict[int, int]:
        cx = self.cx
        out = {}
        for i in range(cx.m + 1):
            h = cx.dim(i) - self.rank_phid(i) - self.rank_phid(i - 1)
            if h:
                out[i] = h
        return out

    def filtered(self) -> FilteredDims:
        """Dimensions of the images ``H(C^{*,<=j}) -> H_{Phi+d}``.

        With ``W`` the span of basis states of degree ``<= j`` in ``C^i``
        (a prefix of the basis), the value is
        ``dim(Z ∩ W) - dim(B ∩ W)`` where ``Z = ker`` and ``B = im`` of
        ``Phi + d``. Since ``Phi + d`` never raises degree,
        ``dim(Z ∩ W) = |W| - rank`` of its restriction to ``W``.
        """
        cx = self.cx
        entries = {}
        for i in range(cx.m + 1):
            total = cx.dim(i)
            if not total:
                continue
            M = cx.matrix(PHID, i)
            M_prev = cx.matrix(PHID, i - 1) if i > 0 else None
            r_prev = self.rank_phid(i - 1)
            prev_w = -1
            val = 0
            for j in range(cx.n + 1):
                w = cx.block_start[i][j] + cx.dims[i][j]
                if w != prev_w:
                    prev_w = w
                    if w == 0:
                        val = 0
                    else:
                        z = w - rank(M.block(0, M.nrows, 0, w)) if M.nrows else w
                        if M_prev is None:
                            b = 0
                        else:
                            b = r_prev + w - dim_sum(M_prev, range(w))
                        val = z - b
                if val:
                    entries[(i, j)] = val
        return FilteredDims(cx.n, cx.m, entries)

    def induced_phi_rank(self, i: int, j: int) -> int:
        """Rank of ``Phi_*: H^{i,j} -> H^{i+1,j-2}``.

        ``dim(Phi(Z) + B)`` with ``Z = ker d^{i,j}`` and ``B = im d^{i,j-2}``
        equals ``rank [[d^{i,j}, 0], [Phi^{i,j}, d^{i,j-2}]] - rank d^{i,j}``
        (the rank of the bottom row on the kernel of the top row), and the
        induced rank is that minus ``rank d^{i,j-2}``.
        """
        cx = self.cx
        if j - 2 < 0 or not cx.dim(i, j) or not cx.dim(i + 1, j - 2):
            return 0
        H = self.betti()
        if not H[i, j] or not H[i + 1, j - 2]:
            return 0
        d_top = cx.graded(D, i, j)
        phi = cx.graded(PHI, i, j)
        d_low = cx.graded(D, i, j - 2)
        stacked = vstack([
            hstack([d_top, SparseIntMatrix(d_top.nrows, d_low.ncols)]),
            hstack([phi, d_low]),
        ])
        return rank(stacked) - self.rank_d(i, j) - self.rank_d(i, j - 2)


@lru_cache(maxsize=4)
def graph_cohomology(G: Graph) -> GraphCohomology:
    return GraphCohomology(G)


def betti_table(G: Graph) -> BigradedDims:
    return graph_cohomology(G).betti()


def phi_d_cohomology(G: Graph) -> dict[int, int]:
    """Nonzero ``i -> dim H^i_{Phi+d}``."""
    return graph_cohomology(G).phid()


def filtered_dims(G: Graph) -> FilteredDims:
    return graph_cohomology(G).filtered()


def induced_phi_rank(G: Graph, i: int, j: int) -> int:
    return graph_cohomology(G).induced_phi_rank(i, j)


def basic_cocycles(G: Graph, bip: Optional[tuple[int, ...]] = None) -> tuple[Cochain, Cochain]:
    """The cocycles ``S_0, S_1`` of a connected bipartite graph, in the {1, x} basis.

    ``S_0`` colors part-0 vertices with ``a0 = (x+1)/2`` and part-1 vertices
    with ``a1 = (x-1)/2``; ``S_1`` swaps the roles. In dimension 0 every
    vertex is its own component, so component ``v`` is vertex ``v``.
    """
    if bip is None:
        bip = is_bipartite(G)
    if bip is None:
        raise GraphError("basic cocycles exist only for bipartite graphs")
    half = Fraction(1, 2)
    out = []
    for swap in (0, 1):
        chain = {}
        for col in range(1 << G.n):
            # a0 has coefficient 1/2 on both 1 and x; a1 has -1/2 on 1
            signs = [
                -1 if (bip[v] ^ swap) == 1 and not (col >> v) & 1 else 1 for v in range(G.n)
            ]
            chain[EnhancedState(0, col)] = half ** G.n * prod(signs)
        out.append(chain)
    return out[0], out[1]
