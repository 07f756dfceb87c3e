"""Enhanced states, cochain bases and differential matrices.

A state is an edge bitmask; its connected components are numbered in order
of their smallest vertex and an enhanced state colors them with a bitmask
(bit ``c`` set means component ``c`` is colored ``x``). ``C^{i,j}`` is
ordered by state mask, then by coloring read as a binary number, and the
ungraded ``C^i`` concatenates the ``C^{i,j}`` in increasing ``j``, so graded
blocks are contiguous slices of the ungraded matrices.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping

from .algebra import ONE, X, AlgebraKind, basis_product
from .graph import Graph, GraphError, component_labels
from .linalg import SparseIntMatrix

Cochain = dict["EnhancedState", Fraction]


class DifferentialKind(enum.Enum):
    D = "d"
    PHI = "phi"
    PHID = "phid"

    @property
    def algebra(self) -> AlgebraKind:
        return {"d": AlgebraKind.A, "phi": AlgebraKind.B, "phid": AlgebraKind.C}[self.value]

    @property
    def degree_shift(self) -> int | None:
        """Change in ``j``; ``None`` when the map is not homogeneous."""
        return {"d": 0, "phi": -2, "phid": None}[self.value]


@dataclass(frozen=True, order=True)
class EnhancedState:
    mask: int
    coloring: int

    @property
    def dim(self) -> int:
        return self.mask.bit_count()

    @property
    def degree(self) -> int:
        return self.coloring.bit_count()


@lru_cache(maxsize=None)
def _popcount_rank(k: int) -> tuple[int, ...]:
    """Position of each ``k``-bit coloring among those with equal popcount."""
    counters = [0] * (k + 1)
    out = []
    for col in range(1 << k):
        p = col.bit_count()
        out.append(counters[p])
        counters[p] += 1
    return tuple(out)


class StateSumComplex:
    """Bookkeeping for the cochain groups of one graph.

    Only per-state component data and block offsets are held; enhanced
    bases are generated on request and matrices are built per dimension.
    """

    def __init__(self, G: Graph):
        self.graph = G
        n, m = G.n, G.m
        self.n, self.m = n, m
        self.labels: list[tuple[int, ...]] = []
        self.k: list[int] = []
        for mask in range(1 << m):
            lab = component_labels(n, G.edges, mask)
            self.labels.append(tuple(lab))
            self.k.append(max(lab) + 1 if lab else 0)
        self.masks_by_dim: list[list[int]] = [[] for _ in range(m + 1)]
        for mask in range(1 << m):
            self.masks_by_dim[mask.bit_count()].append(mask)

        # dims[i][j], block_start[i][j], mask_offset[i][j][mask]
        self.dims: list[list[int]] = []
        self.block_start: list[list[int]] = []
        self.mask_offset: list[list[dict[int, int]]] = []
        for i in range(m + 1):
            dims_i, starts_i, offs_i = [], [], []
            start = 0
            for j in range(n + 1):
                offs = {}
                size = 0
                for mask in self.masks_by_dim[i]:
                    c = comb(self.k[mask], j)
                    if c:
                        offs[mask] = size
                        size += c
                dims_i.append(size)
                starts_i.append(start)
                offs_i.append(offs)
                start += size
            self.dims.append(dims_i)
            self.block_start.append(starts_i)
            self.mask_offset.append(offs_i)
        self._matrices: dict[tuple[DifferentialKind, int], SparseIntMatrix] = {}

    # -- bases --------------------------------------------------------------

    def dim(self, i: int, j: int | None = None) -> int:
        if not 0 <= i <= self.m:
            return 0
        if j is None:
            return sum(self.dims[i])
        return self.dims[i][j] if 0 <= j <= self.n else 0

    def block_range(self, i: int, j: int) -> range:
        """Index range of ``C^{i,j}`` inside ``C^i``."""
        if not 0 <= i <= self.m or not 0 <= j <= self.n:
            return range(0)
        s = self.block_start[i][j]
        return range(s, s + self.dims[i][j])

    def degree_of_index(self, i: int) -> list[int]:
        """Degree ``j`` of each basis vector of ``C^i``."""
        out: list[int] = []
        for j in range(self.n + 1):
            out.extend([j] * self.dims[i][j])
        return out

    def index(self, S: EnhancedState) -> int:
        """Position of ``S`` in the ungraded basis of ``C^i``."""
        i, j = S.dim, S.degree
        k = self.k[S.mask]
        if S.coloring >> k:
            raise ValueError(f"coloring {S.coloring:b} has more than {k} components")
        return self.block_start[i][j] + self.mask_offset[i][j][S.mask] + _popcount_rank(k)[S.coloring]

    def enhanced_basis(self, i: int, j: int) -> list[EnhancedState]:
        if not 0 <= i <= self.m or not 0 <= j <= self.n:
            return []
        out = []
        for mask in self.masks_by_dim[i]:
            k = self.k[mask]
            out.extend(EnhancedState(mask, col) for col in range(1 << k) if col.bit_count() == j)
        return out

    def ungraded_basis(self, i: int) -> list[EnhancedState]:
        out = []
        for j in range(self.n + 1):
            out.extend(self.enhanced_basis(i, j))
        return out

    # -- differentials ------------------------------------------------------

    def matrix(self, kind: DifferentialKind, i: int) -> SparseIntMatrix:
        """Ungraded matrix of ``kind`` from ``C^i`` to ``C^{i+1}``."""
        key = (kind, i)
        if key not in self._matrices:
            self._matrices[key] = self._build(kind, i)
        return self._matrices[key]

    def graded(self, kind: DifferentialKind, i: int, j: int) -> SparseIntMatrix:
        """Block ``C^{i,j} -> C^{i+1,j+shift}`` of a homogeneous differential."""
        shift = kind.degree_shift
        if shift is None:
            raise ValueError("Phi + d is not homogeneous; use matrix()")
        src = self.block_range(i, j)
        tgt = self.block_range(i + 1, j + shift)
        if not src or not tgt:
            return SparseIntMatrix(len(tgt), len(src))
        return self.matrix(kind, i).block(tgt.start, tgt.stop, src.start, src.stop)

    def _build(self, kind: DifferentialKind, i: int) -> SparseIntMatrix:
        nsrc = self.dim(i)
        ntgt = self.dim(i + 1)
        if nsrc == 0 or ntgt == 0:
            return SparseIntMatrix(ntgt, nsrc)
        alg = kind.algebra
        table = {(a, b): basis_product(alg, a, b) for a in (ONE, X) for b in (ONE, X)}
        keep_non_merging = alg.keeps_non_merging
        edges = self.graph.edges
        rows: dict[int, dict[int, int]] = {}
        starts_src, offs_src = self.block_start[i], self.mask_offset[i]
        starts_tgt, offs_tgt = self.block_start[i + 1], self.mask_offset[i + 1]

        for mask in self.masks_by_dim[i]:
            lab = self.labels[mask]
            k = self.k[mask]
            prank = _popcount_rank(k)
            for e in range(self.m):
                if (mask >> e) & 1:
                    continue
                tmask = mask | (1 << e)
                sign = -1 if (mask & ((1 << e) - 1)).bit_count() & 1 else 1
                u, v = edges[e]
                cu, cv = lab[u], lab[v]
                if cu == cv:
                    if not keep_non_merging:
                        continue
                    # same partition, same component numbering
                    for col in range(1 << k):
                        j = col.bit_count()
                        src = starts_src[j] + offs_src[j][mask] + prank[col]
                        tgt = starts_tgt[j] + offs_tgt[j][tmask] + prank[col]
                        rows.setdefault(tgt, {})[src] = sign
                    continue
                tlab = self.labels[tmask]
                tk = k - 1
                trank = _popcount_rank(tk)
                # representative (smallest) vertex of each old component
                reps = [0] * k
                seen = [False] * k
                for w, c in enumerate(lab):
                    if not seen[c]:
                        seen[c] = True
                        reps[c] = w
                cmap = [tlab[reps[c]] for c in range(k)]
                merged = tlab[u]
                others = [(c, cmap[c]) for c in range(k) if c != cu and c != cv]
                for col in range(1 << k):
                    rest = 0
                    for c, nc in others:
                        if (col >> c) & 1:
                            rest |= 1 << nc
                    c1, cx = table[((col >> cu) & 1, (col >> cv) & 1)]
                    if not c1 and not cx:
                        continue
                    j = col.bit_count()
                    src = starts_src[j] + offs_src[j][mask] + prank[col]
                    if c1:
                        tcol = rest
                        tj = tcol.bit_count()
                        tgt = starts_tgt[tj] + offs_tgt[tj][tmask] + trank[tcol]
                        rows.setdefault(tgt, {})[src] = sign * c1
                    if cx:
                        tcol = rest | (1 << merged)
                        tj = tcol.bit_count()
                        tgt = starts_tgt[tj] + offs_tgt[tj][tmask] + trank[tcol]
                        rows.setdefault(tgt, {})[src] = sign * cx
        return SparseIntMatrix(ntgt, nsrc, rows)


@lru_cache(maxsize=4)
def build_complex(G: Graph) -> StateSumComplex:
    return StateSumComplex(G)


# -- module-level operations ------------------------------------------------

def enhanced_basis(G: Graph, i: int, j: int) -> list[EnhancedState]:
    return build_complex(G).enhanced_basis(i, j)


def apply_edge(G: Graph, S: EnhancedState, e: int, kind: DifferentialKind) -> Cochain:
    """Image of one enhanced state under the edge-``e`` part of ``kind``.

    Written directly from the definition, recomputing components; the
    matrix builder in :class:`StateSumComplex` is checked against it.
    """
    if not 0 <= e < G.m:
        raise GraphError(f"edge index {e} out of range for m={G.m}")
    if (S.mask >> e) & 1:
        raise ValueError(f"edge {e} already belongs to the state")
    lab = component_labels(G.n, G.edges, S.mask)
    tmask = S.mask | (1 << e)
    tlab = component_labels(G.n, G.edges, tmask)
    sign = (-1) ** (S.mask & ((1 << e) - 1)).bit_count()
    u, v = G.edges[e]
    color = {lab[w]: (S.coloring >> lab[w]) & 1 for w in range(G.n)}
    alg = kind.algebra
    if lab[u] == lab[v]:
        if not alg.keeps_non_merging:
            return {}
        return {EnhancedState(tmask, S.coloring): Fraction(sign)}
    # colors of the untouched components carried over by vertex
    base = 0
    for w in range(G.n):
        if lab[w] not in (lab[u], lab[v]) and color[lab[w]]:
            base |= 1 << tlab[w]
    out: Cochain = {}
    c1, cx = basis_product(alg, color[lab[u]], color[lab[v]])
    if c1:
        out[EnhancedState(tmask, base)] = Fraction(sign * c1)
    if cx:
        out[EnhancedState(tmask, base | (1 << tlab[u]))] = Fraction(sign * cx)
    return out


def apply_differential(G: Graph, chain: Mapping[EnhancedState, Fraction], kind: DifferentialKind) -> Cochain:
    """Apply the full differential to a cochain, summing over absent edges."""
    out: Cochain = {}
    for S, coef in chain.items():
        if not coef:
            continue
        for e in range(G.m):
            if (S.mask >> e) & 1:
                continue
            for T, c in apply_edge(G, S, e, kind).items():
                out[T] = out.get(T, Fraction(0)) + coef * c
    return {T: c for T, c in out.items() if c}


def differential_matrix(G: Graph, i: int, j: int, kind: DifferentialKind) -> SparseIntMatrix:
    """Matrix of ``kind`` in the deterministic bases.

    ``d``: ``C^{i,j} -> C^{i+1,j}``; ``Phi``: ``C^{i,j} -> C^{i+1,j-2}``;
    ``Phi + d``: the ungraded ``C^i -> C^{i+1}`` (``j`` is ignored).
    """
    cx = build_complex(G)
    if kind is DifferentialKind.PHID:
        return cx.matrix(kind, i)
    return cx.graded(kind, i, j)
