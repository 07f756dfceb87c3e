"""Exact linear algebra over the integers and rationals.

Everything here is exact: entries are Python integers and no step rounds.
``rank`` is a sparse fraction-free elimination tuned for the {-1, 0, 1}
matrices coming out of :mod:`chromoh.complex`; ``bareiss_rank`` is the dense
textbook Bareiss algorithm, kept as an independent route for cross-checks.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

import numpy as np
import scipy.sparse as sp

_INT64_SAFE = 1 << 62


class SparseIntMatrix:
    """Immutable sparse integer matrix.

    Stored row-major as ``{row: {col: value}}`` with explicit zeros removed.
    ``triplets()`` gives the sorted ``(row, col, value)`` view.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, rows: Optional[dict[int, dict[int, int]]] = None):
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        clean: dict[int, dict[int, int]] = {}
        for r, d in (rows or {}).items():
            if not 0 <= r < self.nrows:
                raise IndexError(f"row {r} out of range for {self.shape}")
            kept = {}
            for c, v in d.items():
                if not 0 <= c < self.ncols:
                    raise IndexError(f"column {c} out of range for {self.shape}")
                if v:
                    kept[c] = int(v)
            if kept:
                clean[r] = kept
        self._rows = clean

    # -- construction -------------------------------------------------------

    @classmethod
    def from_triplets(cls, nrows: int, ncols: int, triplets: Iterable[tuple[int, int, int]]) -> "SparseIntMatrix":
        """Build from ``(row, col, value)``; repeated positions are summed."""
        rows: dict[int, dict[int, int]] = {}
        for r, c, v in triplets:
            d = rows.setdefault(r, {})
            d[c] = d.get(c, 0) + v
        return cls(nrows, ncols, rows)

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "SparseIntMatrix":
        dense = [list(map(int, row)) for row in dense]
        if ncols is None:
            ncols = len(dense[0]) if dense else 0
        rows = {r: {c: v for c, v in enumerate(row) if v} for r, row in enumerate(dense)}
        return cls(len(dense), ncols, rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseIntMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "SparseIntMatrix":
        return cls(n, n, {k: {k: 1} for k in range(n)})

    # -- views --------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return sum(len(d) for d in self._rows.values())

    def row(self, r: int) -> dict[int, int]:
        return dict(self._rows.get(r, {}))

    def rows(self) -> dict[int, dict[int, int]]:
        """Copy of the row dictionaries (safe to mutate)."""
        return {r: dict(d) for r, d in self._rows.items()}

    def triplets(self) -> list[tuple[int, int, int]]:
        return [(r, c, self._rows[r][c]) for r in sorted(self._rows) for c in sorted(self._rows[r])]

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, d in self._rows.items():
            for c, v in d.items():
                out[r][c] = v
        return out

    def max_abs(self) -> int:
        return max((abs(v) for d in self._rows.values() for v in d.values()), default=0)

    def is_zero(self) -> bool:
        return not self._rows

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __repr__(self) -> str:
        return f"SparseIntMatrix(shape={self.shape}, nnz={self.nnz})"

    # -- arithmetic ---------------------------------------------------------

    def transpose(self) -> "SparseIntMatrix":
        rows: dict[int, dict[int, int]] = {}
        for r, d in self._rows.items():
            for c, v in d.items():
                rows.setdefault(c, {})[r] = v
        return SparseIntMatrix(self.ncols, self.nrows, rows)

    @property
    def T(self) -> "SparseIntMatrix":
        return self.transpose()

    def _combine(self, other: "SparseIntMatrix", sign: int) -> "SparseIntMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        rows = self.rows()
        for r, d in other._rows.items():
            target = rows.setdefault(r, {})
            for c, v in d.items():
                target[c] = target.get(c, 0) + sign * v
        return SparseIntMatrix(self.nrows, self.ncols, rows)

    def __add__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "SparseIntMatrix":
        return SparseIntMatrix(self.nrows, self.ncols, {r: {c: -v for c, v in d.items()} for r, d in self._rows.items()})

    def __matmul__(self, other: "SparseIntMatrix") -> "SparseIntMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        bound = self.max_abs() * other.max_abs() * max(self.ncols, 1)
        if bound < _INT64_SAFE:
            prod = (self.to_scipy() @ other.to_scipy()).tocoo()
            return SparseIntMatrix.from_triplets(
                self.nrows, other.ncols, zip(prod.row.tolist(), prod.col.tolist(), prod.data.tolist())
            )
        rows: dict[int, dict[int, int]] = {}
        for r, d in self._rows.items():
            acc: dict[int, int] = {}
            for k, a in d.items():
                for c, b in other._rows.get(k, {}).items():
                    acc[c] = acc.get(c, 0) + a * b
            rows[r] = acc
        return SparseIntMatrix(self.nrows, other.ncols, rows)

    def to_scipy(self) -> sp.csr_matrix:
        """int64 CSR copy; only valid while entries fit in 64 bits."""
        trip = [(r, c, v) for r, d in self._rows.items() for c, v in d.items()]
        if trip:
            r, c, v = (np.array(t, dtype=np.int64) for t in zip(*trip))
        else:
            r = c = v = np.zeros(0, dtype=np.int64)
        return sp.csr_matrix((v, (r, c)), shape=self.shape, dtype=np.int64)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "SparseIntMatrix":
        """Rows ``row_idx`` and columns ``col_idx``, renumbered in the given order."""
        cmap = {c: k for k, c in enumerate(col_idx)}
        rows = {}
        for k, r in enumerate(row_idx):
            d = self._rows.get(r)
            if d:
                sub = {cmap[c]: v for c, v in d.items() if c in cmap}
                if sub:
                    rows[k] = sub
        return SparseIntMatrix(len(row_idx), len(col_idx), rows)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "SparseIntMatrix":
        """Contiguous block ``[r0:r1, c0:c1]``."""
        rows = {}
        for r, d in self._rows.items():
            if r0 <= r < r1:
                sub = {c - c0: v for c, v in d.items() if c0 <= c < c1}
                if sub:
                    rows[r - r0] = sub
        return SparseIntMatrix(r1 - r0, c1 - c0, rows)


def hstack(blocks: Sequence[SparseIntMatrix]) -> SparseIntMatrix:
    nrows = blocks[0].nrows
    rows: dict[int, dict[int, int]] = {}
    offset = 0
    for B in blocks:
        if B.nrows != nrows:
            raise ValueError("hstack needs equal row counts")
        for r, d in B._rows.items():
            target = rows.setdefault(r, {})
            for c, v in d.items():
                target[c + offset] = v
        offset += B.ncols
    return SparseIntMatrix(nrows, offset, rows)


def vstack(blocks: Sequence[SparseIntMatrix]) -> SparseIntMatrix:
    ncols = blocks[0].ncols
    rows: dict[int, dict[int, int]] = {}
    offset = 0
    for B in blocks:
        if B.ncols != ncols:
            raise ValueError("vstack needs equal column counts")
        for r, d in B._rows.items():
            rows[r + offset] = dict(d)
        offset += B.nrows
    return SparseIntMatrix(offset, ncols, rows)


def _eliminate_rank(rows: dict[int, dict[int, int]]) -> int:
    """Destructive sparse fraction-free elimination; returns the rank.

    Columns are pivoted in order of current nonzero count (ties by index),
    so singleton columns go first and cost no fill-in. Within a column a
    unit pivot is preferred, then the shortest row. Non-unit pivots use the
    cross-multiplication step ``row = p*row - a*pivot_row`` followed by
    removal of the row content, which keeps all entries integral.
    """
    cols: dict[int, set[int]] = {}
    for r, d in rows.items():
        for c in d:
            cols.setdefault(c, set()).add(r)
    heap = [(len(s), c) for c, s in cols.items()]
    heapq.heapify(heap)
    rank = 0
    while heap:
        cnt, c = heapq.heappop(heap)
        holders = cols.get(c)
        if not holders:
            continue
        if len(holders) != cnt:
            heapq.heappush(heap, (len(holders), c))
            continue
        p = min(holders, key=lambda r: (abs(rows[r][c]) != 1, len(rows[r]), abs(rows[r][c]), r))
        prow = rows.pop(p)
        for c2 in prow:
            cols[c2].discard(p)
        pv = prow[c]
        unit = pv == 1 or pv == -1
        touched = set()
        for r in list(cols[c]):
            row = rows[r]
            a = row[c]
            if unit:
                f = a * pv
                for c2, v in prow.items():
                    nv = row.get(c2, 0) - f * v
                    if nv:
                        if c2 not in row:
                            cols[c2].add(r)
                            touched.add(c2)
                        row[c2] = nv
                    elif c2 in row:
                        del row[c2]
                        cols[c2].discard(r)
                        touched.add(c2)
            else:
                g = gcd(pv, a)
                sp_, sa = pv // g, a // g
                if sp_ != 1:
                    for c2 in row:
                        row[c2] *= sp_
                for c2, v in prow.items():
                    nv = row.get(c2, 0) - sa * v
                    if nv:
                        if c2 not in row:
                            cols[c2].add(r)
                            touched.add(c2)
                        row[c2] = nv
                    elif c2 in row:
                        del row[c2]
                        cols[c2].discard(r)
                        touched.add(c2)
                if row:
                    content = gcd(*row.values())
                    if content > 1:
                        for c2 in row:
                            row[c2] //= content
            if not row:
                del rows[r]
        del cols[c]
        rank += 1
        for c2 in touched | set(prow):
            s = cols.get(c2)
            if s:
                heapq.heappush(heap, (len(s), c2))
    return rank


def rank(M: SparseIntMatrix) -> int:
    """Rank over Q."""
    if M.nrows == 0 or M.ncols == 0:
        return 0
    # eliminate along the shorter side
    rows = M.rows() if M.ncols <= M.nrows else M.transpose().rows()
    return _eliminate_rank(rows)


def bareiss_rank(M: SparseIntMatrix) -> int:
    """Rank by dense Bareiss elimination, pivoting on the first nonzero."""
    a = M.to_dense()
    nr, nc = M.shape
    r = 0
    prev = 1
    for c in range(nc):
        if r == nr:
            break
        piv = next((k for k in range(r, nr) if a[k][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for k in range(r + 1, nr):
            ak = a[k]
            f = ak[c]
            for cc in range(c + 1, nc):
                # exact by Sylvester's identity
                ak[cc] = (p * ak[cc] - f * a[r][cc]) // prev
            ak[c] = 0
        prev = p
        r += 1
    return r


def dim_sum(M_img: SparseIntMatrix, coord_subspace: Iterable[int]) -> int:
    """``dim(Im M + W)`` for the coordinate subspace ``W`` of the row space.

    Equal to the rank of ``[M | e_w for w in W]``; computed as
    ``|W| + rank(M with the rows in W removed)``.
    """
    W = set(coord_subspace)
    for w in W:
        if not 0 <= w < M_img.nrows:
            raise IndexError(f"coordinate {w} outside ambient dimension {M_img.nrows}")
    keep = [r for r in range(M_img.nrows) if r not in W]
    return len(W) + rank(M_img.submatrix(keep, range(M_img.ncols)))


def dim_intersection(M_img: SparseIntMatrix, coord_subspace: Iterable[int]) -> int:
    """``dim(Im M ∩ W)`` for a coordinate subspace ``W``."""
    W = set(coord_subspace)
    return rank(M_img) + len(W) - dim_sum(M_img, W)


def kernel_basis(M: SparseIntMatrix) -> list[list[int]]:
    """Integer basis of the right kernel, via rational reduced row echelon form.

    Dense and slow; meant for small matrices and as a test oracle.
    """
    nr, nc = M.shape
    a = [[Fraction(v) for v in row] for row in M.to_dense()]
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        piv = next((k for k in range(r, nr) if a[k][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for k in range(nr):
            if k != r and a[k][c]:
                f = a[k][c]
                a[k] = [vk - f * vr for vk, vr in zip(a[k], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    free = [c for c in range(nc) if c not in set(pivots)]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * nc
        vec[fc] = Fraction(1)
        for k, pc in enumerate(pivots):
            vec[pc] = -a[k][fc]
        denom = lcm(*(v.denominator for v in vec))
        basis.append([int(v * denom) for v in vec])
    return basis
