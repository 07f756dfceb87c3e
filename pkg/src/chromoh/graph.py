"""Labeled multigraphs with a total order on edges.

The position of an edge in ``Graph.edges`` is its index in the edge order;
the sign convention of every differential in :mod:`chromoh.complex` depends
on it, so every operation here preserves the relative order of surviving
edges.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for invalid graphs or invalid operations on a graph."""


@dataclass(frozen=True)
class Graph:
    """Multigraph on vertices ``0..n-1``; loops and parallel edges allowed."""

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"vertex count must be non-negative, got {self.n}")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for idx, (u, v) in enumerate(edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {idx} = ({u}, {v}) out of range for n={self.n}")
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"

    # -- structural queries -------------------------------------------------

    def has_loop(self) -> bool:
        return any(u == v for u, v in self.edges)

    def has_multiedge(self) -> bool:
        seen = set()
        for u, v in self.edges:
            key = (min(u, v), max(u, v))
            if key in seen:
                return True
            seen.add(key)
        return False

    def is_simple(self) -> bool:
        return not self.has_loop() and not self.has_multiedge()

    def components(self, edge_mask: Optional[int] = None) -> list[int]:
        """Component label of every vertex.

        Components are numbered ``0, 1, ...`` in order of their smallest
        vertex. With ``edge_mask`` only the edges whose bit is set are used.
        """
        return component_labels(self.n, self.edges, edge_mask)

    def n_components(self) -> int:
        labels = self.components()
        return max(labels) + 1 if labels else 0

    def is_connected(self) -> bool:
        return self.n_components() == 1

    # -- derived graphs -----------------------------------------------------

    def delete_edge(self, e: int) -> "Graph":
        self._check_index(e)
        return Graph(self.n, self.edges[:e] + self.edges[e + 1:])

    def contract_edge(self, e: int) -> "Graph":
        """Identify the endpoints of edge ``e``.

        The lower endpoint survives, higher labels shift down by one, and
        any loops or parallel edges created along the way are kept.
        """
        self._check_index(e)
        u, v = self.edges[e]
        if u == v:
            raise GraphError(f"cannot contract loop edge {e}")
        keep, gone = min(u, v), max(u, v)

        def relabel(w: int) -> int:
            if w == gone:
                return keep
            return w - 1 if w > gone else w

        edges = tuple(
            (relabel(a), relabel(b)) for idx, (a, b) in enumerate(self.edges) if idx != e
        )
        return Graph(self.n - 1, edges)

    def simplify(self) -> "Graph":
        """Drop repeated edges, keeping the first occurrence of each."""
        seen = set()
        kept = []
        for u, v in self.edges:
            key = (min(u, v), max(u, v))
            if key not in seen:
                seen.add(key)
                kept.append((u, v))
        return Graph(self.n, tuple(kept))

    def reorder_edges(self, order: Sequence[int]) -> "Graph":
        """Graph whose edge ``k`` is this graph's edge ``order[k]``."""
        if sorted(order) != list(range(self.m)):
            raise GraphError("order must be a permutation of the edge indices")
        return Graph(self.n, tuple(self.edges[k] for k in order))

    def add_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.n, self.edges + ((u, v),))

    def _check_index(self, e: int) -> None:
        if not 0 <= e < self.m:
            raise GraphError(f"edge index {e} out of range for m={self.m}")


def component_labels(n: int, edges: Sequence[Edge], edge_mask: Optional[int] = None) -> list[int]:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for idx, (u, v) in enumerate(edges):
        if edge_mask is not None and not (edge_mask >> idx) & 1:
            continue
        ru, rv = find(u), find(v)
        if ru != rv:
            # smaller root wins, so a root is always its component's minimum
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv
    labels = [0] * n
    seen: dict[int, int] = {}
    for w in range(n):
        r = find(w)
        if r not in seen:
            seen[r] = len(seen)
        labels[w] = seen[r]
    return labels


def is_bipartite(G: Graph) -> Optional[tuple[int, ...]]:
    """Return the part (0 or 1) of every vertex, or ``None`` for an odd cycle.

    Vertex 0 is always in part 0. A loop counts as an odd cycle.
    """
    if not G.is_connected():
        raise GraphError("is_bipartite expects a connected graph")
    adj: list[list[int]] = [[] for _ in range(G.n)]
    for u, v in G.edges:
        if u == v:
            return None
        adj[u].append(v)
        adj[v].append(u)
    parts = [-1] * G.n
    parts[0] = 0
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if parts[w] < 0:
                parts[w] = 1 - parts[u]
                stack.append(w)
            elif parts[w] == parts[u]:
                return None
    return tuple(parts)


def is_bridge(G: Graph, e: int) -> bool:
    """True iff removing edge ``e`` disconnects the (connected) graph."""
    G._check_index(e)
    if not G.is_connected():
        raise GraphError("is_bridge expects a connected graph")
    return not G.delete_edge(e).is_connected()


# -- named graphs ---------------------------------------------------------

def path_graph(n: int) -> Graph:
    return Graph(n, tuple((k, k + 1) for k in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a simple cycle needs at least 3 vertices")
    return Graph(n, tuple((k, k + 1) for k in range(n - 1)) + ((n - 1, 0),))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(n), 2)))


def empty_graph(n: int) -> Graph:
    return Graph(n, ())


# -- corpus ---------------------------------------------------------------

def _graph_from_mask(n: int, pairs: Sequence[Edge], mask: int) -> Graph:
    return Graph(n, tuple(p for k, p in enumerate(pairs) if (mask >> k) & 1))


def enumerate_connected_graphs(n_max: int, m_max: int) -> Iterator[Graph]:
    """Every labeled connected simple graph with ``n <= n_max``, ``m <= m_max``.

    Graphs come out by vertex count, then by edge bitmask over the
    lexicographically ordered pairs of the complete graph.
    """
    if n_max < 1:
        raise GraphError("n_max must be at least 1")
    for n in range(1, n_max + 1):
        pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            if mask.bit_count() > m_max or mask.bit_count() < n - 1:
                continue
            G = _graph_from_mask(n, pairs, mask)
            if G.is_connected():
                yield G


def sample_connected_graphs(
    count: int, seed: int, n_min: int, n_max: int, m_max: int
) -> list[Graph]:
    """Seeded sample of labeled connected simple graphs.

    The vertex count is uniform on ``[n_min, n_max]``; given ``n``, the graph
    is uniform among connected labeled graphs with at most ``m_max`` edges
    (rejection sampling over edge bitmasks).
    """
    if n_min < 1 or n_max < n_min:
        raise GraphError("need 1 <= n_min <= n_max")
    if m_max < n_min - 1:
        raise GraphError("m_max too small for any connected graph in range")
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(n_min, n_max)
        if m_max < n - 1:
            continue
        pairs = list(combinations(range(n), 2))
        mask = rng.getrandbits(len(pairs)) if pairs else 0
        if mask.bit_count() > m_max:
            continue
        G = _graph_from_mask(n, pairs, mask)
        if G.is_connected():
            out.append(G)
    return out
