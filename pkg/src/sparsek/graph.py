"""Immutable directed multigraphs and the elementary operations on them.

A graph stores a dense ``n x n`` multiplicity matrix, which gives O(1) pair
queries. Adjacency lists are derived from it lazily. Vertices are the
integers ``0..n-1``. An induced subgraph keeps a ``labels`` tuple that maps
its local ids back to the parent's ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

Path = tuple[int, ...]


class DirectedMultigraph:
    """Loop-free directed multigraph on vertices ``0..n-1``.

    ``edges`` may contain ``(u, v)`` or ``(u, v, multiplicity)`` items.
    Repeated items accumulate.
    """

    __slots__ = ("_n", "_mult", "_adj", "_m", "_simple", "labels", "_out", "_in", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (), *, labels: Sequence[int] | None = None):
        n = int(n)
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        mult = np.zeros((n, n), dtype=np.int32)
        items = list(edges)
        if items:
            arr = np.array([tuple(e) + ((1,) if len(e) == 2 else ()) for e in items], dtype=np.int64)
            if arr.ndim != 2 or arr.shape[1] != 3:
                raise InputError("edges must be (u, v) or (u, v, multiplicity) items")
            u, v, c = arr[:, 0], arr[:, 1], arr[:, 2]
            if (u < 0).any() or (v < 0).any() or (u >= n).any() or (v >= n).any():
                raise InputError(f"edge endpoint out of range for n={n}")
            if (u == v).any():
                i = int(np.flatnonzero(u == v)[0])
                raise InputError(f"loop at vertex {int(u[i])} is not allowed")
            if (c < 1).any():
                raise InputError("edge multiplicity must be at least 1")
            np.add.at(mult, (u, v), c.astype(np.int32))
        self._init_from(mult, labels)

    @classmethod
    def from_matrix(cls, mult: np.ndarray, *, labels: Sequence[int] | None = None) -> "DirectedMultigraph":
        mult = np.array(mult, dtype=np.int32, copy=True)
        if mult.ndim != 2 or mult.shape[0] != mult.shape[1]:
            raise InputError("multiplicity matrix must be square")
        if (mult < 0).any():
            raise InputError("negative multiplicity")
        if np.diagonal(mult).any():
            raise InputError("loops are not allowed")
        obj = cls.__new__(cls)
        obj._init_from(mult, labels)
        return obj

    def _init_from(self, mult: np.ndarray, labels) -> None:
        mult.flags.writeable = False
        adj = mult > 0
        adj.flags.writeable = False
        self._n = mult.shape[0]
        self._mult = mult
        self._adj = adj
        self._m = int(mult.sum(dtype=np.int64))
        self._simple = bool(mult.max(initial=0) <= 1)
        self.labels = tuple(int(x) for x in labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != self._n:
            raise InputError("labels must have one entry per vertex")
        self._out = None
        self._in = None
        self._hash = None

    # -- basic accessors -------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        """Edge count, with multiplicity."""
        return self._m

    @property
    def simple(self) -> bool:
        return self._simple

    @property
    def mult(self) -> np.ndarray:
        """Read-only multiplicity matrix."""
        return self._mult

    @property
    def adj(self) -> np.ndarray:
        """Read-only boolean pair-presence matrix."""
        return self._adj

    @property
    def num_pairs(self) -> int:
        return int(self._adj.sum())

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u, v])

    def multiplicity(self, u: int, v: int) -> int:
        return int(self._mult[u, v])

    def _lists(self):
        if self._out is None:
            self._out = tuple(tuple(int(x) for x in np.flatnonzero(row)) for row in self._adj)
            self._in = tuple(tuple(int(x) for x in np.flatnonzero(col)) for col in self._adj.T)
        return self._out, self._in

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._lists()[0][v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self._lists()[1][v]

    def out_degree(self, v: int) -> int:
        return int(self._mult[v].sum())

    def in_degree(self, v: int) -> int:
        return int(self._mult[:, v].sum())

    def out_degrees(self) -> np.ndarray:
        return self._mult.sum(axis=1, dtype=np.int64)

    def in_degrees(self) -> np.ndarray:
        return self._mult.sum(axis=0, dtype=np.int64)

    def out_neighbor_counts(self) -> np.ndarray:
        return self._adj.sum(axis=1, dtype=np.int64)

    def in_neighbor_counts(self) -> np.ndarray:
        return self._adj.sum(axis=0, dtype=np.int64)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(tails, heads, multiplicities)`` in lexicographic pair order."""
        tails, heads = np.nonzero(self._mult)
        return tails.astype(np.int64), heads.astype(np.int64), self._mult[tails, heads].astype(np.int64)

    def edges(self) -> list[tuple[int, int, int]]:
        t, h, c = self.edge_arrays()
        return list(zip(t.tolist(), h.tolist(), c.tolist()))

    def edge_copies(self) -> list[tuple[int, int]]:
        """Every edge listed once per unit of multiplicity."""
        return [(u, v) for u, v, c in self.edges() for _ in range(c)]

    # -- derived graphs --------------------------------------------------
    def reverse(self) -> "DirectedMultigraph":
        return DirectedMultigraph.from_matrix(self._mult.T, labels=self.labels)

    def with_matrix(self, mult: np.ndarray) -> "DirectedMultigraph":
        """Graph on the same vertices and labels with a different multiplicity matrix."""
        return DirectedMultigraph.from_matrix(mult, labels=self.labels)

    def spanning(self, edges: Iterable[Sequence[int]]) -> "DirectedMultigraph":
        """Spanning subgraph with the given edges, which must all be present in ``self``."""
        sub = DirectedMultigraph(self._n, edges)
        if (sub._mult > self._mult).any():
            u, v = (int(x[0]) for x in np.nonzero(sub._mult > self._mult))
            raise InputError(f"edge ({u}, {v}) exceeds the host multiplicity")
        return sub

    # -- dunder ----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, DirectedMultigraph):
            return NotImplemented
        return self._n == other._n and np.array_equal(self._mult, other._mult)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._mult.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        kind = "digraph" if self._simple else "multigraph"
        return f"DirectedMultigraph({kind}, n={self._n}, m={self._m})"


@dataclass(frozen=True)
class BipartiteRepresentation:
    """Undirected bipartite graph with edge ``{x', y''}`` per digraph edge ``(x, y)``.

    Left copies are ``0..n-1``, right copies are ``n..2n-1``. Parallel digraph
    edges give parallel entries.
    """

    n: int
    edges: tuple[tuple[int, int], ...]


def complement_max_degree(D: DirectedMultigraph) -> int:
    """Maximum number of non-neighbours of a vertex."""
    if D.n == 0:
        return 0
    und = D.adj | D.adj.T
    return int((D.n - 1 - und.sum(axis=1)).max())


def restrict(D: DirectedMultigraph, U: Iterable[int]) -> DirectedMultigraph:
    """Induced subgraph ``D[U]``; vertex ``i`` of the result is ``sorted(U)[i]`` in ``D``."""
    idx = sorted({int(u) for u in U})
    for u in idx:
        if u < 0 or u >= D.n:
            raise InputError(f"unknown vertex {u}")
    sub = D.mult[np.ix_(idx, idx)]
    parent = D.labels
    labels = [parent[u] for u in idx] if parent is not None else idx
    return DirectedMultigraph.from_matrix(sub, labels=labels)


def reduce_to_simple(D: DirectedMultigraph) -> DirectedMultigraph:
    if D.simple:
        return D
    return D.with_matrix(D.adj.astype(np.int32))


def orientation_matrix(D: DirectedMultigraph) -> np.ndarray:
    """Pair matrix of the oriented graph: for each 2-cycle keep the lexicographically smaller pair."""
    adj = D.adj
    lower = np.tril(np.ones(adj.shape, dtype=bool), -1)  # u > v
    return adj & ~(adj.T & lower)


def orientation_reduce(D: DirectedMultigraph) -> DirectedMultigraph:
    return D.with_matrix(orientation_matrix(D).astype(np.int32))


def is_path(D: DirectedMultigraph, P: Sequence[int]) -> bool:
    if len(P) == 0 or len(set(P)) != len(P):
        return False
    if any(v < 0 or v >= D.n for v in P):
        return False
    return all(D.has_edge(P[i], P[i + 1]) for i in range(len(P) - 1))


def is_minimal_path(D: DirectedMultigraph, P: Sequence[int]) -> bool:
    """True when no edge of ``D`` jumps forward over a vertex of ``P``."""
    return not any(D.has_edge(P[i], P[j]) for i in range(len(P)) for j in range(i + 2, len(P)))


def minimalize_path(D: DirectedMultigraph, P: Sequence[int]) -> Path:
    """Shortcut ``P`` along chords of ``D`` until no chord is left.

    Scans from the left; at each vertex it jumps to the farthest later vertex
    it has an edge to.
    """
    if not is_path(D, P):
        raise InputError("not a path in the host graph")
    path = list(P)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(path) - 2:
            row = D.adj[path[i]]
            far = next((j for j in range(len(path) - 1, i + 1, -1) if row[path[j]]), None)
            if far is not None:
                del path[i + 1:far]
                changed = True
            i += 1
    return tuple(path)


def bipartite_representation(D: DirectedMultigraph) -> BipartiteRepresentation:
    return BipartiteRepresentation(D.n, tuple((u, D.n + v) for u, v in D.edge_copies()))


def has_anti_directed_trail(D: DirectedMultigraph) -> bool:
    """True iff the bipartite representation contains a cycle."""
    n = D.n
    parent = list(range(2 * n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, c in D.edges():
        if c >= 2:
            return True
        a, b = find(u), find(n + v)
        if a == b:
            return True
        parent[a] = b
    return False


def _top_vertices(counts: np.ndarray, k: int, n: int) -> list[int]:
    if n < k:
        raise InputError(f"need at least k={k} vertices, graph has {n}")
    order = sorted(range(n), key=lambda v: (-int(counts[v]), v))
    return order[:k]


def top_in_degree_vertices(D: DirectedMultigraph, k: int) -> list[int]:
    """``k`` vertices with the most distinct in-neighbours, ties by smallest id.

    Each has at least ``(n - k - complement_max_degree(D)) / 2`` in-neighbours.
    """
    return _top_vertices(D.in_neighbor_counts(), k, D.n)


def top_out_degree_vertices(D: DirectedMultigraph, k: int) -> list[int]:
    return _top_vertices(D.out_neighbor_counts(), k, D.n)
