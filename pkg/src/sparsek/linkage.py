"""Sparse linkage structures built from forward-ordered spanning subgraphs.

A ``(sigma, k, t)``-good subgraph has every edge pointing forward in the
ordering ``sigma``. Every vertex outside the last ``t`` slots has at least
``k`` out-edges, and every vertex outside the first ``t`` slots has at
least ``k`` in-edges.

Construction has two steps.

1. A *local median order*: no single vertex can be moved to another slot
   to increase the number of forward pairs. Local optimality gives
   every vertex at least as many out-neighbours as in-neighbours in each
   interval that starts at it, and symmetrically for intervals ending at
   it. Hence a vertex followed by at least ``2k + dbar - 1`` others has
   ``k`` forward out-neighbours, where ``dbar`` bounds the complement
   degree. The mirrored statement holds for in-neighbours.
2. The cheapest forward edge set meeting those demands, as a minimum flow
   with lower bounds. Each chosen edge serves its tail's out-demand and its
   head's in-demand at once.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .connectivity import INF, PathSystem, min_flow_arrays
from .errors import ConstructionError, InputError, InvariantError
from .graph import DirectedMultigraph, complement_max_degree, is_minimal_path, reduce_to_simple, restrict
from .reach import EdgeBag, removal_sets


@dataclass(frozen=True)
class GoodLinkage:
    sigma: tuple[int, ...]
    forward: DirectedMultigraph
    k: int
    t: int
    achieved_edges: int
    target: int
    gate: int

    @property
    def gate_met(self) -> bool:
        return self.achieved_edges <= self.gate

    @property
    def head(self) -> tuple[int, ...]:
        """``sigma(1, t)``."""
        return self.sigma[:self.t]

    @property
    def tail(self) -> tuple[int, ...]:
        """``sigma(n - t + 1, n)``."""
        return self.sigma[max(0, len(self.sigma) - self.t):]


def is_good(L: GoodLinkage) -> bool:
    """Checks the three goodness conditions literally."""
    sigma, F, k, t = L.sigma, L.forward, L.k, L.t
    n = len(sigma)
    if sorted(sigma) != list(range(F.n)):
        return False
    pos = np.empty(n, dtype=np.int64)
    pos[list(sigma)] = np.arange(n)
    tails, heads, _ = F.edge_arrays()
    if (pos[tails] >= pos[heads]).any():
        return False
    outd, ind = F.out_degrees(), F.in_degrees()
    for j, v in enumerate(sigma):
        if j < n - t and outd[v] < k:
            return False
        if j >= t and ind[v] < k:
            return False
    return True


def local_median_order(D: DirectedMultigraph) -> list[int]:
    """An ordering that no single-vertex move improves.

    Starts from out-degree descending, ties by id, and applies the best move
    of each vertex in turn until a full pass changes nothing.
    """
    n = D.n
    adj = D.adj
    S = adj.astype(np.int8) - adj.T.astype(np.int8)
    outc = D.out_neighbor_counts()
    order = np.array(sorted(range(n), key=lambda v: (-int(outc[v]), v)), dtype=np.int64)
    improved = True
    while improved:
        improved = False
        for v in [int(x) for x in order]:
            p = int(np.flatnonzero(order == v)[0])
            d = S[v, order].astype(np.int64)
            P = np.concatenate([[0], np.cumsum(d)])
            left = P[p] - P[:p]            # insert before slot q < p
            right = P[p + 1] - P[p + 2:]    # insert after slot q > p
            best, where = 0, None
            if left.size:
                q = int(np.argmax(left))
                if left[q] > best:
                    best, where = int(left[q]), q
            if right.size:
                q = int(np.argmax(right))
                if right[q] > best:
                    best, where = int(right[q]), p + 1 + q
            if where is not None:
                order = np.delete(order, p)
                order = np.insert(order, where, v)  # same index either way after the delete
                improved = True
    return [int(x) for x in order]


def _forward_selection(adj: np.ndarray, order: Sequence[int], k: int, t: int, window: int):
    """Minimum forward edge set meeting the demands, using pairs at distance <= window."""
    n = len(order)
    order = np.asarray(order, dtype=np.int64)
    A = adj[np.ix_(order, order)]
    out_dem = np.arange(n) < n - t
    in_dem = np.arange(n) >= t
    i, j = np.nonzero(np.triu(A, 1))
    keep = (j - i <= window) & (out_dem[i] | in_dem[j])
    i, j = i[keep], j[keep]
    s, tt = 2 * n, 2 * n + 1
    vs = np.arange(n)
    tails = np.concatenate([np.full(n, s), n + vs, i])
    heads = np.concatenate([vs, np.full(n, tt), n + j])
    caps = np.concatenate([np.full(2 * n, INF), np.ones(len(i), dtype=np.int64)])
    lowers = np.concatenate([np.where(out_dem, k, 0), np.where(in_dem, k, 0), np.zeros(len(i), dtype=np.int64)])
    value, flows = min_flow_arrays(2 * n + 2, tails, heads, caps, lowers, s, tt)
    used = flows[2 * n:] > 0
    return value, order[i[used]], order[j[used]]


def _feasible_window(adj: np.ndarray, order: Sequence[int], k: int, t: int) -> int | None:
    """Smallest window for which every demand can be met, or None if none can."""
    n = len(order)
    if k == 0 or n <= t:
        return 0
    o = np.asarray(order, dtype=np.int64)
    A = np.triu(adj[np.ix_(o, o)], 1)
    need = 0
    for p in range(n):
        if p < n - t:
            nb = np.flatnonzero(A[p])
            if len(nb) < k:
                return None
            need = max(need, int(nb[k - 1]) - p)
        if p >= t:
            nb = np.flatnonzero(A[:, p])[::-1]
            if len(nb) < k:
                return None
            need = max(need, p - int(nb[k - 1]))
    return need


def build_good(D: DirectedMultigraph, k: int, *, t: int | None = None, delta_bar: int | None = None,
               strict: bool = False) -> GoodLinkage:
    """A ``(sigma, k, t)``-good spanning subgraph of ``D``.

    ``t`` defaults to ``2k + dbar - 1`` where ``dbar`` is ``delta_bar`` or
    the complement degree of ``D``. ``k = 0`` is accepted and yields an empty
    subgraph. The target ``kn - k + k*dbar`` and the gate
    ``kn + 2k(k + dbar)`` are recorded. ``strict`` turns a missed gate into
    an error.
    """
    if D.n == 0:
        raise InputError("graph must be nonempty")
    if k < 0:
        raise InputError("k must be non-negative")
    D = reduce_to_simple(D)
    n = D.n
    dbar = complement_max_degree(D) if delta_bar is None else int(delta_bar)
    if t is None:
        t = max(2 * k + dbar - 1, 0)
    target = k * n - k + k * dbar
    gate = k * n + 2 * k * (k + dbar)
    if k == 0 or n <= t:
        empty = DirectedMultigraph(n, [])
        return GoodLinkage(tuple(range(n)), empty, k, t, 0, target, gate)
    order = local_median_order(D)
    base = _feasible_window(D.adj, order, k, t)
    if base is None:
        raise ConstructionError(f"ordering leaves a demand of {k} unmet with t={t}", partial=tuple(order))
    window = max(base, 2 * t + 2)
    best = None
    while True:
        value, tails, heads = _forward_selection(D.adj, order, k, t, window)
        if best is None or value < best[0]:
            best = (value, tails, heads)
        if value <= target or window >= n:
            break
        window = min(n, 2 * window)
    value, tails, heads = best
    forward = DirectedMultigraph(n, list(zip(tails.tolist(), heads.tolist())))
    L = GoodLinkage(tuple(order), forward, k, t, forward.m, target, gate)
    if not is_good(L):
        raise InvariantError("forward selection violates goodness")
    if strict and not L.gate_met:
        raise ConstructionError(f"{L.achieved_edges} edges exceed the gate {gate}", partial=L)
    return L


def link_query(L: GoodLinkage, u: int, removed: Iterable = (), *, mode: str = "vertex"):
    """Vertices ``v`` in the head and ``w`` in the tail of ``sigma`` with paths ``v -> u -> w``.

    ``removed`` holds vertices (``mode="vertex"``) or edges (``mode="edge"``).
    The paths avoid it.
    """
    removed = list(removed)
    if len(removed) > L.k - 1 and removed:
        raise InputError(f"at most k-1={L.k - 1} removals allowed")
    if L.t < L.k:
        raise InputError("t must be at least k")
    bag = EdgeBag(L.forward.edge_copies())
    rv = frozenset(removed) if mode == "vertex" else frozenset()
    re = Counter(tuple(e) for e in removed) if mode == "edge" else None
    if u in rv:
        raise InputError("queried vertex was removed")
    head, tail = set(L.head), set(L.tail)
    fwd = bag.path(u, tail, removed_vertices=rv, removed_edges=re)
    rbag = EdgeBag([(b, a) for a, b in L.forward.edge_copies()])
    rre = Counter({(b, a): c for (a, b), c in re.items()}) if re else None
    back = rbag.path(u, head, removed_vertices=rv, removed_edges=rre)
    if fwd is None or back is None:
        raise InvariantError(f"no link through {u} avoiding {removed}")
    return back[-1], fwd[-1], tuple(reversed(back)), fwd


# ---------------------------------------------------------------------------
# blocks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinkageBlock:
    """A core edge set on ``U`` with entry set ``U_i`` and exit set ``U_o``.

    Blocks built along a path system also carry ``paths``. Their exits then
    include the path ends and their entries include the path starts.
    """

    core: tuple[tuple[int, int], ...]
    U: tuple[int, ...]
    U_i: tuple[int, ...]
    U_o: tuple[int, ...]
    mode: str
    k: int
    t: int
    target: int
    linkage: GoodLinkage | None = None
    paths: PathSystem | None = None

    @property
    def exits(self) -> set[int]:
        extra = {p[-1] for p in self.paths.paths} if self.paths else set()
        return set(self.U_o) | extra

    @property
    def entries(self) -> set[int]:
        extra = {p[0] for p in self.paths.paths} if self.paths else set()
        return set(self.U_i) | extra

    def edge_list(self) -> list[tuple[int, int]]:
        """Edges the contract may use: the core, plus path edges when present."""
        return list(self.core) + (self.paths.edges() if self.paths else [])


def _check_mode(mode: str) -> None:
    if mode not in ("vertex", "arc"):
        raise InputError("mode must be 'vertex' or 'arc'")


def _lift(L: GoodLinkage, labels: Sequence[int]):
    sig = [labels[v] for v in L.sigma]
    core = tuple(sorted((labels[u], labels[v]) for u, v, _ in L.forward.edges()))
    return sig, core


def linkage_block(D: DirectedMultigraph, U: Iterable[int], k: int, mode: str = "vertex") -> LinkageBlock:
    """Sparse core on ``D[U]`` that links every vertex of ``U`` to ``U_o`` and from ``U_i``."""
    _check_mode(mode)
    U = sorted(set(int(u) for u in U))
    if not U:
        raise InputError("U must be nonempty")
    H = reduce_to_simple(restrict(D, U))
    dbar = complement_max_degree(H)
    t = 2 * k + dbar - 1
    L = build_good(H, k, t=t, delta_bar=dbar)
    sig, core = _lift(L, U)
    return LinkageBlock(core, tuple(U), tuple(sig[:t]), tuple(sig[max(0, len(sig) - t):]), mode, k, t,
                        k * len(U) - k + k * dbar, L)


def linkage_on_paths(D: DirectedMultigraph, paths: PathSystem, U: Iterable[int], k: int,
                     mode: str = "vertex") -> LinkageBlock:
    """Core on path interiors ``U`` avoiding path edges, with goodness ``k - 1``.

    A vertex that gets stuck in the core escapes along its own path to the
    path's end; symmetrically it is entered from the path's start.
    """
    _check_mode(mode)
    U = sorted(set(int(u) for u in U))
    if not U:
        raise InputError("U must be nonempty")
    interior = {x for p in paths.paths for x in p[1:-1]}
    if not set(U) <= interior:
        raise InputError("U must consist of interior path vertices")
    if mode == "vertex":
        seen: set[int] = set()
        for p in paths.paths:
            if seen & set(p):
                raise InputError("paths must be vertex-disjoint")
            seen |= set(p)
            if not is_minimal_path(D, p):
                raise InputError(f"path {p} is not minimal in the host graph")
    base = reduce_to_simple(restrict(D, U))
    dbar = complement_max_degree(base)
    local = {v: i for i, v in enumerate(U)}
    mat = base.adj.copy()
    for u, v in paths.edges():
        if u in local and v in local:
            mat[local[u], local[v]] = False
            if mode == "arc":
                mat[local[v], local[u]] = False
    H = base.with_matrix(mat.astype(np.int32))
    if mode == "vertex":
        t = 2 * k + dbar - 1
        target = (k - 1) * len(U) + (k - 1) * (dbar + 1)
    else:
        t = 4 * k + dbar - 3
        target = (k - 1) * len(U) + (k - 1) * (dbar + 2 * k - 1)
    L = build_good(H, k - 1, t=t)
    sig, core = _lift(L, U)
    return LinkageBlock(core, tuple(U), tuple(sig[:t]), tuple(sig[max(0, len(sig) - t):]), mode, k, t,
                        target, L, paths)


def check_block(B: LinkageBlock, *, seed: int = 0, exhaustive: bool | None = None,
                budget: int | None = None) -> tuple[bool, tuple | None]:
    """Evaluates the block's reachability contract by search over its own edges.

    Returns ``(ok, witness)`` where ``witness = (u, removed, direction)``.
    """
    bag = EdgeBag(B.edge_list())
    U = set(B.U)
    kw = {} if budget is None else {"budget": budget}
    if B.mode == "vertex":
        universe = sorted(U | set(bag.vertices))
        sets = removal_sets(universe, B.k - 1, anchors=sorted(set(B.U_i) | set(B.U_o)), seed=seed,
                            exhaustive=exhaustive, **kw)
    else:
        universe = bag.copies()
        anchors = [e for e in universe if e[0] in B.U_i or e[1] in B.U_o]
        sets = removal_sets(universe, B.k - 1, anchors=anchors, seed=seed, exhaustive=exhaustive, **kw)
    for S in sets:
        rv = frozenset(S) if B.mode == "vertex" else frozenset()
        re = Counter(S) if B.mode == "arc" else None
        to_exit = bag.reach(B.exits - rv, removed_vertices=rv, removed_edges=re, reverse=True)
        from_entry = bag.reach(B.entries - rv, removed_vertices=rv, removed_edges=re)
        for u in sorted(U - rv):
            if u not in to_exit:
                return False, (u, S, "out")
            if u not in from_entry:
                return False, (u, S, "in")
    return True, None


__all__ = ["GoodLinkage", "LinkageBlock", "is_good", "build_good", "link_query", "linkage_block",
           "linkage_on_paths", "check_block", "local_median_order"]
