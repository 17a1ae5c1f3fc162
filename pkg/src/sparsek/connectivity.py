"""Menger-type computations on top of the flow kernel.

The module covers strong vertex and arc connectivity verification with witness
cuts, k-fans, linked disjoint path systems, and the minimum spanning subgraph
with all in- and out-degrees at least k. That minimum is computed as a
minimum flow with lower bounds.

Vertex connectivity uses the usual split network: vertex ``v`` becomes
``v_in = 2v`` and ``v_out = 2v + 1``, joined by a unit arc. Edge arcs get
unbounded capacity, so every finite minimum cut is a vertex separator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InfeasibleError, InputError
from .graph import DirectedMultigraph, Path, reduce_to_simple
from .kernel import FlowGraph

INF = 1 << 40


# ---------------------------------------------------------------------------
# generic networks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    capacity: int | None = None  # None means unbounded
    lower: int = 0


@dataclass(frozen=True)
class FlowNetwork:
    n_nodes: int
    arcs: tuple[Arc, ...]
    source: int
    sink: int

    def __post_init__(self):
        for a in self.arcs:
            if not (0 <= a.tail < self.n_nodes and 0 <= a.head < self.n_nodes):
                raise InputError(f"arc {a} has an endpoint outside the network")
            if a.lower < 0 or (a.capacity is not None and a.capacity < a.lower):
                raise InputError(f"arc {a} violates 0 <= lower <= capacity")
        if self.source == self.sink:
            raise InputError("source and sink coincide")


@dataclass(frozen=True)
class FlowResult:
    value: int
    flows: tuple[int, ...]


def _cap(c: int | None) -> int:
    return INF if c is None else int(c)


def max_flow(net: FlowNetwork) -> FlowResult:
    """Maximum integral source-sink flow; lower bounds must be zero."""
    if any(a.lower for a in net.arcs):
        raise InputError("max_flow requires zero lower bounds; use min_flow")
    fg = FlowGraph(net.n_nodes, [a.tail for a in net.arcs], [a.head for a in net.arcs],
                   [_cap(a.capacity) for a in net.arcs])
    value = fg.max_flow(net.source, net.sink)
    return FlowResult(int(value), tuple(int(x) for x in fg.flows()))


def min_flow(net: FlowNetwork) -> FlowResult:
    """Minimum feasible source-sink flow respecting lower bounds."""
    value, flows = min_flow_arrays(
        net.n_nodes, [a.tail for a in net.arcs], [a.head for a in net.arcs],
        [_cap(a.capacity) for a in net.arcs], [a.lower for a in net.arcs], net.source, net.sink)
    return FlowResult(value, tuple(int(x) for x in flows))


def min_flow_arrays(n: int, tails, heads, caps, lowers, s: int, t: int) -> tuple[int, np.ndarray]:
    """Array form of :func:`min_flow`; returns ``(value, per-arc flows)``.

    Phase one finds a feasible flow through an auxiliary super source and
    sink, with an unbounded sink-to-source return arc. Phase two cancels as
    much of it as possible with a max-flow from sink back to source in the
    residual network.
    """
    tails = np.asarray(tails, dtype=np.int64)
    heads = np.asarray(heads, dtype=np.int64)
    caps = np.asarray(caps, dtype=np.int64)
    lowers = np.asarray(lowers, dtype=np.int64)
    m = len(tails)
    excess = np.bincount(heads, weights=lowers, minlength=n).astype(np.int64) - \
        np.bincount(tails, weights=lowers, minlength=n).astype(np.int64)
    ss, tt = n, n + 1
    pos = np.flatnonzero(excess > 0)
    neg = np.flatnonzero(excess < 0)
    ft = np.concatenate([tails, [t], np.full(len(pos), ss), neg])
    fh = np.concatenate([heads, [s], pos, np.full(len(neg), tt)])
    fc = np.concatenate([caps - lowers, [INF], excess[pos], -excess[neg]])
    fg = FlowGraph(n + 2, ft, fh, fc)
    demand = int(excess[pos].sum())
    if fg.max_flow(ss, tt) < demand:
        side = fg.source_side()
        raise InfeasibleError("lower bounds cannot be met",
                              witness=tuple(int(v) for v in np.flatnonzero(side[:n])))
    phase1 = np.asarray(fg.flows(), dtype=np.int64)
    f = phase1[:m] + lowers
    value = int(phase1[m])

    # reduce: residual forward arcs (cap - f) and backward arcs (f - lower)
    rt = np.empty(2 * m, dtype=np.int64)
    rh = np.empty(2 * m, dtype=np.int64)
    rc = np.empty(2 * m, dtype=np.int64)
    rt[0::2], rh[0::2], rc[0::2] = tails, heads, caps - f
    rt[1::2], rh[1::2], rc[1::2] = heads, tails, f - lowers
    red = FlowGraph(n, rt, rh, rc)
    back = int(red.max_flow(t, s, value))
    rf = np.asarray(red.flows(), dtype=np.int64)
    f = f + rf[0::2] - rf[1::2]
    return value - back, f


# ---------------------------------------------------------------------------
# connectivity oracles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConnectivityResult:
    """Verdict of a connectivity check. Truthiness is the verdict.

    On failure ``pair`` is an ordered pair ``(x, y)`` such that ``y`` is not
    reachable from ``x`` once the witness is removed. The witness is
    ``separator`` (vertex mode) or ``cut_edges`` (arc mode). Both witnesses
    are ``None`` when the graph has too few vertices.
    """

    ok: bool
    separator: tuple[int, ...] | None = None
    cut_edges: tuple[tuple[int, int], ...] | None = None
    pair: tuple[int, int] | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


class VertexFlowOracle:
    """Reusable split network of a digraph with removable edges."""

    def __init__(self, D: DirectedMultigraph):
        D = reduce_to_simple(D)
        self.D = D
        n = D.n
        self.n = n
        tails, heads, _ = D.edge_arrays()
        self._edge_id = np.full((n, n), -1, dtype=np.int64)
        self._edge_id[tails, heads] = n + np.arange(len(tails))
        at = np.concatenate([2 * np.arange(n), 2 * tails + 1])
        ah = np.concatenate([2 * np.arange(n) + 1, 2 * heads])
        ac = np.concatenate([np.ones(n, dtype=np.int64), np.full(len(tails), INF, dtype=np.int64)])
        self.fg = FlowGraph(2 * n, at, ah, ac)
        self.present = D.adj.copy()

    def set_edge(self, u: int, v: int, present: bool) -> None:
        e = int(self._edge_id[u, v])
        if e < 0:
            raise InputError(f"({u}, {v}) is not an edge of the host graph")
        self.fg.set_capacity(e, INF if present else 0)
        self.present[u, v] = present

    def local(self, x: int, y: int, limit: int = -1) -> int:
        """Number of internally vertex-disjoint x-y paths (capped at ``limit``)."""
        return int(self.fg.max_flow(2 * x + 1, 2 * y, limit))

    def last_separator(self) -> tuple[int, ...]:
        side = self.fg.source_side()
        return tuple(int(v) for v in range(self.n) if side[2 * v] and not side[2 * v + 1])

    def check(self, k: int) -> ConnectivityResult:
        n = self.n
        if n < k + 1:
            return ConnectivityResult(False, reason=f"n={n} < k+1={k + 1}")
        present = self.present
        for w in range(k):
            for v in range(n):
                if v == w:
                    continue
                for x, y in ((w, v), (v, w)):
                    if present[x, y]:
                        continue
                    if self.local(x, y, k) < k:
                        sep = self.last_separator()
                        return ConnectivityResult(False, separator=sep, pair=(x, y),
                                                  reason=f"{len(sep)} vertices separate {x} from {y}")
        return ConnectivityResult(True)


class ArcFlowOracle:
    """Reusable arc network of a multigraph with adjustable multiplicities."""

    def __init__(self, D: DirectedMultigraph):
        self.D = D
        n = D.n
        self.n = n
        tails, heads, mult = D.edge_arrays()
        self._edge_id = np.full((n, n), -1, dtype=np.int64)
        self._edge_id[tails, heads] = np.arange(len(tails))
        self.fg = FlowGraph(n, tails, heads, mult)
        self.mult = D.mult.astype(np.int64)

    def set_multiplicity(self, u: int, v: int, c: int) -> None:
        e = int(self._edge_id[u, v])
        if e < 0:
            raise InputError(f"({u}, {v}) is not an edge of the host graph")
        self.fg.set_capacity(e, c)
        self.mult[u, v] = c

    def local(self, x: int, y: int, limit: int = -1) -> int:
        """Number of edge-disjoint x-y paths (capped at ``limit``)."""
        return int(self.fg.max_flow(x, y, limit))

    def last_cut(self) -> tuple[tuple[int, int], ...]:
        side = self.fg.source_side()
        src = np.flatnonzero(side)
        dst = np.flatnonzero(~side)
        sub = self.mult[np.ix_(src, dst)]
        cut = []
        for i, j in zip(*np.nonzero(sub)):
            cut.extend([(int(src[i]), int(dst[j]))] * int(sub[i, j]))
        return tuple(cut)

    def check(self, k: int) -> ConnectivityResult:
        n = self.n
        if n <= 1:
            return ConnectivityResult(True)
        r = 0
        for v in range(1, n):
            for x, y in ((r, v), (v, r)):
                if self.local(x, y, k) < k:
                    cut = self.last_cut()
                    return ConnectivityResult(False, cut_edges=cut, pair=(x, y),
                                              reason=f"{len(cut)} edges separate {x} from {y}")
        return ConnectivityResult(True)


def is_k_connected(D: DirectedMultigraph, k: int) -> ConnectivityResult:
    """Strong k-connectivity via O(kn) bounded split-network flows."""
    if k < 1:
        raise InputError("k must be at least 1")
    return VertexFlowOracle(D).check(k)


def is_k_arc_connected(D: DirectedMultigraph, k: int) -> ConnectivityResult:
    """Strong k-arc-connectivity via 2(n-1) flows against root 0."""
    if k < 1:
        raise InputError("k must be at least 1")
    return ArcFlowOracle(D).check(k)


# ---------------------------------------------------------------------------
# path systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathSystem:
    """Paths with a disjointness mode.

    ``pairing[i] = j`` means path ``i`` runs from source ``i`` to target ``j``.
    It is empty for fans.
    """

    paths: tuple[Path, ...]
    mode: str
    pairing: tuple[int, ...] = field(default=())

    def edges(self) -> list[tuple[int, int]]:
        return [(p[i], p[i + 1]) for p in self.paths for i in range(len(p) - 1)]


_SRC = -2
_SNK = -1  # smallest id, so walks stop at a terminal as soon as they may


def _cancel_cycles(flow: dict[int, dict[int, int]]) -> None:
    """Remove every directed cycle from a flow given as nested dicts."""
    while True:
        color: dict[int, int] = {}
        cycle = None
        for root in sorted(flow):
            if root in color:
                continue
            stack = [(root, iter(sorted(w for w, c in flow[root].items() if c > 0)))]
            color[root] = 1
            trail = [root]
            while stack and cycle is None:
                v, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    color[v] = 2
                    stack.pop()
                    trail.pop()
                    continue
                c = color.get(nxt, 0)
                if c == 1:
                    cycle = trail[trail.index(nxt):] + [nxt]
                elif c == 0:
                    color[nxt] = 1
                    trail.append(nxt)
                    stack.append((nxt, iter(sorted(w for w, cc in flow.get(nxt, {}).items() if cc > 0))))
            if cycle is not None:
                break
        if cycle is None:
            return
        amount = min(flow[cycle[i]][cycle[i + 1]] for i in range(len(cycle) - 1))
        for i in range(len(cycle) - 1):
            flow[cycle[i]][cycle[i + 1]] -= amount


def _walks(flow: dict[int, dict[int, int]], count: int) -> list[list[int]]:
    """Greedy decomposition of an acyclic SRC-SNK flow into ``count`` walks."""
    out = []
    for _ in range(count):
        walk = [_SRC]
        v = _SRC
        while v != _SNK:
            nxt = min(w for w, c in flow[v].items() if c > 0)
            flow[v][nxt] -= 1
            walk.append(nxt)
            v = nxt
        out.append(walk[1:-1])
    return out


def _flow_dict(edge_flows: Iterable[tuple[int, int, int]]) -> dict[int, dict[int, int]]:
    flow: dict[int, dict[int, int]] = {}
    for u, v, c in edge_flows:
        if c > 0:
            flow.setdefault(u, {})
            flow[u][v] = flow[u].get(v, 0) + c
    return flow


def _nonzero_flows(tails, heads, flows) -> list[tuple[int, int, int]]:
    idx = np.flatnonzero(np.asarray(flows) > 0)
    return list(zip(np.asarray(tails)[idx].tolist(), np.asarray(heads)[idx].tolist(),
                    np.asarray(flows)[idx].tolist()))


def _vertex_network(D: DirectedMultigraph, sources: Sequence[int], sinks: Sequence[int],
                    terminal_sinks: bool):
    """Split network plus super terminals for vertex-disjoint path problems.

    When ``terminal_sinks`` is set, each sink ``s`` is a dead end: arc
    ``s_in -> T`` and no ``s_in -> s_out`` arc, so a path touches exactly one
    sink. Otherwise a sink consumes its own unit through ``s_out -> T``.
    """
    D = reduce_to_simple(D)
    n = D.n
    S_, T_ = 2 * n, 2 * n + 1
    tails, heads, _ = D.edge_arrays()
    sink_set = set(sinks)
    vt, vh, vc = [], [], []
    for v in range(n):
        vt.append(2 * v); vh.append(2 * v + 1)
        vc.append(0 if (terminal_sinks and v in sink_set) else 1)
    et = (2 * tails + 1).tolist()
    eh = (2 * heads).tolist()
    ec = [INF] * len(et)
    xt, xh, xc = [], [], []
    for a in sources:
        xt.append(S_); xh.append(2 * a); xc.append(1)
    for b in sinks:
        xt.append(2 * b if terminal_sinks else 2 * b + 1); xh.append(T_); xc.append(1)
    fg = FlowGraph(2 * n + 2, vt + et + xt, vh + eh + xh, vc + ec + xc)
    return fg, (tails, heads), S_, T_


def _vertex_paths(D, sources, sinks, k, terminal_sinks, what):
    n = D.n
    fg, (tails, heads), S_, T_ = _vertex_network(D, sources, sinks, terminal_sinks)
    got = fg.max_flow(S_, T_, k)
    if got < k:
        side = fg.source_side()
        sep = [v for v in range(n) if side[2 * v] and not side[2 * v + 1]]
        sep += [b for b in sinks if side[2 * b] and (terminal_sinks or side[2 * b + 1])]
        if not terminal_sinks:
            sep += [a for a in sources if not side[2 * a]]
        raise InfeasibleError(f"only {got} of {k} {what} exist", witness=tuple(sorted(set(sep))))
    flows = fg.flows()
    m = len(tails)
    edge_flows = _nonzero_flows(tails, heads, flows[n:n + m])
    base = n + m
    for j, a in enumerate(sources):
        edge_flows.append((_SRC, a, int(flows[base + j])))
    for j, b in enumerate(sinks):
        edge_flows.append((b, _SNK, int(flows[base + len(sources) + j])))
    flow = _flow_dict(edge_flows)
    _cancel_cycles(flow)
    return _walks(flow, k)


def _arc_paths(D, sources, sinks, k, terminal_sinks, what):
    n = D.n
    S_, T_ = n, n + 1
    mult = D.mult.astype(np.int64)
    if terminal_sinks:
        mult = mult.copy()
        mult[list(sinks), :] = 0
    tails, heads = np.nonzero(mult)
    caps = mult[tails, heads]
    xt = [S_] * len(sources) + list(sinks)
    xh = list(sources) + [T_] * len(sinks)
    xc = ([1] * len(sources) if not terminal_sinks else [k] * len(sources)) + \
         ([INF] * len(sinks) if terminal_sinks else [1] * len(sinks))
    fg = FlowGraph(n + 2, np.concatenate([tails, xt]).astype(np.int64),
                   np.concatenate([heads, xh]).astype(np.int64),
                   np.concatenate([caps, xc]).astype(np.int64))
    got = fg.max_flow(S_, T_, k)
    if got < k:
        side = fg.source_side()
        cut = [(int(u), int(v)) for u, v, c in zip(tails, heads, caps) if side[u] and not side[v] for _ in range(int(c))]
        raise InfeasibleError(f"only {got} of {k} {what} exist", witness=tuple(cut))
    flows = fg.flows()
    m = len(tails)
    edge_flows = _nonzero_flows(tails, heads, flows[:m])
    for j, a in enumerate(sources):
        edge_flows.append((_SRC, a, int(flows[m + j])))
    for j, b in enumerate(sinks):
        edge_flows.append((b, _SNK, int(flows[m + len(sources) + j])))
    flow = _flow_dict(edge_flows)
    _cancel_cycles(flow)
    return _walks(flow, k)


def _check_fan_args(D, v, S, direction, k):
    S = sorted(set(int(s) for s in S))
    if direction not in ("to", "from"):
        raise InputError("direction must be 'to' or 'from'")
    if not 0 <= v < D.n or any(not 0 <= s < D.n for s in S):
        raise InputError("unknown vertex")
    if v in S:
        raise InputError("fan centre must lie outside the target set")
    if k < 1:
        raise InputError("k must be at least 1")
    return S


class FanOracle:
    """Fans from many centres into one fixed set ``S``.

    One flow network is built per direction and reused for every centre;
    the flow starts at the centre itself. In vertex mode the targets are
    dead ends, so each path meets ``S`` only at its end. In arc mode the
    targets' out-arcs are dropped, which has the same effect.
    """

    def __init__(self, D: DirectedMultigraph, S: Iterable[int], mode: str = "vertex"):
        if mode not in ("vertex", "edge"):
            raise InputError("mode must be 'vertex' or 'edge'")
        self.D = D
        self.S = sorted(set(int(s) for s in S))
        if any(not 0 <= s < D.n for s in self.S):
            raise InputError("unknown vertex")
        self.mode = mode
        self._nets: dict[str, tuple] = {}

    def _network(self, direction: str):
        if direction in self._nets:
            return self._nets[direction]
        H = self.D if direction == "to" else self.D.reverse()
        n = H.n
        if self.mode == "vertex":
            H = reduce_to_simple(H)
            tails, heads, _ = H.edge_arrays()
            T_ = 2 * n
            vcap = np.ones(n, dtype=np.int64)
            vcap[self.S] = 0
            fg = FlowGraph(2 * n + 1,
                           np.concatenate([2 * np.arange(n), 2 * tails + 1, 2 * np.asarray(self.S, dtype=np.int64)]),
                           np.concatenate([2 * np.arange(n) + 1, 2 * heads, np.full(len(self.S), T_)]),
                           np.concatenate([vcap, np.full(len(tails), INF), np.ones(len(self.S), dtype=np.int64)]))
            off = n
        else:
            mult = H.mult.astype(np.int64).copy()
            mult[self.S, :] = 0
            tails, heads = np.nonzero(mult)
            T_ = n
            fg = FlowGraph(n + 1, np.concatenate([tails, self.S]).astype(np.int64),
                           np.concatenate([heads, np.full(len(self.S), T_)]).astype(np.int64),
                           np.concatenate([mult[tails, heads], np.full(len(self.S), INF)]).astype(np.int64))
            off = 0
        net = (fg, tails, heads, T_, off)
        self._nets[direction] = net
        return net

    def fan(self, v: int, direction: str, k: int) -> PathSystem:
        v = int(v)
        if direction not in ("to", "from"):
            raise InputError("direction must be 'to' or 'from'")
        if not 0 <= v < self.D.n:
            raise InputError("unknown vertex")
        if v in self.S:
            raise InputError("fan centre must lie outside the target set")
        if k < 1:
            raise InputError("k must be at least 1")
        if not self.S:
            raise InputError("target set must be nonempty")
        if self.mode == "vertex" and len(self.S) < k:
            raise InputError(f"|S|={len(self.S)} is smaller than k={k}")
        fg, tails, heads, T_, off = self._network(direction)
        src = 2 * v + 1 if self.mode == "vertex" else v
        got = fg.max_flow(src, T_, k)
        what = "fan paths" if self.mode == "vertex" else "arc-fan paths"
        if got < k:
            side = fg.source_side()
            if self.mode == "vertex":
                n = self.D.n
                sep = [w for w in range(n) if w != v and side[2 * w] and not side[2 * w + 1]]
                sep += [s for s in self.S if side[2 * s]]
                witness = tuple(sorted(set(sep)))
            else:
                witness = tuple((int(a), int(b)) for a, b in zip(tails, heads) if side[a] and not side[b])
            raise InfeasibleError(f"only {got} of {k} {what} exist", witness=witness)
        flows = fg.flows()
        m = len(tails)
        edge_flows = _nonzero_flows(tails, heads, flows[off:off + m])
        edge_flows.append((_SRC, v, k))
        for j, s in enumerate(self.S):
            f = int(flows[off + m + j])
            if f:
                edge_flows.append((s, _SNK, f))
        flow = _flow_dict(edge_flows)
        _cancel_cycles(flow)
        walks = _walks(flow, k)
        paths = [tuple(w) for w in walks] if direction == "to" else [tuple(reversed(w)) for w in walks]
        return PathSystem(tuple(sorted(paths)), self.mode)


def k_fan(D: DirectedMultigraph, v: int, S: Iterable[int], direction: str, k: int) -> PathSystem:
    """k paths between ``v`` and ``S`` sharing only ``v``, each meeting ``S`` once at its end."""
    S = _check_fan_args(D, v, S, direction, k)
    return FanOracle(D, S, "vertex").fan(v, direction, k)


def k_arc_fan(D: DirectedMultigraph, v: int, S: Iterable[int], direction: str, k: int) -> PathSystem:
    """k edge-disjoint paths between ``v`` and ``S``, each containing one vertex of ``S``."""
    S = _check_fan_args(D, v, S, direction, k)
    return FanOracle(D, S, "edge").fan(v, direction, k)


def disjoint_paths(D: DirectedMultigraph, A: Sequence[int], B: Sequence[int], mode: str = "vertex") -> PathSystem:
    """Disjoint paths from ``A[i]`` to ``B[pairing[i]]`` for every i."""
    A, B = [int(a) for a in A], [int(b) for b in B]
    if mode not in ("vertex", "edge"):
        raise InputError("mode must be 'vertex' or 'edge'")
    if len(A) != len(B) or not A:
        raise InputError("A and B must be nonempty and of equal size")
    if len(set(A)) != len(A) or len(set(B)) != len(B) or set(A) & set(B):
        raise InputError("A and B must be disjoint lists of distinct vertices")
    if any(not 0 <= x < D.n for x in A + B):
        raise InputError("unknown vertex")
    k = len(A)
    if mode == "vertex":
        walks = _vertex_paths(D, A, B, k, False, "vertex-disjoint paths")
    else:
        walks = _arc_paths(D, A, B, k, False, "edge-disjoint paths")
    by_start = {w[0]: tuple(w) for w in walks}
    paths = tuple(by_start[a] for a in A)
    pos = {b: j for j, b in enumerate(B)}
    return PathSystem(paths, mode, tuple(pos[p[-1]] for p in paths))


# ---------------------------------------------------------------------------
# predicates over path systems
# ---------------------------------------------------------------------------

def _paths_in(D: DirectedMultigraph, paths) -> bool:
    return all(len(p) >= 1 and len(set(p)) == len(p) and
               all(D.has_edge(p[i], p[i + 1]) for i in range(len(p) - 1)) for p in paths)


def _edge_disjoint(D: DirectedMultigraph, paths) -> bool:
    used: dict[tuple[int, int], int] = {}
    for p in paths:
        for i in range(len(p) - 1):
            used[(p[i], p[i + 1])] = used.get((p[i], p[i + 1]), 0) + 1
    return all(c <= D.multiplicity(u, v) for (u, v), c in used.items())


def is_fan(D: DirectedMultigraph, v: int, S: Iterable[int], direction: str, k: int, P: PathSystem) -> bool:
    """Checks the fan definition literally, in either mode."""
    S = set(S)
    paths = P.paths
    if len(paths) != k or not _paths_in(D, paths):
        return False
    for p in paths:
        centre, end = (p[0], p[-1]) if direction == "to" else (p[-1], p[0])
        if centre != v or end not in S or sum(x in S for x in p) != 1:
            return False
    if P.mode == "vertex":
        inner = [x for p in paths for x in p if x != v]
        return len(inner) == len(set(inner))
    return _edge_disjoint(D, paths)


def is_linkage(D: DirectedMultigraph, A: Sequence[int], B: Sequence[int], P: PathSystem) -> bool:
    """Checks that ``P`` links ``A`` to ``B`` under its pairing and mode."""
    if len(P.paths) != len(A) or sorted(P.pairing) != list(range(len(B))):
        return False
    if not _paths_in(D, P.paths):
        return False
    for i, p in enumerate(P.paths):
        if p[0] != A[i] or p[-1] != B[P.pairing[i]]:
            return False
    if P.mode == "vertex":
        allv = [x for p in P.paths for x in p]
        return len(allv) == len(set(allv))
    return _edge_disjoint(D, P.paths)


# ---------------------------------------------------------------------------
# degree-constrained minimum spanning subgraph
# ---------------------------------------------------------------------------

def min_degree_spanning_subgraph(D: DirectedMultigraph, k: int, *, multigraph: bool = False
                                 ) -> tuple[DirectedMultigraph, int]:
    """Smallest spanning subgraph with every in- and out-degree at least ``k``.

    Uses the bipartite network ``s -> v1 -> u2 -> t`` with lower bound ``k``
    on the source and sink arcs and a minimum flow. Edge arcs have unit
    capacity. With ``multigraph=True`` their capacity is the multiplicity
    instead, which extends the definition beyond simple digraphs.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    if not D.simple and not multigraph:
        raise InputError("input has parallel edges; pass multigraph=True to count them")
    n = D.n
    outc = D.out_degrees() if multigraph else D.out_neighbor_counts()
    inc = D.in_degrees() if multigraph else D.in_neighbor_counts()
    for v in range(n):
        if outc[v] < k or inc[v] < k:
            raise InfeasibleError(f"vertex {v} has out-degree {int(outc[v])} and in-degree {int(inc[v])} < k={k}",
                                  witness=v)
    s, t = 2 * n, 2 * n + 1
    tails, heads, mult = D.edge_arrays()
    vs = np.arange(n)
    at = np.concatenate([np.full(n, s), n + vs, tails])
    ah = np.concatenate([vs, np.full(n, t), n + heads])
    ac = np.concatenate([np.full(2 * n, INF), mult if multigraph else np.ones(len(tails), dtype=np.int64)])
    al = np.concatenate([np.full(2 * n, k), np.zeros(len(tails), dtype=np.int64)])
    value, flows = min_flow_arrays(2 * n + 2, at, ah, ac, al, s, t)
    ef = flows[2 * n:]
    chosen = [(int(u), int(w), int(c)) for u, w, c in zip(tails, heads, ef) if c > 0]
    return DirectedMultigraph(n, chosen), value
