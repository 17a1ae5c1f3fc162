"""Reachability gadgets: escapers, hubs and absorbers, plus their checker.

Each gadget is an edge multiset with a reachability contract under up to
``k - 1`` vertex removals (``mode="vertex"``) or edge-copy removals
(``mode="arc"``). Contracts are checked by :func:`check_gadget` using
breadth-first search over the gadget's own edges only.

Edge multisets merge by taking the maximum count of each pair. So the merge
contains every part as a sub-multiset, and removing one copy from the merge
removes at most one copy from each part.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .connectivity import FanOracle, PathSystem
from .dominance import Trio, build_trio, domination_census
from .errors import InputError, InvariantError
from .graph import DirectedMultigraph, complement_max_degree, is_minimal_path, restrict
from .linkage import LinkageBlock, linkage_block, linkage_on_paths
from .minimal import minimal_subgraph
from .reach import EXHAUSTIVE_BUDGET, RANDOM_TRIALS, EdgeBag, removal_sets

Edge = tuple[int, int]


def merge_edges(*parts: Iterable[Edge]) -> Counter:
    out: Counter = Counter()
    for part in parts:
        for e, c in Counter((int(u), int(v)) for u, v in part).items():
            if c > out[e]:
                out[e] = c
    return out


def _copies(bag: Counter) -> tuple[Edge, ...]:
    return tuple(e for e in sorted(bag) for _ in range(bag[e]))


def _check_mode(mode: str) -> None:
    if mode not in ("vertex", "arc"):
        raise InputError("mode must be 'vertex' or 'arc'")


# ---------------------------------------------------------------------------
# escaper
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Escaper:
    edges: tuple[Edge, ...]
    U: tuple[int, ...]
    U_out: tuple[int, ...]
    mode: str
    k: int
    used_minimal: bool = False

    @property
    def bounds_met(self) -> bool:
        return len(self.edges) <= 4 * self.k * len(self.U) and len(self.U_out) <= 2 * self.k * len(self.U)


def _escape_once(H: DirectedMultigraph, U: Sequence[int], k: int, mode: str):
    rest = sorted(set(range(H.n)) - set(U))
    oracle = FanOracle(H, rest, "vertex" if mode == "vertex" else "edge")
    parts, out = [], set()
    for u in U:
        for direction in ("to", "from"):
            P = oracle.fan(u, direction, k)
            parts.append(P.edges())
            out.update(x for p in P.paths for x in p)
    bag = merge_edges(*parts)
    if mode == "vertex":
        bag = Counter(dict.fromkeys(bag, 1))
    return bag, tuple(sorted(out - set(U)))


def build_escaper(D: DirectedMultigraph, U: Iterable[int], k: int, mode: str = "vertex", *,
                  minimal: DirectedMultigraph | None = None) -> Escaper:
    """Fans of size ``k`` from and to every vertex of ``U``, ending outside ``U``.

    The fans are taken in ``minimal`` when given. Otherwise they are taken in
    ``D`` itself, and a minimal spanning subgraph is extracted only if the
    size bounds ``4k|U|`` and ``2k|U|`` fail there. The caller guarantees
    that ``D`` has the required connectivity.
    """
    _check_mode(mode)
    U = sorted(set(int(u) for u in U))
    if k < 1:
        raise InputError("k must be at least 1")
    if any(not 0 <= u < D.n for u in U):
        raise InputError("unknown vertex in U")
    if mode == "vertex" and len(U) > D.n - k:
        raise InputError(f"|U| = {len(U)} exceeds n - k = {D.n - k}")
    if mode == "arc" and len(U) >= D.n:
        raise InputError("U must be a proper subset")
    if not U:
        return Escaper((), (), (), mode, k)
    H = minimal if minimal is not None else D
    bag, out = _escape_once(H, U, k, mode)
    E = Escaper(_copies(bag), tuple(U), out, mode, k, minimal is not None)
    if not E.bounds_met and minimal is None:
        M = minimal_subgraph(D, k, mode).graph
        bag, out = _escape_once(M, U, k, mode)
        E = Escaper(_copies(bag), tuple(U), out, mode, k, True)
    if not E.bounds_met:
        raise InvariantError(f"escaper exceeds its size bounds: {len(E.edges)} edges, {len(E.U_out)} exits")
    return E


# ---------------------------------------------------------------------------
# hub
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Conn:
    """Short fans from ``W_o`` into dominator sinks and from dominator sources into ``W_i``."""

    edges: tuple[Edge, ...]
    fan_size: int
    fans_out: dict = field(default_factory=dict)
    fans_in: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Hub:
    edges: tuple[Edge, ...]
    A0: tuple[int, ...]
    B0: tuple[int, ...]
    U_o: tuple[int, ...]
    U_i: tuple[int, ...]
    mode: str
    k: int
    conn: Conn
    bound: int

    @property
    def bound_met(self) -> bool:
        return len(self.edges) <= self.bound


def effective_t2(T: Trio) -> int:
    """``t2``, or 0 when the host is semicomplete.

    Every fixed set is empty then, so the bound ``m - t1`` on serving
    indices holds without the ``t2`` slack.
    """
    return 0 if T.delta_bar == 0 else T.t2


def _first_hop(adj, T: Trio, v: int, i: int, direction: str, used: set[int], mode: str) -> Sequence[int]:
    """Hops for index ``i``: a dominated neighbour of ``v`` plus its link into the dominator."""
    if direction == "in":
        dom = T.indominators[i]
        S, U, F, host, anchor = dom.A, dom.U_plus, T.F_plus[i], dom.host, dom.a
        blocked = T.A_union if mode == "vertex" else set(S)
        nbrs = [w for w in sorted(host) if adj[v, w]]
    else:
        dom = T.outdominators[i]
        S, U, F, host, anchor = dom.B, dom.U_minus, T.F_minus[i], dom.host, dom.b
        blocked = T.B_union if mode == "vertex" else set(S)
        nbrs = [w for w in sorted(host) if adj[w, v]]
    for w in nbrs:
        if w in U or w in F or w in blocked or w in used or w == v:
            continue
        links = [s for s in S if (adj[w, s] if direction == "in" else adj[s, w])]
        if not links:
            continue
        s = min(links)
        return [w] if s == anchor else [w, s]
    raise InvariantError(f"no exit neighbour for vertex {v} at index {i}")


def _fan(T: Trio, v: int, direction: str, fan_size: int, mode: str) -> list[tuple[int, ...]]:
    adj = T.graph.adj
    I0, I1 = domination_census(T, v, direction)
    chosen = sorted(I0 + I1)[:fan_size]
    if len(chosen) < fan_size:
        raise InvariantError(f"vertex {v} is served by {len(I0) + len(I1)} < {fan_size} dominators")
    paths: dict[int, tuple[int, ...]] = {}
    used: set[int] = set()
    for i in chosen:
        if i not in I0:
            continue
        if direction == "in":
            dom = T.indominators[i]
            hop = min(s for s in dom.A if adj[v, s])
            paths[i] = (v, dom.a) if hop == dom.a else (v, hop, dom.a)
        else:
            dom = T.outdominators[i]
            hop = min(s for s in dom.B if adj[s, v])
            paths[i] = (dom.b, v) if hop == dom.b else (dom.b, hop, v)
        used.add(hop)
    for i in chosen:
        if i in I0:
            continue
        hops = _first_hop(adj, T, v, i, direction, used, mode)
        used.add(hops[0])
        if direction == "in":
            paths[i] = (v, *hops, T.indominators[i].a)
        else:
            paths[i] = (T.outdominators[i].b, *reversed(hops), v)
    return [paths[i] for i in chosen]


def _check_w(T: Trio, W_o, W_i) -> tuple[list[int], list[int]]:
    W_o = sorted(set(int(x) for x in W_o))
    W_i = sorted(set(int(x) for x in W_i))
    bad = (set(W_o) | set(W_i)) & T.exceptional
    if bad:
        raise InputError(f"served vertices {sorted(bad)[:5]} meet the dominators or the exceptional set")
    return W_o, W_i


def build_conn(T: Trio, W_o: Iterable[int], W_i: Iterable[int], k: int, mode: str = "vertex", *,
               fan_size: int | None = None) -> Conn:
    """Paths of length at most 3 from each ``u`` in ``W_o`` to distinct sinks ``a_i``.

    Paths are also built from distinct sources ``b_i`` to each ``v`` in
    ``W_i``. The fan size defaults to ``m - t1 - t2``. Serving indices are
    kept lowest first.
    """
    _check_mode(mode)
    t1, t2, d, m, _ = T.params
    dbar = T.delta_bar
    if m < t1 + t2 + k:
        raise InputError(f"need m >= t1 + t2 + k, got m={m}")
    need = 6 * m + 5 * dbar if mode == "vertex" else m + 5 * dbar
    if d < need:
        raise InputError(f"need d >= {'6m' if mode == 'vertex' else 'm'} + 5*dbar = {need}, got d={d}")
    W_o, W_i = _check_w(T, W_o, W_i)
    size = m - t1 - t2 if fan_size is None else fan_size
    fans_out = {u: tuple(_fan(T, u, "in", size, mode)) for u in W_o}
    fans_in = {v: tuple(_fan(T, v, "out", size, mode)) for v in W_i}
    parts = [[(p[j], p[j + 1]) for p in fan for j in range(len(p) - 1)]
             for fan in list(fans_out.values()) + list(fans_in.values())]
    bag = merge_edges(*parts)
    w = max(len(W_o), len(W_i))
    if sum(bag.values()) > 6 * w * size:
        raise InvariantError("connector exceeds 6w times the fan size")
    return Conn(_copies(bag), size, fans_out, fans_in)


def hub_conditions(T: Trio, k: int, mode: str) -> dict[str, bool]:
    t1, _, d, m, u = T.params
    dbar = T.delta_bar
    t2 = effective_t2(T)
    return {
        "m > 2t1 + 2t2 + 3k + dbar - 2": m > 2 * t1 + 2 * t2 + 3 * k + dbar - 2,
        "d >= 6m + 5dbar" if mode == "vertex" else "d >= m + 5dbar":
            d >= (6 * m if mode == "vertex" else m) + 5 * dbar,
        "u >= d/15": Fraction(u) >= Fraction(d, 15),
    }


def build_hub(T: Trio, W_o: Iterable[int], W_i: Iterable[int], k: int, mode: str = "vertex") -> Hub:
    """Routes ``W_o`` into every ``a_t`` and every ``b_t`` into ``W_i``, for ``t <= k``.

    The fans are widened to ``m - t1 - t2`` indices, with ``t2`` as in
    :func:`effective_t2`. A sink ``a_t`` collects them through its
    in-edges from the other sinks, and symmetrically for the sources.
    """
    _check_mode(mode)
    for name, ok in hub_conditions(T, k, mode).items():
        if not ok:
            raise InputError(f"hub condition fails: {name}")
    a, b = T.a, T.b
    A0, B0 = a[:k], b[:k]
    if set(A0) & set(B0) or len(set(A0)) != k or len(set(B0)) != k:
        raise InputError("hub anchors must be 2k distinct vertices")
    fan = T.m - T.t1 - effective_t2(T)
    conn = build_conn(T, W_o, W_i, k, mode, fan_size=fan)
    adj = T.graph.adj
    cross = [(x, y) for x in a for y in A0 if adj[x, y]] + [(x, y) for x in B0 for y in b if adj[x, y]]
    bag = merge_edges(cross, conn.edges)
    W_o, W_i = _check_w(T, W_o, W_i)
    w = max(len(W_o), len(W_i))
    bound = 2 * k * T.m + 6 * w * fan
    return Hub(_copies(bag), tuple(A0), tuple(B0), tuple(W_o), tuple(W_i), mode, k, conn, bound)


# ---------------------------------------------------------------------------
# absorber
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Absorber:
    edges: tuple[Edge, ...]
    V_ex: tuple[int, ...]
    paths: PathSystem
    W_i: tuple[int, ...]
    W_o: tuple[int, ...]
    mode: str
    k: int
    n: int
    bound: int
    components: dict = field(default_factory=dict)
    blocks: tuple[LinkageBlock, ...] = ()
    escaper: Escaper | None = None
    inner: Trio | None = None
    inner_labels: tuple[int, ...] = ()

    @property
    def bound_met(self) -> bool:
        return len(self.edges) <= self.bound


def absorber_headroom(k: int, delta_bar: int, mode: str) -> int:
    return 39 * k + 38 * delta_bar if mode == "vertex" else 33 * k + 32 * delta_bar


def absorber_bound(n: int, k: int, delta_bar: int, ex: int, mode: str) -> int:
    s = k + delta_bar
    if mode == "vertex":
        return k * n + 226 * k * s + 38 * s + (5 * k + 1) * ex
    return k * n + 210 * k * s + 32 * s + (5 * k + 1) * ex


def inner_trio_params(k: int, delta_bar: int, mode: str):
    d = 18 * k + 5 * delta_bar if mode == "vertex" else 3 * k + 5 * delta_bar
    return k, k, d, 3 * k, Fraction(d, 15)


def _validate_paths(D: DirectedMultigraph, V_ex: set[int], paths: PathSystem, k: int, mode: str) -> None:
    if len(paths.paths) != k:
        raise InputError(f"expected {k} paths, got {len(paths.paths)}")
    for p in paths.paths:
        if p[0] not in V_ex or p[-1] not in V_ex:
            raise InputError(f"path {p} must start and end in V_ex")
        if any(not D.has_edge(p[j], p[j + 1]) for j in range(len(p) - 1)):
            raise InputError(f"path {p} is not in the host graph")
    if mode == "vertex":
        allv = [x for p in paths.paths for x in p]
        if len(allv) != len(set(allv)):
            raise InputError("paths must be vertex-disjoint")
        for p in paths.paths:
            if not is_minimal_path(D, p):
                raise InputError(f"path {p} is not minimal")
    else:
        use = Counter(paths.edges())
        if any(c > D.multiplicity(u, v) for (u, v), c in use.items()):
            raise InputError("paths must be edge-disjoint")


def build_absorber(D: DirectedMultigraph, V_ex: Iterable[int], paths: PathSystem, k: int, mode: str = "vertex", *,
                   delta_bar: int | None = None, minimal: DirectedMultigraph | None = None) -> Absorber:
    """Edge set through which every vertex reaches ``W_o`` and is reached from ``W_i``.

    Steps: an inner trio on ``D - V_ex``, an escaper for ``V_ex`` grown by
    the inner dominators and exceptional set, then linkage blocks on the
    escaper exits, on the path interiors and on the rest. Last come short
    fans from the block exits into the inner dominator sinks and out of the
    inner sources into the block entries.
    """
    _check_mode(mode)
    n = D.n
    V_ex = set(int(v) for v in V_ex)
    dbar = complement_max_degree(D) if delta_bar is None else int(delta_bar)
    room = absorber_headroom(k, dbar, mode)
    if n - len(V_ex) < room:
        raise InputError(f"need |V - V_ex| >= {room}, got {n - len(V_ex)}")
    _validate_paths(D, V_ex, paths, k, mode)

    keep = sorted(set(range(n)) - V_ex)
    Dp = restrict(D, keep)
    t1, t2, d, m, u = inner_trio_params(k, dbar, mode)
    inner = build_trio(Dp, t1, t2, d, m, u, k, dbar)
    lift = keep.__getitem__
    A_in = {lift(v) for v in inner.A_union}
    B_in = {lift(v) for v in inner.B_union}
    S_in = {lift(v) for v in inner.O_star}
    V_ex2 = V_ex | A_in | B_in | S_in

    esc = build_escaper(D, V_ex2, k, mode, minimal=minimal)
    V_out = set(esc.U_out)
    interiors = {x for p in paths.paths for x in p[1:-1]}
    X1p = interiors - V_ex2 - V_out
    X1 = set(range(n)) - V_ex2 - V_out - X1p

    blocks = []
    if V_out:
        blocks.append(linkage_block(D, V_out, k, mode))
    if X1:
        blocks.append(linkage_block(D, X1, k, mode))
    if X1p:
        blocks.append(linkage_on_paths(D, paths, X1p, k, mode))
    U_o = sorted({v for B in blocks for v in B.U_o})
    U_i = sorted({v for B in blocks for v in B.U_i})
    local = {v: i for i, v in enumerate(keep)}
    conn = build_conn(inner, [local[v] for v in U_o], [local[v] for v in U_i], k, mode)
    conn_edges = [(lift(x), lift(y)) for x, y in conn.edges]

    path_edges = paths.edges()
    block_edges = [e for B in blocks for e in B.core]
    bag = merge_edges(path_edges, esc.edges, *[B.core for B in blocks], conn_edges)
    if mode == "vertex":
        bag = Counter(dict.fromkeys(bag, 1))
    W_o = tuple(lift(x) for x in inner.a)
    W_i = tuple(lift(x) for x in inner.b)
    components = {"paths": len(path_edges), "escaper": len(esc.edges), "linkage_blocks": len(block_edges),
                  "E_conn": len(conn_edges), "V_out": len(V_out), "X1": len(X1), "X1_paths": len(X1p),
                  "V_ex_grown": len(V_ex2)}
    return Absorber(_copies(bag), tuple(sorted(V_ex)), paths, W_i, W_o, mode, k, n,
                    absorber_bound(n, k, dbar, len(V_ex), mode), components, tuple(blocks), esc, inner, tuple(keep))


# ---------------------------------------------------------------------------
# checker
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Clause:
    name: str
    targets: frozenset[int]
    required: frozenset[int]
    reverse: bool  # True: required vertices must reach the targets
    skip_if_hit: bool = False


def _clauses(g) -> list[_Clause]:
    if isinstance(g, Escaper):
        U, out = frozenset(g.U), frozenset(g.U_out)
        return [_Clause("E2", out, U, True), _Clause("E3", out, U, False)]
    if isinstance(g, Hub):
        Uo, Ui = frozenset(g.U_o), frozenset(g.U_i)
        return ([_Clause(f"H2[{t}]", frozenset([a]), Uo, True, True) for t, a in enumerate(g.A0)]
                + [_Clause(f"H3[{t}]", frozenset([b]), Ui, False, True) for t, b in enumerate(g.B0)])
    if isinstance(g, Absorber):
        V = frozenset(range(g.n))
        return [_Clause("A3", frozenset(g.W_o), V, True), _Clause("A4", frozenset(g.W_i), V, False)]
    raise InputError(f"not a gadget: {type(g).__name__}")


def _structure(g, D: DirectedMultigraph | None) -> tuple[str, object] | None:
    if D is not None:
        for (u, v), c in Counter(g.edges).items():
            if not (0 <= u < D.n and 0 <= v < D.n) or D.multiplicity(u, v) < c:
                return "edges", (u, v)
    if isinstance(g, Escaper) and set(g.U) & set(g.U_out):
        return "E1", sorted(set(g.U) & set(g.U_out))
    if isinstance(g, Hub):
        if len(set(g.A0)) != g.k or len(set(g.B0)) != g.k or set(g.A0) & set(g.B0):
            return "H1", (g.A0, g.B0)
    if isinstance(g, Absorber):
        ex = set(g.V_ex)
        for p in g.paths.paths:
            if p[0] not in ex or p[-1] not in ex:
                return "A1", p
        have = Counter(g.edges)
        need = Counter(g.paths.edges())
        if g.mode == "vertex":
            need = Counter(dict.fromkeys(need, 1))
        if any(have[e] < c for e, c in need.items()):
            return "A2", sorted(e for e, c in need.items() if have[e] < c)
    return None


def _anchors(g) -> set[int]:
    if isinstance(g, Escaper):
        return set(g.U) | set(g.U_out)
    if isinstance(g, Hub):
        return set(g.A0) | set(g.B0) | {x for fans in (g.conn.fans_out, g.conn.fans_in)
                                         for fan in fans.values() for p in fan for x in p[1:-1]}
    return set(g.W_o) | set(g.W_i) | {x for p in g.paths.paths for x in p}


def check_gadget(g, D: DirectedMultigraph | None = None, *, seed: int = 0, exhaustive: bool | None = None,
                 budget: int = EXHAUSTIVE_BUDGET, trials: int = RANDOM_TRIALS) -> tuple[bool, tuple | None]:
    """Evaluates the gadget's definition directly.

    Structural clauses come first; ``D``, when given, must contain the edges.
    Then every reachability clause is tested under removal sets of size
    ``k - 1``. All sets are enumerated when they fit ``budget``. Otherwise
    the seeded random sets are joined by sets drawn from the gadget's
    anchor vertices. Returns ``(ok, witness)`` with
    ``witness = (clause, vertex, removed)``.
    """
    bad = _structure(g, D)
    if bad is not None:
        return False, (bad[0], bad[1], ())
    clauses = _clauses(g)
    bag = EdgeBag(g.edges)
    anchors = _anchors(g)
    if g.mode == "vertex":
        universe = sorted(set(bag.vertices).union(*(c.targets | c.required for c in clauses)))
        sets = removal_sets(universe, g.k - 1, anchors=sorted(anchors), seed=seed, budget=budget, trials=trials,
                            exhaustive=exhaustive)
    else:
        universe = bag.copies()
        marked = [e for e in universe if e[0] in anchors or e[1] in anchors]
        sets = removal_sets(universe, g.k - 1, anchors=marked, seed=seed, budget=budget, trials=trials,
                            exhaustive=exhaustive)
    for S in sets:
        rv = frozenset(S) if g.mode == "vertex" else frozenset()
        re = Counter(S) if g.mode == "arc" else None
        for c in clauses:
            targets = c.targets - rv
            if c.skip_if_hit and targets != c.targets:
                continue
            seen = bag.reach(targets, removed_vertices=rv, removed_edges=re, reverse=c.reverse)
            missing = c.required - rv - seen
            if missing:
                return False, (c.name, min(missing), tuple(S))
    return True, None


__all__ = ["Escaper", "Hub", "Conn", "Absorber", "build_escaper", "build_conn", "build_hub", "build_absorber",
           "check_gadget", "merge_edges", "effective_t2", "hub_conditions", "absorber_headroom", "absorber_bound",
           "inner_trio_params"]
