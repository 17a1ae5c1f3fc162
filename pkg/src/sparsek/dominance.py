"""Greedy in/out-dominators and trios of them.

An in-dominator is a small transitive tournament ``A`` with source ``x`` and
sink ``a``. Almost every other vertex either has an edge into ``A`` (it is
*in-dominated*) or lies in the exceptional set ``U_plus``, which is the
common out-neighbourhood of ``A`` that sends no edge back. The greedy
halving construction keeps ``U_plus`` a ``2^(t-1)`` fraction of the
out-neighbourhood of ``x``. Out-dominators are the mirror image.

A trio bundles ``m`` in-dominators with ``m`` out-dominators and a small
exceptional vertex set ``O_star``. It also satisfies the counting
conditions T1-T9 that the hub and absorber constructions rely on.
All thresholds are compared with exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import InputError
from .graph import DirectedMultigraph, complement_max_degree, orientation_matrix, restrict, top_in_degree_vertices, \
    top_out_degree_vertices

DOMINATOR_SIZE = 5


@dataclass(frozen=True)
class InDominator:
    """``A`` lists the vertices in construction order, so ``A[0] = x`` and ``A[-1] = a``."""

    host: frozenset[int]
    A: tuple[int, ...]
    x: int
    a: int
    U_plus: frozenset[int]
    t: int = DOMINATOR_SIZE


@dataclass(frozen=True)
class OutDominator:
    """Mirror of :class:`InDominator`: ``B[0] = x`` is the sink, ``B[-1] = b`` the source."""

    host: frozenset[int]
    B: tuple[int, ...]
    x: int
    b: int
    U_minus: frozenset[int]
    t: int = DOMINATOR_SIZE


def _mask(n: int, alive) -> np.ndarray:
    if alive is None:
        return np.ones(n, dtype=bool)
    if isinstance(alive, np.ndarray) and alive.dtype == bool:
        return alive.copy()
    out = np.zeros(n, dtype=bool)
    out[[int(v) for v in alive]] = True
    return out


def _greedy(adj: np.ndarray, orient: np.ndarray, x: int, t: int, alive: np.ndarray):
    """Halving walk on the oriented graph; returns ``(A, U)`` with ``U`` as a bool vector."""
    G = orient & alive[None, :] & alive[:, None]
    A = [x]
    V = G[x].copy()
    while V.any() and len(A) < t:
        sub = np.flatnonzero(V)
        deg = G[np.ix_(sub, sub)].sum(axis=1)
        v = int(sub[int(np.argmin(deg))])
        A.append(v)
        V &= G[v]
    inter = np.logical_and.reduce(adj[A], axis=0) & alive
    back = np.logical_or.reduce(adj[:, A], axis=1)
    return A, inter & ~back


def _check_root(D: DirectedMultigraph, x: int, alive: np.ndarray, t: int) -> None:
    if not 0 <= x < D.n or not alive[x]:
        raise InputError(f"vertex {x} is not in the host graph")
    if t < 1:
        raise InputError("t must be at least 1")


def find_indominator(D: DirectedMultigraph, x: int, t: int = DOMINATOR_SIZE, *, alive=None) -> InDominator:
    """Greedy ``t``-indominator rooted at ``x`` in ``D[alive]`` (all of ``D`` by default).

    ``alive`` is a boolean mask or an iterable of vertices.
    """
    mask = _mask(D.n, alive)
    _check_root(D, x, mask, t)
    A, U = _greedy(D.adj, orientation_matrix(D), x, t, mask)
    return InDominator(frozenset(np.flatnonzero(mask).tolist()), tuple(A), x, A[-1],
                       frozenset(np.flatnonzero(U).tolist()), t)


def find_outdominator(D: DirectedMultigraph, x: int, t: int = DOMINATOR_SIZE, *, alive=None) -> OutDominator:
    """Greedy ``t``-outdominator with sink ``x``, built on the reversed graph."""
    mask = _mask(D.n, alive)
    _check_root(D, x, mask, t)
    R = D.reverse()
    B, U = _greedy(R.adj, orientation_matrix(R), x, t, mask)
    return OutDominator(frozenset(np.flatnonzero(mask).tolist()), tuple(B), x, B[-1],
                        frozenset(np.flatnonzero(U).tolist()), t)


# ---------------------------------------------------------------------------
# trios
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Trio:
    graph: DirectedMultigraph
    params: tuple[int, int, int, int, Fraction]
    k: int
    delta_bar: int
    indominators: tuple[InDominator, ...]
    outdominators: tuple[OutDominator, ...]
    O_star: frozenset[int]
    F_plus: tuple[frozenset[int], ...] = field(default=())
    F_minus: tuple[frozenset[int], ...] = field(default=())

    @property
    def t1(self) -> int:
        return self.params[0]

    @property
    def t2(self) -> int:
        return self.params[1]

    @property
    def d(self) -> int:
        return self.params[2]

    @property
    def m(self) -> int:
        return self.params[3]

    @property
    def u(self) -> Fraction:
        return self.params[4]

    @property
    def a(self) -> tuple[int, ...]:
        return tuple(I.a for I in self.indominators)

    @property
    def b(self) -> tuple[int, ...]:
        return tuple(O.b for O in self.outdominators)

    @property
    def A_union(self) -> frozenset[int]:
        return frozenset(v for I in self.indominators for v in I.A)

    @property
    def B_union(self) -> frozenset[int]:
        return frozenset(v for O in self.outdominators for v in O.B)

    @property
    def exceptional(self) -> frozenset[int]:
        """``A ∪ B ∪ O_star``."""
        return self.A_union | self.B_union | self.O_star


def _fixed_sets(adj: np.ndarray, doms, members, alive_of, U_of) -> list[np.ndarray]:
    """Vertices of the host that are neither dominated nor in ``U``, and not in the dominator."""
    n = adj.shape[0]
    out = []
    for dom in doms:
        alive = _mask(n, alive_of(dom))
        S = list(members(dom))
        dominated = np.logical_or.reduce(adj[:, S], axis=1)
        F = alive & ~dominated & ~_mask(n, U_of(dom))
        F[S] = False
        out.append(F)
    return out


def build_trio(D: DirectedMultigraph, t1: int, t2: int, d: int, m: int, u, k: int,
               delta_bar: int | None = None) -> Trio:
    """Sequential greedy trio.

    In-dominator ``i`` lives on ``D`` minus the earlier ``A_j`` and is rooted
    at the vertex with the fewest out-neighbours there. Out-dominators
    follow on ``D`` minus all of ``A`` and the earlier ``B_j``, rooted at the
    vertex with the fewest in-neighbours. Finally the first ``k`` entries
    are reordered so their sinks (sources) have the most in-neighbours
    (out-neighbours) among all sinks (sources).
    """
    u = Fraction(u)
    n = D.n
    if min(t1, t2, d, m, k) < 1:
        raise InputError("t1, t2, d, m and k must be positive")
    if m < k:
        raise InputError(f"need m >= k, got m={m}, k={k}")
    if n < 10 * m:
        raise InputError(f"need n >= 10m = {10 * m}, got n={n}")
    if u < Fraction(d, 15):
        raise InputError(f"need u >= d/15 = {Fraction(d, 15)}, got u={u}")
    dbar = complement_max_degree(D) if delta_bar is None else int(delta_bar)
    adj = D.adj
    orient = orientation_matrix(D)
    R = D.reverse()
    radj, rorient = R.adj, orientation_matrix(R)

    ins: list[InDominator] = []
    alive = np.ones(n, dtype=bool)
    for _ in range(m):
        cnt = np.where(alive, (adj & alive[None, :]).sum(axis=1), n + 1)
        x = int(np.argmin(cnt))
        A, U = _greedy(adj, orient, x, DOMINATOR_SIZE, alive)
        ins.append(InDominator(frozenset(np.flatnonzero(alive).tolist()), tuple(A), x, A[-1],
                               frozenset(np.flatnonzero(U).tolist())))
        alive[A] = False
    outs: list[OutDominator] = []
    for _ in range(m):
        cnt = np.where(alive, (radj & alive[None, :]).sum(axis=1), n + 1)
        x = int(np.argmin(cnt))
        B, U = _greedy(radj, rorient, x, DOMINATOR_SIZE, alive)
        outs.append(OutDominator(frozenset(np.flatnonzero(alive).tolist()), tuple(B), x, B[-1],
                                 frozenset(np.flatnonzero(U).tolist())))
        alive[B] = False

    ins = _reorder(ins, top_in_degree_vertices(restrict(D, [I.a for I in ins]), k),
                   sorted(I.a for I in ins), lambda I: I.a)
    outs = _reorder(outs, top_out_degree_vertices(restrict(D, [O.b for O in outs]), k),
                    sorted(O.b for O in outs), lambda O: O.b)

    Fp = _fixed_sets(adj, ins, lambda I: I.A, lambda I: sorted(I.host), lambda I: sorted(I.U_plus))
    Fm = _fixed_sets(radj, outs, lambda O: O.B, lambda O: sorted(O.host), lambda O: sorted(O.U_minus))
    O_star = (_overloaded([I.U_plus for I in ins], u, t1, n) | _overloaded([O.U_minus for O in outs], u, t1, n)
              | _frequent(Fp, t2) | _frequent(Fm, t2))
    return Trio(D, (t1, t2, d, m, u), k, dbar, tuple(ins), tuple(outs), frozenset(O_star),
                tuple(frozenset(np.flatnonzero(F).tolist()) for F in Fp),
                tuple(frozenset(np.flatnonzero(F).tolist()) for F in Fm))


def _reorder(doms, top_local, labels, key):
    """Moves the dominators whose anchor is among ``top_local`` to the front, in that order."""
    front = [labels[i] for i in top_local]
    by_anchor = {key(x): x for x in doms}
    rest = [x for x in doms if key(x) not in set(front)]
    return [by_anchor[v] for v in front] + rest


def _overloaded(U_sets, u: Fraction, t1: int, n: int) -> set[int]:
    count = np.zeros(n, dtype=np.int64)
    for U in U_sets:
        if len(U) < u:
            count[list(U)] += 1
    return set(np.flatnonzero(count > t1).tolist())


def _frequent(F_sets, t2: int) -> set[int]:
    if not F_sets:
        return set()
    count = np.sum(F_sets, axis=0)
    return set(np.flatnonzero(count > t2).tolist())


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def _common_out_not_in(adj: np.ndarray, S, host: np.ndarray) -> np.ndarray:
    inter = np.logical_and.reduce(adj[list(S)], axis=0) & host
    back = np.logical_or.reduce(adj[:, list(S)], axis=1)
    return inter & ~back


def _check_dominator(adj, S, src, snk, host, stored_U, t, label, fails):
    if not 1 <= len(S) <= t or len(set(S)) != len(S):
        fails.append(f"{label}: size {len(S)} outside [1, {t}]")
        return None
    if S[0] != src or S[-1] != snk:
        fails.append(f"{label}: endpoints are not the first and last vertex")
    if not host[list(S)].all():
        fails.append(f"{label}: dominator leaves its host")
    for p in range(len(S)):
        for q in range(p + 1, len(S)):
            if not adj[S[p], S[q]]:
                fails.append(f"{label}: missing tournament edge {S[p]}->{S[q]}")
    U = _common_out_not_in(adj, S, host)
    if set(np.flatnonzero(U).tolist()) != set(stored_U):
        fails.append(f"{label}: stored exceptional set differs from recomputation")
    deg = int((adj[src] & host).sum())
    if deg < 2 ** (t - 1) * int(U.sum()):
        fails.append(f"{label}: {deg} neighbours < 2^{t - 1} * {int(U.sum())}")
    return U


def verify_trio(T: Trio, k: int) -> tuple[bool, dict[str, list[str]]]:
    """Evaluates T1-T9 (and the dominator conditions) by direct set arithmetic.

    Returns ``(ok, report)``. The report maps each condition name to a list
    of failure descriptions, which is empty when the condition holds.
    """
    D = T.graph
    n = D.n
    adj, radj = D.adj, D.adj.T
    t1, t2, d, m, u = T.params
    dbar = T.delta_bar
    rep: dict[str, list[str]] = {c: [] for c in ("ID", "OD", "T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8", "T9")}
    if len(T.indominators) != m or len(T.outdominators) != m:
        rep["T3"].append(f"expected {m} dominators of each kind")
        return False, rep
    if dbar < complement_max_degree(D):
        rep["T9"].append(f"complement degree exceeds declared {dbar}")
    A = set(T.A_union)
    B = set(T.B_union)
    rest = np.ones(n, dtype=bool)
    rest[list(A | B)] = False
    notA = np.ones(n, dtype=bool)
    notA[list(A)] = False

    sizes = [len(I.A) for I in T.indominators] + [len(O.B) for O in T.outdominators]
    if sum(sizes) != len(A | B) or A & B:
        rep["T3"].append("dominator vertex sets are not pairwise disjoint")

    Uin, Uout, hosts_in, hosts_out = [], [], [], []
    for i, I in enumerate(T.indominators):
        host = _mask(n, sorted(I.host))
        hosts_in.append(host)
        U = _check_dominator(adj, I.A, I.x, I.a, host, I.U_plus, I.t, f"in {i}", rep["ID"])
        Uin.append(U if U is not None else np.zeros(n, dtype=bool))
        if (rest & ~host).any():
            rep["T1"].append(f"host {i} misses vertices outside A and B")
    for i, O in enumerate(T.outdominators):
        host = _mask(n, sorted(O.host))
        hosts_out.append(host)
        U = _check_dominator(radj, O.B, O.x, O.b, host, O.U_minus, O.t, f"out {i}", rep["OD"])
        Uout.append(U if U is not None else np.zeros(n, dtype=bool))
        if (rest & ~host).any():
            rep["T2"].append(f"host {i} misses vertices outside A and B")
        if (host & ~notA).any():
            rep["T2"].append(f"host {i} meets A")

    thr = Fraction(m - k - dbar, 2)
    sinks = sorted(T.a)
    sources = sorted(T.b)
    sa = restrict(D, sinks).in_neighbor_counts()
    sb = restrict(D, sources).out_neighbor_counts()
    for i in range(min(k, m)):
        ai, bi = T.indominators[i].a, T.outdominators[i].b
        if sa[sinks.index(ai)] < thr:
            rep["T4"].append(f"sink {ai} has {int(sa[sinks.index(ai)])} in-neighbours among sinks < {thr}")
        if sb[sources.index(bi)] < thr:
            rep["T4"].append(f"source {bi} has {int(sb[sources.index(bi)])} out-neighbours among sources < {thr}")

    need = m - t1 - t2
    good_in = np.zeros(n, dtype=np.int64)
    good_out = np.zeros(n, dtype=np.int64)
    for i in range(m):
        I, O = T.indominators[i], T.outdominators[i]
        dom = np.logical_or.reduce(adj[:, list(I.A)], axis=1) & hosts_in[i]
        big = int(Uin[i].sum()) >= u
        good_in += dom | (Uin[i] if big else False)
        odom = np.logical_or.reduce(radj[:, list(O.B)], axis=1) & hosts_out[i]
        obig = int(Uout[i].sum()) >= u
        good_out += odom | (Uout[i] if obig else False)
        if big:
            deg = (adj & hosts_in[i][None, :]).sum(axis=1)
            for v in np.flatnonzero(Uin[i]):
                if deg[v] < d + int(Uin[i].sum()):
                    rep["T7"].append(f"vertex {v} has {int(deg[v])} out-neighbours in host {i}")
        if obig:
            deg = (radj & hosts_out[i][None, :]).sum(axis=1)
            for v in np.flatnonzero(Uout[i]):
                if deg[v] < d + int(Uout[i].sum()):
                    rep["T8"].append(f"vertex {v} has {int(deg[v])} in-neighbours in host {i}")
    free = rest.copy()
    free[list(T.O_star)] = False
    for v in np.flatnonzero(free & (good_in < need)):
        rep["T5"].append(f"vertex {v} served by {int(good_in[v])} < {need} in-dominators")
    for v in np.flatnonzero(free & (good_out < need)):
        rep["T6"].append(f"vertex {v} served by {int(good_out[v])} < {need} out-dominators")

    size = len(T.O_star)
    cap = 2 * m * u / t1 + Fraction(10 * dbar * m, t2)
    if size > cap:
        rep["T9"].append(f"|O*| = {size} > {cap}")
    if t2 >= dbar and size > 2 * m * u / t1:
        rep["T9"].append(f"|O*| = {size} > {2 * m * u / t1}")
    return all(not v for v in rep.values()), rep


def domination_census(T: Trio, v: int, direction: str = "in") -> tuple[list[int], list[int]]:
    """Indices serving ``v`` in a hub fan.

    With ``direction="in"`` the first list holds the indices whose ``A_i``
    in-dominates ``v``. The second holds the other indices with ``v`` in a
    large ``U_i^+``. ``"out"`` mirrors this for the out-dominators.
    """
    adj = T.graph.adj
    I0, I1 = [], []
    doms = T.indominators if direction == "in" else T.outdominators
    for i, dom in enumerate(doms):
        S = dom.A if direction == "in" else dom.B
        U = dom.U_plus if direction == "in" else dom.U_minus
        if v in dom.host and any((adj[v, w] if direction == "in" else adj[w, v]) for w in S):
            I0.append(i)
        elif v in U and len(U) >= T.u:
            I1.append(i)
    return I0, I1


__all__ = ["InDominator", "OutDominator", "Trio", "find_indominator", "find_outdominator", "build_trio",
           "verify_trio", "domination_census", "DOMINATOR_SIZE"]
