"""Brute-force reference implementations used to cross-check the package.

Everything here works on plain edge lists and Python sets, by exhaustive
enumeration, and imports nothing from the package.
"""

from __future__ import annotations

import itertools
from collections import Counter


def reach(n, edges, src, removed=frozenset(), gone=None):
    gone = gone or Counter()
    left = Counter(edges) - gone
    out = {}
    for (u, v), c in left.items():
        if c > 0:
            out.setdefault(u, set()).add(v)
    seen = {src}
    stack = [src]
    while stack:
        v = stack.pop()
        for w in out.get(v, ()):
            if w not in seen and w not in removed:
                seen.add(w)
                stack.append(w)
    return seen


def strongly_connected(n, edges, removed=frozenset(), gone=None):
    alive = [v for v in range(n) if v not in removed]
    if len(alive) <= 1:
        return True
    rev = [(v, u) for u, v in edges]
    rgone = Counter({(v, u): c for (u, v), c in (gone or Counter()).items()})
    r = alive[0]
    return set(alive) <= reach(n, edges, r, removed, gone) and set(alive) <= reach(n, rev, r, removed, rgone)


def k_connected(n, edges, k):
    if n < k + 1:
        return False
    return all(strongly_connected(n, edges, frozenset(S))
               for r in range(k) for S in itertools.combinations(range(n), r))


def k_arc_connected(n, edges, k):
    copies = list(edges)
    for r in range(k):
        for S in itertools.combinations(range(len(copies)), r):
            if not strongly_connected(n, copies, gone=Counter(copies[i] for i in S)):
                return False
    return True


def complement_max_degree(n, edges):
    und = {frozenset(e) for e in edges}
    return max((sum(1 for w in range(n) if w != v and frozenset((v, w)) not in und) for v in range(n)), default=0)


def h_value(n, edges, k):
    """Fewest edges of a spanning subgraph with every in- and out-degree >= k; None if impossible.

    Exhaustive include/exclude search over the edges. A branch is cut only when
    it cannot beat the best count so far: it needs at least the larger of the
    total out- and in-deficits, and every deficit must stay coverable by the
    undecided edges.
    """
    edges = sorted(set(edges))
    m = len(edges)
    # undecided out/in capacity per vertex from edge i onwards
    rest_out = [[0] * n for _ in range(m + 1)]
    rest_in = [[0] * n for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        rest_out[i] = rest_out[i + 1][:]
        rest_in[i] = rest_in[i + 1][:]
        rest_out[i][edges[i][0]] += 1
        rest_in[i][edges[i][1]] += 1
    best = [None]
    outd, ind = [0] * n, [0] * n

    def go(i, used):
        need_out = [max(0, k - outd[v]) for v in range(n)]
        need_in = [max(0, k - ind[v]) for v in range(n)]
        if any(need_out[v] > rest_out[i][v] or need_in[v] > rest_in[i][v] for v in range(n)):
            return
        lower = used + max(sum(need_out), sum(need_in))
        if best[0] is not None and lower >= best[0]:
            return
        if not any(need_out) and not any(need_in):
            best[0] = used
            return
        u, v = edges[i]
        outd[u] += 1
        ind[v] += 1
        go(i + 1, used + 1)
        outd[u] -= 1
        ind[v] -= 1
        go(i + 1, used)

    go(0, 0)
    return best[0]


def min_cut(n_nodes, arcs, s, t):
    """Minimum s-t cut capacity by enumerating every source side."""
    others = [v for v in range(n_nodes) if v not in (s, t)]
    best = None
    for r in range(len(others) + 1):
        for side in itertools.combinations(others, r):
            S = {s, *side}
            cap = sum(c for u, v, c in arcs if u in S and v not in S)
            best = cap if best is None else min(best, cap)
    return best


def has_bg_cycle(n, edges):
    """Cycle in the bipartite representation: some component has at least as many edges as vertices."""
    copies = list(edges)
    nbr = {}
    for u, v in copies:
        nbr.setdefault(("L", u), []).append(("R", v))
        nbr.setdefault(("R", v), []).append(("L", u))
    seen = set()
    for root in nbr:
        if root in seen:
            continue
        comp, stack = {root}, [root]
        while stack:
            x = stack.pop()
            for y in nbr[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        n_edges = sum(1 for u, v in copies if ("L", u) in comp)
        if n_edges >= len(comp):
            return True
    return False


def minimal_path(adj_set, P):
    return not any((P[i], P[j]) in adj_set for i in range(len(P)) for j in range(i + 2, len(P)))
