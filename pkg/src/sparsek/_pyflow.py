"""Pure-Python Dinic max-flow kernel.

This is the reference implementation of the flow kernel and the fallback used
when the compiled extension is unavailable. The compiled twin in ``_flow.pyx``
follows it line by line.

Arc ``e`` becomes the half-arc pair ``(2e, 2e+1)``; the reverse of half-arc
``h`` is ``h ^ 1``. Residual capacities live in ``_res``. Arcs touched by a
flow are recorded in a dirty list so that the next call resets only those
arcs rather than the whole network. BFS labels are validated with a stamp, so
nothing is cleared between calls either. The level graph is built only up to
the sink's layer, which keeps bounded flows (``limit``) cheap on large dense
networks.
"""

from __future__ import annotations

import numpy as np

_BIG = 1 << 62


class FlowGraph:
    def __init__(self, n_nodes: int, tails, heads, caps):
        tails = [int(x) for x in np.asarray(tails, dtype=np.int64)]
        heads = [int(x) for x in np.asarray(heads, dtype=np.int64)]
        caps = [int(x) for x in np.asarray(caps, dtype=np.int64)]
        m = len(tails)
        if len(heads) != m or len(caps) != m:
            raise ValueError("tails, heads and caps must have equal length")
        if m and (min(tails) < 0 or min(heads) < 0 or max(tails) >= n_nodes or max(heads) >= n_nodes):
            raise ValueError("arc endpoint out of range")
        if m and min(caps) < 0:
            raise ValueError("negative capacity")
        self.n_nodes = n_nodes
        self.n_arcs = m
        head = [0] * (2 * m)
        cap0 = [0] * (2 * m)
        out: list[list[int]] = [[] for _ in range(n_nodes)]
        for e in range(m):
            head[2 * e] = heads[e]
            head[2 * e + 1] = tails[e]
            cap0[2 * e] = caps[e]
        # stable by tail, matching the compiled CSR order
        for h in range(2 * m):
            out[head[h ^ 1]].append(h)
        self._head = head
        self._cap0 = cap0
        self._res = list(cap0)
        self._out = out
        self._level = [0] * n_nodes
        self._seen = [0] * n_nodes
        self._it = [0] * n_nodes
        self._stamp = 0
        self._dirty: list[int] = []
        self._is_dirty = [False] * m
        self._last_source = -1

    def _touch(self, e: int) -> None:
        if not self._is_dirty[e]:
            self._is_dirty[e] = True
            self._dirty.append(e)

    def _reset(self) -> None:
        res, cap0, is_dirty = self._res, self._cap0, self._is_dirty
        for e in self._dirty:
            res[2 * e] = cap0[2 * e]
            res[2 * e + 1] = 0
            is_dirty[e] = False
        self._dirty = []

    def set_capacity(self, arc: int, cap: int) -> None:
        if arc < 0 or arc >= self.n_arcs:
            raise IndexError(arc)
        if cap < 0:
            raise ValueError("negative capacity")
        self._cap0[2 * arc] = cap
        self._res[2 * arc] = cap
        self._res[2 * arc + 1] = 0
        self._touch(arc)

    def capacity(self, arc: int) -> int:
        return self._cap0[2 * arc]

    def flow(self, arc: int) -> int:
        return self._cap0[2 * arc] - self._res[2 * arc]

    def flows(self) -> np.ndarray:
        return np.array([self._cap0[2 * e] - self._res[2 * e] for e in range(self.n_arcs)], dtype=np.int64)

    def _bfs(self, s: int, t: int) -> bool:
        self._stamp += 1
        stamp = self._stamp
        seen, level, it, res, head, out = self._seen, self._level, self._it, self._res, self._head, self._out
        seen[s] = stamp
        level[s] = 0
        it[s] = 0
        queue = [s]
        qh = 0
        while qh < len(queue):
            v = queue[qh]
            qh += 1
            lv = level[v] + 1
            for h in out[v]:
                if res[h] > 0:
                    w = head[h]
                    if seen[w] != stamp:
                        seen[w] = stamp
                        level[w] = lv
                        it[w] = 0
                        if w == t:
                            return True
                        queue.append(w)
        return False

    def _augment(self, s: int, t: int, limit: int) -> int:
        stamp = self._stamp
        seen, level, it, res, head, out = self._seen, self._level, self._it, self._res, self._head, self._out
        lt = level[t]
        nodes = [s]
        arcs: list[int] = []
        while True:
            v = nodes[-1]
            if v == t:
                b = min(limit, min(res[h] for h in arcs))
                for h in arcs:
                    res[h] -= b
                    res[h ^ 1] += b
                    self._touch(h >> 1)
                return b
            adj = out[v]
            advanced = False
            while it[v] < len(adj):
                h = adj[it[v]]
                if res[h] > 0:
                    w = head[h]
                    if seen[w] == stamp and level[w] == level[v] + 1 and (w == t or level[w] < lt):
                        arcs.append(h)
                        nodes.append(w)
                        advanced = True
                        break
                it[v] += 1
            if not advanced:
                if len(nodes) == 1:
                    return 0
                level[v] = -1
                nodes.pop()
                arcs.pop()
                it[nodes[-1]] += 1

    def max_flow(self, s: int, t: int, limit: int = -1) -> int:
        """Maximum s-t flow value, stopping early once ``limit`` is reached."""
        if s == t:
            raise ValueError("source equals sink")
        self._reset()
        self._last_source = s
        total = 0
        while limit < 0 or total < limit:
            if not self._bfs(s, t):
                break
            while limit < 0 or total < limit:
                room = (limit - total) if limit >= 0 else _BIG
                f = self._augment(s, t, room)
                if f == 0:
                    break
                total += f
        return total

    def source_side(self) -> np.ndarray:
        """Boolean mask of nodes reachable from the last source in the residual graph."""
        mark = np.zeros(self.n_nodes, dtype=bool)
        s = self._last_source
        if s < 0:
            return mark
        res, head, out = self._res, self._head, self._out
        seen = [False] * self.n_nodes
        seen[s] = True
        stack = [s]
        while stack:
            v = stack.pop()
            for h in out[v]:
                if res[h] > 0 and not seen[head[h]]:
                    seen[head[h]] = True
                    stack.append(head[h])
        mark[:] = seen
        return mark
