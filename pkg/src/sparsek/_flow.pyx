# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Dinic max-flow kernel.

Mirrors ``sparsek._pyflow.FlowGraph`` exactly; see that module for the
algorithmic description. Arc ``e`` is stored as the half-arc pair
``(2e, 2e+1)`` so the reverse of half-arc ``h`` is ``h ^ 1``.
"""

import numpy as np
cimport numpy as cnp

ctypedef long long i64

cnp.import_array()


cdef class FlowGraph:
    cdef readonly int n_nodes
    cdef readonly int n_arcs
    cdef i64[::1] _head
    cdef i64[::1] _cap0
    cdef i64[::1] _res
    cdef i64[::1] _start
    cdef i64[::1] _adj
    cdef i64[::1] _it
    cdef i64[::1] _level
    cdef i64[::1] _seen
    cdef i64[::1] _queue
    cdef i64[::1] _stack_node
    cdef i64[::1] _stack_arc
    cdef i64[::1] _dirty
    cdef unsigned char[::1] _is_dirty
    cdef i64 _n_dirty
    cdef i64 _stamp
    cdef int _last_source

    def __init__(self, int n_nodes, tails, heads, caps):
        tails = np.ascontiguousarray(tails, dtype=np.int64)
        heads = np.ascontiguousarray(heads, dtype=np.int64)
        caps = np.ascontiguousarray(caps, dtype=np.int64)
        cdef i64 m = tails.shape[0]
        if heads.shape[0] != m or caps.shape[0] != m:
            raise ValueError("tails, heads and caps must have equal length")
        if m and (tails.min() < 0 or heads.min() < 0
                  or tails.max() >= n_nodes or heads.max() >= n_nodes):
            raise ValueError("arc endpoint out of range")
        if m and caps.min() < 0:
            raise ValueError("negative capacity")
        self.n_nodes = n_nodes
        self.n_arcs = m
        head = np.empty(2 * m, dtype=np.int64)
        tail = np.empty(2 * m, dtype=np.int64)
        head[0::2] = heads
        head[1::2] = tails
        tail[0::2] = tails
        tail[1::2] = heads
        cap0 = np.zeros(2 * m, dtype=np.int64)
        cap0[0::2] = caps
        order = np.argsort(tail, kind="stable")
        counts = np.bincount(tail, minlength=n_nodes) if m else np.zeros(n_nodes, dtype=np.int64)
        start = np.zeros(n_nodes + 1, dtype=np.int64)
        np.cumsum(counts, out=start[1:])
        self._head = head
        self._cap0 = cap0
        self._res = cap0.copy()
        self._start = start
        self._adj = order.astype(np.int64)
        self._it = np.zeros(n_nodes, dtype=np.int64)
        self._level = np.zeros(n_nodes, dtype=np.int64)
        self._seen = np.zeros(n_nodes, dtype=np.int64)
        self._queue = np.zeros(max(n_nodes, 1), dtype=np.int64)
        self._stack_node = np.zeros(n_nodes + 1, dtype=np.int64)
        self._stack_arc = np.zeros(n_nodes + 1, dtype=np.int64)
        self._dirty = np.zeros(max(m, 1), dtype=np.int64)
        self._is_dirty = np.zeros(max(m, 1), dtype=np.uint8)
        self._n_dirty = 0
        self._stamp = 0
        self._last_source = -1

    cdef inline void _touch(self, i64 e):
        if not self._is_dirty[e]:
            self._is_dirty[e] = 1
            self._dirty[self._n_dirty] = e
            self._n_dirty += 1

    cdef void _reset(self):
        cdef i64 i, e
        for i in range(self._n_dirty):
            e = self._dirty[i]
            self._res[2 * e] = self._cap0[2 * e]
            self._res[2 * e + 1] = 0
            self._is_dirty[e] = 0
        self._n_dirty = 0

    def set_capacity(self, i64 arc, i64 cap):
        if arc < 0 or arc >= self.n_arcs:
            raise IndexError(arc)
        if cap < 0:
            raise ValueError("negative capacity")
        self._cap0[2 * arc] = cap
        self._res[2 * arc] = cap
        self._res[2 * arc + 1] = 0
        self._touch(arc)

    def capacity(self, i64 arc):
        return self._cap0[2 * arc]

    def flow(self, i64 arc):
        return self._cap0[2 * arc] - self._res[2 * arc]

    def flows(self):
        cap0 = np.asarray(self._cap0)
        res = np.asarray(self._res)
        return cap0[0::2] - res[0::2]

    cdef bint _bfs(self, i64 s, i64 t):
        cdef i64 qh = 0, qt = 0, v, w, h, j
        self._stamp += 1
        cdef i64 stamp = self._stamp
        self._seen[s] = stamp
        self._level[s] = 0
        self._it[s] = self._start[s]
        self._queue[qt] = s
        qt += 1
        while qh < qt:
            v = self._queue[qh]
            qh += 1
            for j in range(self._start[v], self._start[v + 1]):
                h = self._adj[j]
                if self._res[h] > 0:
                    w = self._head[h]
                    if self._seen[w] != stamp:
                        self._seen[w] = stamp
                        self._level[w] = self._level[v] + 1
                        self._it[w] = self._start[w]
                        if w == t:
                            return True
                        self._queue[qt] = w
                        qt += 1
        return False

    cdef i64 _augment(self, i64 s, i64 t, i64 limit):
        cdef i64 depth = 0, v, w, h, b, i, lt
        cdef bint advanced
        cdef i64 stamp = self._stamp
        lt = self._level[t]
        self._stack_node[0] = s
        while True:
            v = self._stack_node[depth]
            if v == t:
                b = limit
                for i in range(depth):
                    h = self._stack_arc[i]
                    if self._res[h] < b:
                        b = self._res[h]
                for i in range(depth):
                    h = self._stack_arc[i]
                    self._res[h] -= b
                    self._res[h ^ 1] += b
                    self._touch(h >> 1)
                return b
            advanced = False
            while self._it[v] < self._start[v + 1]:
                h = self._adj[self._it[v]]
                if self._res[h] > 0:
                    w = self._head[h]
                    if (self._seen[w] == stamp and self._level[w] == self._level[v] + 1
                            and (w == t or self._level[w] < lt)):
                        self._stack_arc[depth] = h
                        depth += 1
                        self._stack_node[depth] = w
                        advanced = True
                        break
                self._it[v] += 1
            if not advanced:
                if depth == 0:
                    return 0
                self._level[v] = -1
                depth -= 1
                self._it[self._stack_node[depth]] += 1

    def max_flow(self, i64 s, i64 t, i64 limit=-1):
        """Maximum s-t flow value, stopping early once ``limit`` is reached."""
        if s == t:
            raise ValueError("source equals sink")
        self._reset()
        self._last_source = s
        cdef i64 total = 0, f, room
        while limit < 0 or total < limit:
            if not self._bfs(s, t):
                break
            while limit < 0 or total < limit:
                room = (limit - total) if limit >= 0 else (<i64>1 << 62)
                f = self._augment(s, t, room)
                if f == 0:
                    break
                total += f
        return total

    def source_side(self):
        """Boolean mask of nodes reachable from the last source in the residual graph."""
        cdef i64 s = self._last_source
        mark = np.zeros(self.n_nodes, dtype=bool)
        if s < 0:
            return mark
        cdef unsigned char[::1] mk = mark.view(np.uint8)
        cdef i64 qh = 0, qt = 0, v, w, h, j
        mk[s] = 1
        self._queue[qt] = s
        qt += 1
        while qh < qt:
            v = self._queue[qh]
            qh += 1
            for j in range(self._start[v], self._start[v + 1]):
                h = self._adj[j]
                if self._res[h] > 0:
                    w = self._head[h]
                    if not mk[w]:
                        mk[w] = 1
                        self._queue[qt] = w
                        qt += 1
        return mark
