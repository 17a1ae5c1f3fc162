"""Reachability over explicit edge multisets, and removal-set enumeration.

Every gadget checker runs on this module alone. It sees only the gadget's
own edges and never reuses anything from the code that built the gadget.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from typing import Iterable, Iterator, Sequence

EXHAUSTIVE_BUDGET = 100_000
RANDOM_TRIALS = 200


class EdgeBag:
    """A multiset of directed edges with breadth-first search."""

    def __init__(self, edges: Iterable[tuple[int, int]]):
        self.count: Counter = Counter((int(u), int(v)) for u, v in edges)
        self.out: dict[int, list[int]] = {}
        self.inn: dict[int, list[int]] = {}
        for (u, v) in sorted(self.count):
            self.out.setdefault(u, []).append(v)
            self.inn.setdefault(v, []).append(u)

    @property
    def vertices(self) -> list[int]:
        return sorted(set(self.out) | set(self.inn))

    def copies(self) -> list[tuple[int, int]]:
        return [e for e in sorted(self.count) for _ in range(self.count[e])]

    def __len__(self) -> int:
        return sum(self.count.values())

    def reach(self, sources: Iterable[int], *, removed_vertices=frozenset(), removed_edges: Counter | None = None,
              reverse: bool = False) -> set[int]:
        """Vertices reachable from ``sources`` (or reaching them when ``reverse``)."""
        adj = self.inn if reverse else self.out
        gone = removed_edges or Counter()
        seen = {s for s in sources if s not in removed_vertices}
        stack = list(seen)
        while stack:
            v = stack.pop()
            for w in adj.get(v, ()):
                if w in seen or w in removed_vertices:
                    continue
                e = (w, v) if reverse else (v, w)
                if gone and self.count[e] - gone[e] <= 0:
                    continue
                seen.add(w)
                stack.append(w)
        return seen

    def path(self, source: int, targets: set[int], *, removed_vertices=frozenset(),
             removed_edges: Counter | None = None) -> tuple[int, ...] | None:
        """Shortest path from ``source`` to any of ``targets``, smallest ids first."""
        if source in removed_vertices:
            return None
        gone = removed_edges or Counter()
        prev = {source: None}
        frontier = [source]
        while frontier:
            nxt = []
            for v in frontier:
                if v in targets:
                    out = [v]
                    while prev[out[-1]] is not None:
                        out.append(prev[out[-1]])
                    return tuple(reversed(out))
                for w in self.out.get(v, ()):
                    if w in prev or w in removed_vertices:
                        continue
                    if gone and self.count[(v, w)] - gone[(v, w)] <= 0:
                        continue
                    prev[w] = v
                    nxt.append(w)
            frontier = nxt
        return None


def _n_sets(universe: int, max_size: int) -> int:
    return sum(math.comb(universe, r) for r in range(max_size + 1))


def removal_sets(universe: Sequence, max_size: int, *, anchors: Sequence = (), seed: int = 0,
                 budget: int = EXHAUSTIVE_BUDGET, trials: int = RANDOM_TRIALS,
                 exhaustive: bool | None = None) -> Iterator[tuple]:
    """Removal sets of at most ``max_size`` elements drawn from ``universe``.

    All of them when their number fits ``budget``, or when ``exhaustive`` is
    forced. Otherwise the empty set, ``trials`` seeded random sets of the
    maximum size, and sets drawn from ``anchors`` (every anchor subset if
    they fit the budget, seeded samples otherwise). Elements are positions
    into ``universe``, so multisets of edge copies work too.
    """
    universe = list(universe)
    N = len(universe)
    max_size = max(0, min(max_size, N))
    if exhaustive is None:
        exhaustive = _n_sets(N, max_size) <= budget
    if exhaustive:
        for r in range(max_size + 1):
            for combo in itertools.combinations(range(N), r):
                yield tuple(universe[i] for i in combo)
        return
    rng = random.Random(seed)
    yield ()
    for _ in range(trials):
        yield tuple(universe[i] for i in sorted(rng.sample(range(N), max_size)))
    aset = set(anchors)
    anchor_idx = [i for i, x in enumerate(universe) if x in aset]
    A = len(anchor_idx)
    if not A:
        return
    r = min(max_size, A)
    if _n_sets(A, r) <= budget:
        for size in range(1, r + 1):
            for combo in itertools.combinations(anchor_idx, size):
                yield tuple(universe[i] for i in combo)
    else:
        for _ in range(trials):
            picked = rng.sample(anchor_idx, r)
            yield tuple(universe[i] for i in sorted(picked))
