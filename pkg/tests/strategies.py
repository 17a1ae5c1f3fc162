"""Hypothesis strategies for small digraphs."""

from __future__ import annotations

import numpy as np
from hypothesis import strategies as st

from sparsek.graph import DirectedMultigraph


@st.composite
def digraphs(draw, min_n=1, max_n=7, density=None, multi=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    if density is None:
        chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    else:
        mask = draw(st.lists(st.floats(0, 1), min_size=len(pairs), max_size=len(pairs)))
        chosen = [p for p, x in zip(pairs, mask) if x < density]
    mult = np.zeros((n, n), dtype=np.int32)
    for u, v in chosen:
        mult[u, v] = draw(st.integers(1, 3)) if multi else 1
    return DirectedMultigraph.from_matrix(mult)


@st.composite
def tournaments(draw, min_n=3, max_n=9):
    n = draw(st.integers(min_n, max_n))
    mult = np.zeros((n, n), dtype=np.int32)
    for u in range(n):
        for v in range(u + 1, n):
            if draw(st.booleans()):
                mult[u, v] = 1
            else:
                mult[v, u] = 1
    return DirectedMultigraph.from_matrix(mult)


def edge_list(D):
    return [(u, v) for u, v, _ in D.edges()]


def copies(D):
    return D.edge_copies()


def complete(n):
    return DirectedMultigraph.from_matrix(1 - np.eye(n, dtype=np.int32))


def cycle(n):
    return DirectedMultigraph(n, [(i, (i + 1) % n) for i in range(n)])


def transitive(n):
    return DirectedMultigraph.from_matrix(np.triu(np.ones((n, n), dtype=np.int32), 1))
