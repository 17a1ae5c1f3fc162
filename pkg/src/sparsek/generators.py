"""Instance generators: extremal families and seeded random corpora.

All randomness comes from ``numpy.random.default_rng(seed)``, the PCG64 bit
generator, so a seed fixes the output on every platform.
"""

from __future__ import annotations

import numpy as np

from .connectivity import is_k_arc_connected, is_k_connected
from .errors import InputError, SparsekError
from .graph import DirectedMultigraph

MAX_ATTEMPTS = 200


def _rng(seed):
    return np.random.default_rng(seed)


def gen_dk(k: int, n: int) -> DirectedMultigraph:
    """Complete bipartite digraph with sides ``0..k-1`` and ``k..n-1``, all pairs as 2-cycles."""
    if not 1 <= k < n:
        raise InputError(f"need 1 <= k < n, got k={k}, n={n}")
    mat = np.zeros((n, n), dtype=np.int32)
    mat[:k, k:] = 1
    mat[k:, :k] = 1
    return DirectedMultigraph.from_matrix(mat)


def gen_doubled_tree(n: int, k: int, seed: int = 0) -> DirectedMultigraph:
    """Random labelled tree with every edge replaced by ``k`` directed 2-cycles."""
    if n < 2 or k < 1:
        raise InputError("need n >= 2 and k >= 1")
    rng = _rng(seed)
    perm = rng.permutation(n)
    mat = np.zeros((n, n), dtype=np.int32)
    for i in range(1, n):
        p = int(rng.integers(0, i))
        u, v = int(perm[i]), int(perm[p])
        mat[u, v] = mat[v, u] = k
    return DirectedMultigraph.from_matrix(mat)


def _power_cycle_matrix(n: int, rng) -> np.ndarray:
    """Tournament containing the floor((n-1)/2)-th power of the cycle 0 -> 1 -> ... -> n-1 -> 0."""
    mat = np.zeros((n, n), dtype=np.int32)
    r = (n - 1) // 2
    for v in range(n):
        for d in range(1, r + 1):
            mat[v, (v + d) % n] = 1
    if n % 2 == 0:
        for v in range(n // 2):
            w = v + n // 2
            if rng.random() < 0.5:
                mat[v, w] = 1
            else:
                mat[w, v] = 1
    return mat


def gen_power_cycle_tournament(n: int, seed: int = 0) -> DirectedMultigraph:
    if n < 3:
        raise InputError("need n >= 3")
    return DirectedMultigraph.from_matrix(_power_cycle_matrix(n, _rng(seed)))


def _g_matrix(n1: int, n2: int, k: int, g1: np.ndarray, seed: int) -> np.ndarray:
    if n1 < 2 * k + 1 or n2 < 2 * k + 1:
        raise InputError(f"need n1, n2 >= 2k+1 = {2 * k + 1}")
    rng = _rng(seed)
    g = g1.shape[0]
    n = g + n1 + n2
    G1 = np.arange(g)
    T2 = np.arange(g, g + n1)
    T3 = np.arange(g + n1, n)
    mat = np.zeros((n, n), dtype=np.int32)
    mat[np.ix_(G1, G1)] = g1
    mat[np.ix_(T2, T2)] = _power_cycle_matrix(n1, rng)
    mat[np.ix_(T3, T3)] = _power_cycle_matrix(n2, rng)
    mat[np.ix_(G1, T3)] = 1
    mat[np.ix_(T2, G1)] = 1
    mat[np.ix_(T2, T3)] = 1
    for i in range(k):
        a, b = T2[i], T3[i]
        mat[a, b] = 0
        mat[b, a] = 1
    return mat


def gen_G(n1: int, n2: int, k: int, delta_bar: int, seed: int = 0) -> DirectedMultigraph:
    """Oriented lower-bound graph: edgeless part, then two power-cycle tournaments.

    Vertex blocks are ``0..dbar`` for the edgeless part, then ``T2`` and
    ``T3``. The reversed pairs run from the first ``k`` vertices of ``T3``
    to the first ``k`` vertices of ``T2``.
    """
    if delta_bar < 0:
        raise InputError("delta_bar must be non-negative")
    g1 = np.zeros((delta_bar + 1, delta_bar + 1), dtype=np.int32)
    return DirectedMultigraph.from_matrix(_g_matrix(n1, n2, k, g1, seed))


def gen_T(n1: int, n2: int, k: int, seed: int = 0) -> DirectedMultigraph:
    """Tournament variant: the edgeless part becomes a transitive tournament on ``k`` vertices."""
    g1 = np.triu(np.ones((k, k), dtype=np.int32), 1)
    return DirectedMultigraph.from_matrix(_g_matrix(n1, n2, k, g1, seed))


def gen_T_lower(m: int, k: int, seed: int = 0) -> DirectedMultigraph:
    if m < 1 or k < 1:
        raise InputError("need m, k >= 1")
    return gen_T(2 * m * k + 1, 2 * m * k + 1, m * k, seed)


def _random_tournament_matrix(n: int, rng) -> np.ndarray:
    upper = np.triu(np.ones((n, n), dtype=bool), 1)
    flip = rng.random((n, n)) < 0.5
    return ((upper & flip) | (upper & ~flip).T).astype(np.int32)


def _reject(make, check, what: str):
    for attempt in range(1, MAX_ATTEMPTS + 1):
        D = make()
        if check(D):
            return D, attempt
    raise SparsekError(f"no {what} after {MAX_ATTEMPTS} attempts; lower k or raise n")


def gen_random_tournament(n: int, k: int = 1, seed: int = 0, *, mode: str = "vertex") -> DirectedMultigraph:
    """Seeded random tournament, resampled until strongly k-(arc-)connected."""
    if n < 2:
        raise InputError("need n >= 2")
    rng = _rng(seed)
    check = is_k_connected if mode == "vertex" else is_k_arc_connected
    D, _ = _reject(lambda: DirectedMultigraph.from_matrix(_random_tournament_matrix(n, rng)),
                   lambda D: bool(check(D, k)), f"strongly {k}-connected tournament")
    return D


def _bounded_complement(n: int, delta_bar: int, rng) -> np.ndarray:
    """Union of ``delta_bar`` random matchings; every vertex has degree at most ``delta_bar``."""
    miss = np.zeros((n, n), dtype=bool)
    for _ in range(delta_bar):
        perm = rng.permutation(n)
        for i in range(0, n - 1, 2):
            u, v = perm[i], perm[i + 1]
            miss[u, v] = miss[v, u] = True
    return miss


def gen_random_dense(n: int, delta_bar: int, k: int, seed: int = 0, *, two_cycle_prob: float = 0.1,
                     parallel_prob: float = 0.0, mode: str = "vertex") -> tuple[DirectedMultigraph, int]:
    """Seeded dense digraph with complement degree at most ``delta_bar``.

    Every non-missing pair becomes a 2-cycle with ``two_cycle_prob``, and
    otherwise one randomly oriented edge. With ``parallel_prob > 0`` each
    edge is doubled with that probability, giving a multigraph. The sample
    is redrawn until it is strongly k-connected (``mode="arc"``: k-arc-
    connected). Returns the graph and the number of attempts.
    """
    if n < k + 1:
        raise InputError("need n >= k+1")
    if delta_bar < 0:
        raise InputError("delta_bar must be non-negative")
    rng = _rng(seed)
    upper = np.triu(np.ones((n, n), dtype=bool), 1)

    def make():
        miss = _bounded_complement(n, delta_bar, rng)
        pair = upper & ~miss
        both = rng.random((n, n)) < two_cycle_prob
        fwd = rng.random((n, n)) < 0.5
        mat = (pair & (both | fwd)).astype(np.int32) + (pair & (both | ~fwd)).T.astype(np.int32)
        if parallel_prob > 0:
            mat = mat + (mat > 0) * (rng.random((n, n)) < parallel_prob)
        return DirectedMultigraph.from_matrix(mat.astype(np.int32))

    check = is_k_connected if mode == "vertex" else is_k_arc_connected
    return _reject(make, lambda D: bool(check(D, k)), f"strongly {k}-connected dense digraph")


FAMILIES = {
    "dk": gen_dk,
    "doubled_tree": gen_doubled_tree,
    "power_cycle_tournament": gen_power_cycle_tournament,
    "G_family": gen_G,
    "T_family": gen_T,
    "T_lower": gen_T_lower,
    "random_dense": lambda **kw: gen_random_dense(**kw)[0],
    "random_tournament": gen_random_tournament,
}


def generate(family: str, params: dict, seed: int | None = None) -> DirectedMultigraph:
    """Dispatch by family name; ``seed`` is passed to families that take one."""
    if family not in FAMILIES:
        raise InputError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    kw = dict(params)
    if seed is not None and family not in ("dk",):
        kw["seed"] = seed
    try:
        return FAMILIES[family](**kw)
    except TypeError as exc:
        raise InputError(f"bad parameters for {family}: {exc}") from None
