import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings

from sparsek.errors import InputError
from sparsek.generators import gen_random_dense, gen_random_tournament
from sparsek.graph import DirectedMultigraph, complement_max_degree
from sparsek.linkage import (GoodLinkage, build_good, check_block, is_good, link_query, linkage_block,
                             linkage_on_paths, local_median_order)
from sparsek.connectivity import PathSystem

from .strategies import tournaments, transitive


def hamiltonian_linkage(n, t=1, k=1):
    F = DirectedMultigraph(n, [(i, i + 1) for i in range(n - 1)])
    return GoodLinkage(tuple(range(n)), F, k, t, F.m, 0, 0)


def independent_good(L: GoodLinkage) -> bool:
    pos = {v: i for i, v in enumerate(L.sigma)}
    n = len(L.sigma)
    for u, v in L.forward.edge_copies():
        if pos[u] >= pos[v]:
            return False
    outd = {v: 0 for v in L.sigma}
    ind = {v: 0 for v in L.sigma}
    for u, v in L.forward.edge_copies():
        outd[u] += 1
        ind[v] += 1
    return all(outd[v] >= L.k for v in L.sigma[:n - L.t]) and all(ind[v] >= L.k for v in L.sigma[L.t:])


class TestIsGood:
    def test_hamiltonian_path(self):
        assert is_good(hamiltonian_linkage(6))

    def test_reversed_edge(self):
        F = DirectedMultigraph(4, [(0, 1), (2, 1), (2, 3)])
        assert not is_good(GoodLinkage((0, 1, 2, 3), F, 1, 1, 3, 0, 0))

    def test_degree_shortfall(self):
        F = DirectedMultigraph(4, [(0, 1), (2, 3)])
        assert not is_good(GoodLinkage((0, 1, 2, 3), F, 1, 1, 2, 0, 0))


class TestBuildGood:
    def test_transitive(self):
        L = build_good(transitive(5), 1)
        assert L.sigma == (0, 1, 2, 3, 4)
        assert L.achieved_edges == 4 == L.target

    @settings(max_examples=40, deadline=None)
    @given(tournaments(min_n=2, max_n=12))
    def test_tournament_hamiltonian(self, T):
        L = build_good(T, 1)
        assert L.t == 1 and is_good(L) and independent_good(L)
        assert L.achieved_edges == T.n - 1

    def test_random_tournament_k3(self):
        L = build_good(gen_random_tournament(60, 3, seed=0), 3)
        assert is_good(L) and independent_good(L)
        assert L.achieved_edges == 165 <= 177

    def test_k_zero_and_tiny(self):
        assert build_good(transitive(4), 0).achieved_edges == 0
        assert build_good(DirectedMultigraph(1), 1).forward.m == 0

    def test_multigraph_reduced(self):
        D = DirectedMultigraph(3, [(0, 1, 2), (1, 2, 2), (0, 2)])
        L = build_good(D, 1)
        assert L.forward.simple and is_good(L)

    def test_local_median_order_is_permutation(self):
        D = gen_random_tournament(30, 1, seed=2)
        assert sorted(local_median_order(D)) == list(range(30))

    @pytest.mark.parametrize("seed", range(4))
    def test_gate_on_dense(self, seed):
        D, _ = gen_random_dense(80, 3, 2, seed=seed)
        L = build_good(D, 2)
        dbar = complement_max_degree(D)
        assert L.t == 2 * 2 + dbar - 1
        assert is_good(L) and L.achieved_edges <= 2 * 80 + 2 * 2 * (2 + dbar)


class TestLinkQuery:
    def test_hamiltonian_no_removal(self):
        L = hamiltonian_linkage(6, t=1)
        v, w, into, out = link_query(L, 3)
        assert (v, w) == (0, 5) and into == (0, 1, 2, 3) and out == (3, 4, 5)

    def test_degenerate_head(self):
        L = hamiltonian_linkage(6, t=2)
        v, _, into, _ = link_query(L, 1)
        assert v == 1 and into == (1,)

    def test_too_many_removals(self):
        with pytest.raises(InputError):
            link_query(hamiltonian_linkage(5), 2, [0])

    def test_removed_query_vertex(self):
        L = build_good(gen_random_tournament(12, 2, seed=0), 2)
        with pytest.raises(InputError):
            link_query(L, 3, [3])

    @pytest.mark.parametrize("k", [1, 2, 3])
    @pytest.mark.parametrize("mode", ["vertex", "edge"])
    def test_exhaustive_small(self, k, mode):
        for seed in range(3):
            T = gen_random_tournament(15, 1, seed=seed)
            L = build_good(T, k)
            head, tail = set(L.head), set(L.tail)
            universe = list(range(15)) if mode == "vertex" else L.forward.edge_copies()
            for r in range(k):
                for S in itertools.combinations(universe, r):
                    for u in range(15):
                        if mode == "vertex" and u in S:
                            continue
                        v, w, into, out = link_query(L, u, S, mode=mode)
                        assert v in head and w in tail and into[0] == v and into[-1] == u
                        assert out[0] == u and out[-1] == w
                        used = list(zip(into, into[1:])) + list(zip(out, out[1:]))
                        assert all(L.forward.has_edge(a, b) for a, b in used)
                        if mode == "vertex":
                            assert not (set(into) | set(out)) & set(S)
                        else:
                            assert not set(used) & set(S)

    def test_random_removals(self):
        L = build_good(gen_random_tournament(40, 2, seed=4), 2)
        rng = random.Random(0)
        for _ in range(100):
            S = [rng.randrange(40)]
            u = rng.choice([x for x in range(40) if x not in S])
            _, _, into, out = link_query(L, u, S)
            assert S[0] not in into and S[0] not in out


class TestBlocks:
    def test_single_vertex(self):
        B = linkage_block(gen_random_tournament(10, 1, seed=0), [4], 1)
        assert B.core == () and B.U_i == B.U_o == (4,)

    def test_tournament_block(self):
        D = gen_random_tournament(40, 2, seed=0)
        B = linkage_block(D, range(40), 2)
        assert len(B.U_i) <= 2 * 2 + 0 - 1 and len(B.U_o) <= 3
        assert check_block(B, seed=0) == (True, None)
        assert check_block(B, exhaustive=True)[0]

    def test_arc_block(self):
        D = gen_random_tournament(25, 2, seed=1, mode="arc")
        B = linkage_block(D, range(25), 2, "arc")
        assert check_block(B, exhaustive=True)[0]

    @pytest.mark.parametrize("seed", range(3))
    def test_edge_budget_on_dense(self, seed):
        D, _ = gen_random_dense(60, 2, 2, seed=seed)
        B = linkage_block(D, range(60), 2)
        assert B.target == 2 * 60 - 2 + 2 * complement_max_degree(D)
        assert B.linkage.achieved_edges <= B.linkage.gate

    def test_mutation_caught(self):
        D = gen_random_tournament(20, 2, seed=3)
        B = linkage_block(D, range(20), 2)
        u = B.linkage.sigma[len(B.U) // 2]
        core = tuple(e for e in B.core if e[0] != u)
        broken = type(B)(core, B.U, B.U_i, B.U_o, B.mode, B.k, B.t, B.target, B.linkage)
        ok, witness = check_block(broken, exhaustive=True)
        assert not ok and witness[0] == u

    def test_empty_set(self):
        with pytest.raises(InputError):
            linkage_block(transitive(3), [], 1)


class TestBlocksOnPaths:
    def test_k1_empty_core(self):
        D = DirectedMultigraph(4, [(0, 1), (1, 2), (2, 3)])
        B = linkage_on_paths(D, PathSystem(((0, 1, 2, 3),), "vertex", (0,)), [1, 2], 1)
        assert B.core == ()
        assert check_block(B)[0]

    def test_single_interior(self):
        D = DirectedMultigraph(3, [(0, 1), (1, 2)])
        B = linkage_on_paths(D, PathSystem(((0, 1, 2),), "vertex", (0,)), [1], 2)
        assert B.U_i == B.U_o == (1,)

    def test_non_minimal_rejected(self):
        D = transitive(4)
        with pytest.raises(InputError):
            linkage_on_paths(D, PathSystem(((0, 1, 2, 3),), "vertex", (0,)), [1, 2], 2)

    def test_interior_required(self):
        D = DirectedMultigraph(3, [(0, 1), (1, 2)])
        with pytest.raises(InputError):
            linkage_on_paths(D, PathSystem(((0, 1, 2),), "vertex", (0,)), [0], 2)

    def test_long_paths_in_sparse_host(self):
        n = 30
        rng = np.random.default_rng(0)
        # two long chordless paths plus a dense random layer between their interiors
        p1, p2 = list(range(0, 15)), list(range(15, 30))
        mat = np.zeros((n, n), dtype=np.int32)
        for p in (p1, p2):
            for a, b in zip(p, p[1:]):
                mat[a, b] = 1
        inner = p1[1:-1] + p2[1:-1]
        for a in inner:
            for b in inner:
                if a != b and rng.random() < 0.5 and not (abs(a - b) >= 2 and (a < 15) == (b < 15)):
                    mat[a, b] = 1
        D = DirectedMultigraph.from_matrix(mat)
        paths = PathSystem((tuple(p1), tuple(p2)), "vertex", (0, 1))
        B = linkage_on_paths(D, paths, inner, 2)
        assert not set(B.core) & set(paths.edges())
        assert check_block(B, exhaustive=True)[0]
