import dataclasses
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparsek.connectivity import PathSystem, disjoint_paths, is_k_connected
from sparsek.dominance import build_trio, domination_census
from sparsek.errors import InputError
from sparsek.gadgets import (Absorber, Escaper, absorber_bound, build_absorber, build_conn, build_escaper, build_hub,
                             check_gadget, effective_t2, merge_edges)
from sparsek.generators import gen_random_dense, gen_random_tournament
from sparsek.graph import minimalize_path
from sparsek.pipeline import sparsify_arc, sparsify_vertex, trio_params

from . import oracles
from .strategies import tournaments


def brute_escaper_ok(E: Escaper) -> bool:
    """Exhaustive E2/E3 over single removals, by the oracle's own search."""
    edges = list(E.edges)
    n = 1 + max([x for e in edges for x in e] + list(E.U) + list(E.U_out))
    out = set(E.U_out)
    removals = [()] + ([(x,) for x in range(n)] if E.k >= 2 else [])
    for S in removals:
        gone = frozenset(S)
        for u in set(E.U) - gone:
            if not oracles.reach(n, edges, u, gone) & (out - gone):
                return False
            if not any(u in oracles.reach(n, edges, w, gone) for w in out - gone):
                return False
    return True


def drop_copy(edges, e):
    c = Counter(edges)
    c[e] -= 1
    return tuple(x for x in sorted(c) for _ in range(c[x]))


@pytest.fixture(scope="module")
def tournament_250():
    D = gen_random_tournament(250, 1, seed=0)
    T = build_trio(D, *trio_params(1, 0, "vertex"), 1, 0)
    return D, T


@pytest.fixture(scope="module")
def pipeline_vertex():
    D = gen_random_tournament(250, 1, seed=0)
    return D, sparsify_vertex(D, 1, return_parts=True)[2]


@pytest.fixture(scope="module")
def pipeline_arc():
    D = gen_random_tournament(150, 1, seed=0, mode="arc")
    return D, sparsify_arc(D, 1, return_parts=True)[2]


class TestMerge:
    def test_maximum_count(self):
        assert merge_edges([(0, 1), (0, 1)], [(0, 1), (1, 2)]) == Counter({(0, 1): 2, (1, 2): 1})

    @given(st.lists(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=8), max_size=4))
    def test_contains_each_part(self, parts):
        merged = merge_edges(*parts)
        for p in parts:
            assert not Counter(p) - merged
        assert sum(merged.values()) <= sum(map(len, parts))


class TestEscaper:
    def test_single_vertex(self):
        D = gen_random_tournament(40, 2, seed=0)
        E = build_escaper(D, [7], 1)
        assert len(E.edges) <= 4 and E.bounds_met
        assert check_gadget(E, D) == (True, None)

    def test_tournament_six(self):
        D = gen_random_tournament(40, 2, seed=0)
        E = build_escaper(D, [0, 5, 9, 13, 20, 33], 2)
        assert len(E.edges) <= 48 and len(E.U_out) <= 24
        assert not set(E.U) & set(E.U_out)
        assert check_gadget(E, D, exhaustive=True) == (True, None)
        assert brute_escaper_ok(E)

    def test_arc_mode(self):
        D = gen_random_tournament(40, 2, seed=1, mode="arc")
        E = build_escaper(D, [0, 5, 9, 13, 20, 33], 2, "arc")
        assert E.bounds_met and check_gadget(E, D, exhaustive=True)[0]

    def test_too_many(self):
        D = gen_random_tournament(12, 2, seed=0)
        with pytest.raises(InputError):
            build_escaper(D, range(11), 2)
        with pytest.raises(InputError):
            build_escaper(D, [0], 1, "both")

    def test_empty(self):
        E = build_escaper(gen_random_tournament(10, 1, seed=0), [], 1)
        assert E.edges == () and check_gadget(E)[0]

    def test_deleted_edge_caught(self):
        D = gen_random_tournament(40, 2, seed=0)
        E = build_escaper(D, [7], 1)
        for e in set(E.edges):
            ok, witness = check_gadget(dataclasses.replace(E, edges=drop_copy(E.edges, e)))
            assert not ok and witness[1] == 7 and witness[2] == ()

    def test_overlap_caught(self):
        D = gen_random_tournament(40, 2, seed=0)
        E = build_escaper(D, [7], 1)
        bad = dataclasses.replace(E, U_out=E.U_out + (7,))
        assert check_gadget(bad)[1][0] == "E1"

    def test_foreign_edge_caught(self):
        D = gen_random_tournament(20, 1, seed=0)
        E = build_escaper(D, [3], 1)
        u, v = next((u, v) for u in range(20) for v in range(20) if u != v and not D.has_edge(u, v))
        assert check_gadget(dataclasses.replace(E, edges=E.edges + ((u, v),)), D)[1][0] == "edges"

    @settings(max_examples=25, deadline=None)
    @given(tournaments(min_n=8, max_n=16), st.data())
    def test_random_tournaments(self, D, data):
        k = data.draw(st.integers(1, 2))
        if not is_k_connected(D, k):
            return
        U = data.draw(st.sets(st.integers(0, D.n - 1), min_size=1, max_size=D.n - k))
        E = build_escaper(D, U, k)
        assert E.bounds_met
        assert check_gadget(E, D, exhaustive=True)[0]
        assert brute_escaper_ok(E)


class TestConn:
    def test_empty(self, tournament_250):
        _, T = tournament_250
        C = build_conn(T, [], [], 1)
        assert C.edges == () and not C.fans_out and not C.fans_in

    def test_semicomplete_short_fans(self):
        D = gen_random_tournament(60, 1, seed=0)
        T = build_trio(D, 1, 1, 30, 5, trio_params(1, 0, "vertex")[4], 1, 0)
        W = [v for v in range(60) if v not in T.exceptional]
        size = T.m - T.t1 - effective_t2(T)
        C = build_conn(T, W, W, 1, fan_size=size)
        for u in W:
            I0, I1 = domination_census(T, u, "in")
            assert len(I0) + len(I1) >= T.m - T.t1 - T.t2
            fan = C.fans_out[u]
            assert len(fan) == size and all(len(p) <= 4 for p in fan)
            assert len({p[-1] for p in fan}) == size
            assert all(D.has_edge(p[j], p[j + 1]) for p in fan for j in range(len(p) - 1))
        assert len(C.edges) <= 6 * len(W) * size

    def test_exceptional_rejected(self, tournament_250):
        _, T = tournament_250
        with pytest.raises(InputError):
            build_conn(T, [T.a[0]], [], 1)


class TestHub:
    def test_tournament_250(self, tournament_250):
        D, T = tournament_250
        W = [v for v in range(250) if v not in T.exceptional][:3]
        H = build_hub(T, W, W, 1)
        assert H.bound_met and len(H.edges) <= 2 * 1 * T.m + 6 * 3 * (T.m - T.t1 - effective_t2(T))
        assert check_gadget(H, D, exhaustive=True) == (True, None)
        assert check_gadget(H, D, exhaustive=False, trials=200, seed=1) == (True, None)

    def test_k2(self):
        D = gen_random_tournament(400, 2, seed=0)
        T = build_trio(D, *trio_params(2, 0, "vertex"), 2, 0)
        W = [v for v in range(400) if v not in T.exceptional][:6]
        H = build_hub(T, W, W, 2)
        assert H.bound_met and check_gadget(H, D, exhaustive=True)[0]

    def test_shared_anchor_rejected(self, tournament_250):
        D, T = tournament_250
        outs = list(T.outdominators)
        outs[0] = dataclasses.replace(outs[0], b=T.a[0])
        with pytest.raises(InputError):
            build_hub(dataclasses.replace(T, outdominators=tuple(outs)), [], [], 1)
        W = [v for v in range(250) if v not in T.exceptional][:2]
        H = build_hub(T, W, W, 1)
        assert check_gadget(dataclasses.replace(H, B0=H.A0))[1][0] == "H1"

    def test_conn_edge_removed(self, tournament_250):
        D, T = tournament_250
        W = [v for v in range(250) if v not in T.exceptional][:1]
        H = build_hub(T, W, W, 1)
        bad = dataclasses.replace(H, edges=tuple(x for x in H.edges if x[0] != W[0]))
        ok, witness = check_gadget(bad)
        assert not ok and witness[1] == W[0]

    def test_conditions(self):
        D = gen_random_tournament(60, 1, seed=0)
        T = build_trio(D, 1, 1, 15, 5, trio_params(1, 0, "vertex")[4], 1, 0)
        with pytest.raises(InputError):
            build_hub(T, [], [], 1)


class TestAbsorber:
    def test_vertex_pipeline_scale(self, pipeline_vertex):
        D, (trio, paths, A, hub) = pipeline_vertex
        assert len(A.V_ex) <= 74 and A.bound_met
        assert len(A.edges) <= absorber_bound(250, 1, 0, len(A.V_ex), "vertex")
        assert check_gadget(A, D, exhaustive=True) == (True, None)
        assert check_gadget(hub, D, exhaustive=True) == (True, None)
        assert check_gadget(A.escaper, D, exhaustive=True) == (True, None)

    def test_arc_pipeline_scale(self, pipeline_arc):
        D, (trio, paths, A, hub) = pipeline_arc
        assert A.bound_met
        assert check_gadget(A, D, exhaustive=True)[0] and check_gadget(hub, D, exhaustive=True)[0]

    def test_direct_small(self):
        D = gen_random_tournament(45, 1, seed=2)
        raw = disjoint_paths(D, [0], [1])
        paths = PathSystem((minimalize_path(D, raw.paths[0]),), "vertex", (0,))
        A = build_absorber(D, {0, 1}, paths, 1)
        assert isinstance(A, Absorber) and A.bound_met
        assert check_gadget(A, D, exhaustive=True) == (True, None)

    def test_empty_path_block_branch(self):
        D = gen_random_tournament(45, 1, seed=2)
        assert D.has_edge(0, 1) or D.has_edge(1, 0)
        a, b = (0, 1) if D.has_edge(0, 1) else (1, 0)
        A = build_absorber(D, {a, b}, PathSystem(((a, b),), "vertex", (0,)), 1)
        assert A.components["X1_paths"] == 0 and check_gadget(A, D)[0]

    def test_structural_mutations(self, pipeline_vertex):
        D, (_, paths, A, _) = pipeline_vertex
        p = paths.paths[0]
        bad = dataclasses.replace(A, edges=drop_copy(A.edges, (p[0], p[1])))
        assert check_gadget(bad, D)[1][0] == "A2"
        assert check_gadget(dataclasses.replace(A, V_ex=()), D)[1][0] == "A1"

    def test_reachability_mutation(self, pipeline_vertex):
        D, (_, _, A, _) = pipeline_vertex
        v = next(x for x in range(D.n) if x not in A.W_o and x not in A.W_i and x not in A.V_ex)
        bad = dataclasses.replace(A, edges=tuple(e for e in A.edges if e[0] != v))
        ok, witness = check_gadget(bad)
        assert not ok and witness[0] == "A3"
        assert not oracles.reach(D.n, list(bad.edges), v, frozenset()) & set(A.W_o)

    def test_headroom(self):
        D = gen_random_tournament(30, 1, seed=0)
        with pytest.raises(InputError):
            build_absorber(D, {0, 1}, PathSystem(((0, 1),), "vertex", (0,)), 1)

    def test_paths_validated(self):
        D, _ = gen_random_dense(60, 1, 1, seed=0)
        with pytest.raises(InputError):
            build_absorber(D, {0, 1}, PathSystem((), "vertex", ()), 1)
        with pytest.raises(InputError):
            build_absorber(D, {0, 1}, PathSystem(((0, 2),), "vertex", (0,)), 1)


def test_unknown_gadget():
    with pytest.raises(InputError):
        check_gadget(object())
