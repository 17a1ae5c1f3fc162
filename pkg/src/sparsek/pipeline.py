"""End-to-end sparsifiers for strong k-connectivity and k-arc-connectivity.

Small inputs take a fallback branch. Large ones are assembled from:

* a trio of dominators;
* ``k`` disjoint paths from the first ``k`` sinks to the first ``k`` sources;
* an absorber that routes every vertex into ``W_o`` and out of ``W_i``;
* a hub that routes ``W_o`` into each sink ``a_t`` and each source ``b_t``
  into ``W_i``.

After ``k - 1`` removals one path survives, and the absorber and hub reach
its two ends.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .connectivity import PathSystem, disjoint_paths, is_k_arc_connected, is_k_connected
from .dominance import build_trio
from .errors import InfeasibleError, InputError, InvariantError
from .gadgets import absorber_headroom, build_absorber, build_hub, merge_edges
from .graph import DirectedMultigraph, complement_max_degree, minimalize_path, reduce_to_simple
from .minimal import minimal_k_arc_connected, minimal_k_connected

log = logging.getLogger(__name__)

HEADLINE = {"vertex": 800, "arc": 670}
PROOF = {"vertex": 790, "arc": 666}
FULL_THRESHOLD = {"vertex": 200, "arc": 100}


@dataclass(frozen=True)
class Params:
    mode: str
    n: int
    k: int
    delta_bar: int
    t1: int
    t2: int
    d: int
    m: int
    u: Fraction
    checks: dict = field(default_factory=dict)

    @property
    def trio(self) -> tuple:
        return self.t1, self.t2, self.d, self.m, self.u


def trio_params(k: int, delta_bar: int, mode: str) -> tuple[int, int, int, int, Fraction]:
    s = k + delta_bar
    if mode == "vertex":
        return s, max(1, delta_bar), 30 * k + 35 * delta_bar, 5 * s, Fraction(7 * s, 3)
    return s, max(1, delta_bar), 5 * k + 10 * delta_bar, 5 * s, Fraction(k + 2 * delta_bar, 3)


def preflight(n: int, k: int, delta_bar: int, mode: str) -> Params:
    """Trio parameters for the full branch, with every inequality the later steps consume.

    Raises :class:`InputError` naming the first failed inequality.
    """
    if mode not in ("vertex", "arc"):
        raise InputError("mode must be 'vertex' or 'arc'")
    if k < 1 or delta_bar < 0:
        raise InputError("need k >= 1 and delta_bar >= 0")
    t1, t2, d, m, u = trio_params(k, delta_bar, mode)
    t2_eff = 0 if delta_bar == 0 else t2
    s = k + delta_bar
    o_star = 2 * m * u / t1 + (Fraction(10 * delta_bar * m, t2) if t2 < delta_bar else 0)
    ex = 10 * m + o_star
    thr = FULL_THRESHOLD[mode]
    checks = {
        f"n >= {thr}(k + dbar)": n >= thr * s,
        "u >= d/15": u >= Fraction(d, 15),
        "n >= 10m": n >= 10 * m,
        "m >= t1 + t2 + k": m >= t1 + t2 + k,
        "m > 2t1 + 2t2 + 3k + dbar - 2": m > 2 * t1 + 2 * t2_eff + 3 * k + delta_bar - 2,
        ("d >= 6m + 5dbar" if mode == "vertex" else "d >= m + 5dbar"):
            d >= (6 * m if mode == "vertex" else m) + 5 * delta_bar,
        "absorber headroom": n - ex >= absorber_headroom(k, delta_bar, mode),
    }
    for name, ok in checks.items():
        if not ok:
            raise InputError(f"preflight fails: {name} (n={n}, k={k}, dbar={delta_bar}, mode={mode})")
    return Params(mode, n, k, delta_bar, t1, t2, d, m, u, checks)


@dataclass
class SparsifyReport:
    mode: str
    n: int
    k: int
    delta_bar: int
    branch_taken: str
    component_edge_counts: dict
    total_edges: int
    bound_value: int
    bound_met: bool
    verified: bool
    proof_bound: int = 0
    params: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def _bound(mode: str, n: int, k: int, dbar: int, c: int) -> int:
    return k * n + c * k * (k + dbar)


def _report(mode, D, k, dbar, branch, counts, H, verified, params=None, details=None) -> SparsifyReport:
    bound = _bound(mode, D.n, k, dbar, HEADLINE[mode])
    proof = _bound(mode, D.n, k, dbar, PROOF[mode])
    log.info("%s sparsify n=%d k=%d dbar=%d branch=%s edges=%d bound=%d proof-bound=%d", mode, D.n, k, dbar,
             branch, H.m, bound, proof)
    return SparsifyReport(mode, D.n, k, dbar, branch, counts, H.m, bound, H.m <= bound, verified, proof,
                          params or {}, details or {})


def _relabel_sources(trio, paths: PathSystem, k: int):
    """Reorders the first ``k`` out-dominators so path ``i`` ends at ``b_i``."""
    outs = list(trio.outdominators)
    head = [outs[paths.pairing[i]] for i in range(k)]
    trio = dataclasses.replace(trio, outdominators=tuple(head + outs[k:]))
    return trio, PathSystem(paths.paths, paths.mode, tuple(range(k)))


def _assemble(D: DirectedMultigraph, k: int, dbar: int, mode: str, P: Params):
    trio = build_trio(D, *P.trio, k, dbar)
    a, b = trio.a[:k], trio.b[:k]
    raw = disjoint_paths(D, a, b, "vertex" if mode == "vertex" else "edge")
    if mode == "vertex":
        raw = PathSystem(tuple(minimalize_path(D, p) for p in raw.paths), "vertex", raw.pairing)
    trio, paths = _relabel_sources(trio, raw, k)
    V_ex = trio.exceptional
    absorber = build_absorber(D, V_ex, paths, k, mode, delta_bar=dbar)
    hub = build_hub(trio, absorber.W_o, absorber.W_i, k, mode)
    bag = merge_edges(absorber.edges, hub.edges)
    if mode == "vertex":
        bag = {e: 1 for e in bag}
    H = DirectedMultigraph(D.n, [(u, v, c) for (u, v), c in sorted(bag.items())])
    counts = {
        "paths": absorber.components["paths"],
        "escaper": absorber.components["escaper"],
        "linkage_blocks": absorber.components["linkage_blocks"],
        "E_conn": absorber.components["E_conn"],
        "E_hub": len(hub.edges),
        "E_abs": len(absorber.edges),
    }
    details = {
        "V_ex": len(V_ex),
        "O_star": len(trio.O_star),
        "absorber_bound": absorber.bound,
        "absorber_bound_met": absorber.bound_met,
        "hub_bound": hub.bound,
        "hub_bound_met": hub.bound_met,
        "V_out": absorber.components["V_out"],
        "X1": absorber.components["X1"],
        "X1_paths": absorber.components["X1_paths"],
        "linkage_targets_met": all(B.linkage is None or B.linkage.achieved_edges <= B.target
                                   for B in absorber.blocks),
    }
    return H, counts, details, (trio, paths, absorber, hub)


def _params_dict(P: Params) -> dict:
    return {"t1": P.t1, "t2": P.t2, "d": P.d, "m": P.m, "u": str(P.u)}


def sparsify_vertex(D: DirectedMultigraph, k: int, *, return_parts: bool = False):
    """Sparse strongly k-connected spanning subgraph of a strongly k-connected digraph.

    Parallel edges are ignored. Returns ``(subgraph, report)``, plus the trio,
    paths, absorber and hub when ``return_parts`` is set and the full branch ran.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    D = reduce_to_simple(D)
    res = is_k_connected(D, k)
    if not res:
        raise InfeasibleError(f"input is not strongly {k}-connected: {res.reason}", witness=res)
    dbar = complement_max_degree(D)
    n = D.n
    parts = None
    if n < 4 * k + 3:
        H, branch, counts, params, details = D, "trivial", {"input": D.m}, {}, {}
    elif n < FULL_THRESHOLD["vertex"] * (k + dbar):
        H = minimal_k_connected(D, k).graph
        branch, counts, params, details = "minimal-fallback", {"minimal": H.m}, {}, {}
    else:
        try:
            P = preflight(n, k, dbar, "vertex")
        except InputError as exc:
            raise InvariantError(f"preflight failed above the size threshold: {exc}") from None
        H, counts, details, parts = _assemble(D, k, dbar, "vertex", P)
        branch, params = "full-pipeline", _params_dict(P)
    verified = bool(is_k_connected(H, k))
    rep = _report("vertex", D, k, dbar, branch, counts, H, verified, params, details)
    if not verified:
        raise InvariantError(f"output is not strongly {k}-connected")
    return (H, rep, parts) if return_parts else (H, rep)


def sparsify_arc(D: DirectedMultigraph, k: int, *, return_parts: bool = False):
    """Sparse strongly k-arc-connected spanning subgraph of a strongly k-arc-connected multigraph."""
    if k < 1:
        raise InputError("k must be at least 1")
    res = is_k_arc_connected(D, k)
    if not res:
        raise InfeasibleError(f"input is not strongly {k}-arc-connected: {res.reason}", witness=res)
    dbar = complement_max_degree(D)
    n = D.n
    parts = None
    if n < FULL_THRESHOLD["arc"] * (k + dbar):
        H = minimal_k_arc_connected(D, k).graph
        branch, counts, params, details = "minimal-fallback", {"minimal": H.m}, {}, {}
    else:
        try:
            P = preflight(n, k, dbar, "arc")
        except InputError as exc:
            raise InvariantError(f"preflight failed above the size threshold: {exc}") from None
        H, counts, details, parts = _assemble(D, k, dbar, "arc", P)
        branch, params = "full-pipeline", _params_dict(P)
    verified = bool(is_k_arc_connected(H, k))
    rep = _report("arc", D, k, dbar, branch, counts, H, verified, params, details)
    if not verified:
        raise InvariantError(f"output is not strongly {k}-arc-connected")
    return (H, rep, parts) if return_parts else (H, rep)


def sparsify(D: DirectedMultigraph, k: int, mode: str = "vertex", **kw):
    if mode == "vertex":
        return sparsify_vertex(D, k, **kw)
    if mode == "arc":
        return sparsify_arc(D, k, **kw)
    raise InputError("mode must be 'vertex' or 'arc'")


__all__ = ["Params", "SparsifyReport", "preflight", "trio_params", "sparsify_vertex", "sparsify_arc", "sparsify",
           "HEADLINE", "PROOF", "FULL_THRESHOLD"]
