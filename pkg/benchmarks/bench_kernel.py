"""Compares the compiled and pure-Python max-flow kernels on split networks.

Usage: python benchmarks/bench_kernel.py [--n 200 400] [--repeat 3] [--seed 0]
"""

import argparse
import time

import numpy as np

from sparsek.connectivity import INF
from sparsek.generators import gen_random_tournament
from sparsek.kernel import CFlowGraph, PyFlowGraph


def split_network(D):
    n = D.n
    tails, heads, _ = D.edge_arrays()
    t = np.concatenate([2 * np.arange(n), 2 * tails + 1])
    h = np.concatenate([2 * np.arange(n) + 1, 2 * heads])
    c = np.concatenate([np.ones(n, dtype=np.int64), np.full(len(tails), INF)])
    return 2 * n, t, h, c


def run(cls, net, pairs):
    fg = cls(*net)
    t0 = time.perf_counter()
    values = [fg.max_flow(2 * x + 1, 2 * y) for x, y in pairs]
    return time.perf_counter() - t0, values


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, nargs="+", default=[100, 200, 400])
    p.add_argument("--pairs", type=int, default=20)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    if CFlowGraph is None:
        raise SystemExit("compiled kernel not built; run pip install -e . --no-build-isolation")
    rng = np.random.default_rng(a.seed)
    print(f"{'n':>6} {'m':>8} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    for n in a.n:
        D = gen_random_tournament(n, 1, seed=a.seed)
        net = split_network(D)
        pairs = [tuple(int(x) for x in rng.choice(n, 2, replace=False)) for _ in range(a.pairs)]
        tc = min(run(CFlowGraph, net, pairs)[0] for _ in range(a.repeat))
        tp, vp = min(run(PyFlowGraph, net, pairs) for _ in range(a.repeat))
        assert run(CFlowGraph, net, pairs)[1] == vp, "kernels disagree"
        print(f"{n:>6} {D.m:>8} {tc:>10.4f} {tp:>10.4f} {tp / tc:>8.1f}")


if __name__ == "__main__":
    main()
