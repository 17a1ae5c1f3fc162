"""Command-line interface.

Exit codes: 0 success or property true, 1 property false, 2 input error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import __version__
from .bench import JOBS_ENV, load_suite, run_suite, write_csv
from .connectivity import is_k_arc_connected, is_k_connected, min_degree_spanning_subgraph
from .errors import InfeasibleError, InputError, SparsekError
from .generators import FAMILIES, generate
from .io import read_graph, report_document, serialize, to_dot, write_graph
from .minimal import minimal_subgraph
from .pipeline import sparsify

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


def _params(items: list[str]) -> dict:
    out = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep:
            raise InputError(f"parameter {item!r} must look like key=value")
        try:
            out[key] = json.loads(val)
        except json.JSONDecodeError:
            out[key] = val
    return out


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _write_output(H, path: str | None) -> None:
    if path and path.endswith(".dot"):
        _emit(to_dot(H), path)
    elif path in (None, "-"):
        sys.stdout.write(serialize(H))
    else:
        write_graph(H, path)


def cmd_generate(a) -> int:
    D = generate(a.family, _params(a.params), a.seed)
    _write_output(D, a.output)
    return EXIT_OK


def cmd_sparsify(a) -> int:
    D = read_graph(a.input)
    H, rep = sparsify(D, a.k, a.mode)
    _write_output(H, a.output)
    if a.report:
        _emit(report_document(rep, input=a.input), a.report)
    else:
        print(f"{rep.branch_taken}: {rep.total_edges} edges, bound {rep.bound_value}, verified {rep.verified}",
              file=sys.stderr)
    return EXIT_OK


def cmd_verify(a) -> int:
    D = read_graph(a.input)
    res = (is_k_connected if a.mode == "vertex" else is_k_arc_connected)(D, a.k)
    if res:
        print("true")
        return EXIT_OK
    print(f"false: {res.reason}")
    return EXIT_FALSE


def cmd_minimal(a) -> int:
    D = read_graph(a.input)
    M = minimal_subgraph(D, a.k, a.mode, seed=a.seed)
    _write_output(M.graph, a.output)
    print(f"{M.graph.m} edges", file=sys.stderr)
    return EXIT_OK


def cmd_hkd(a) -> int:
    D = read_graph(a.input)
    H, value = min_degree_spanning_subgraph(D, a.k, multigraph=a.multigraph)
    print(value)
    if a.output:
        _write_output(H, a.output)
    return EXIT_OK


def cmd_bench(a) -> int:
    rows = run_suite(load_suite(a.suite), a.jobs)
    if a.csv in (None, "-"):
        write_csv(rows, sys.stdout)
    else:
        with open(a.csv, "w", newline="") as fh:
            write_csv(rows, fh)
    ok = all(r["verified"] and r["bound_met"] for r in rows)
    return EXIT_OK if ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sparsek", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true", help="log pipeline details to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a generated instance")
    g.add_argument("--family", required=True, choices=sorted(FAMILIES))
    g.add_argument("--params", nargs="*", default=[], metavar="KEY=VALUE")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    def mode_k(sp, need_mode=True):
        if need_mode:
            sp.add_argument("--mode", choices=("vertex", "arc"), default="vertex")
        sp.add_argument("-k", type=int, required=True)
        sp.add_argument("-i", "--input", required=True)

    s = sub.add_parser("sparsify", help="sparse spanning subgraph keeping k-(arc-)connectivity")
    mode_k(s)
    s.add_argument("-o", "--output")
    s.add_argument("--report")
    s.set_defaults(func=cmd_sparsify)

    v = sub.add_parser("verify", help="check strong k-(arc-)connectivity")
    mode_k(v)
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("minimal", help="greedy minimal k-(arc-)connected subgraph")
    mode_k(m)
    m.add_argument("--seed", type=int, default=None, help="shuffle the deletion order")
    m.add_argument("-o", "--output")
    m.set_defaults(func=cmd_minimal)

    h = sub.add_parser("hkd", help="fewest edges of a spanning subgraph with all degrees >= k")
    mode_k(h, need_mode=False)
    h.add_argument("--multigraph", action="store_true", help="count parallel edges")
    h.add_argument("-o", "--output")
    h.set_defaults(func=cmd_hkd)

    b = sub.add_parser("bench", help="run a benchmark suite")
    b.add_argument("--suite", required=True)
    b.add_argument("--jobs", type=int, default=None, help=f"worker count (default: ${JOBS_ENV} or CPU count)")
    b.add_argument("--csv")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return a.func(a)
    except InfeasibleError as exc:
        print(f"false: {exc}", file=sys.stderr)
        return EXIT_FALSE
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SparsekError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
