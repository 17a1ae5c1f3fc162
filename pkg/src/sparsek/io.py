"""Plain-text edge lists, DOT export and report documents.

Edge-list format, 0-indexed and newline-terminated::

    digraph 4 5            # or "multigraph n m"; m counts copies
    0 1
    1 2 2                  # optional third field: multiplicity

Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import TextIO

from .errors import InputError
from .graph import DirectedMultigraph

KINDS = ("digraph", "multigraph")


def serialize(D: DirectedMultigraph) -> str:
    kind = "digraph" if D.simple else "multigraph"
    lines = [f"{kind} {D.n} {D.m}"]
    for u, v, c in D.edges():
        lines.append(f"{u} {v}" if c == 1 else f"{u} {v} {c}")
    return "\n".join(lines) + "\n"


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"line {lineno}: expected an integer, got {tok!r}") from None


def parse(text: str) -> DirectedMultigraph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise InputError("empty edge list")
    lineno, head = rows[0]
    if len(head) != 3 or head[0] not in KINDS:
        raise InputError(f"line {lineno}: header must be 'digraph|multigraph n m'")
    kind, n, m = head[0], _int(head[1], lineno), _int(head[2], lineno)
    if n < 1:
        raise InputError("graph must have at least one vertex")
    if m < 0:
        raise InputError("edge count must be non-negative")
    edges = []
    seen = set()
    for lineno, tok in rows[1:]:
        if len(tok) not in (2, 3):
            raise InputError(f"line {lineno}: expected 'u v [mult]'")
        u, v = _int(tok[0], lineno), _int(tok[1], lineno)
        c = _int(tok[2], lineno) if len(tok) == 3 else 1
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"line {lineno}: vertex out of range 0..{n - 1}")
        if u == v:
            raise InputError(f"line {lineno}: self-loop")
        if c < 1:
            raise InputError(f"line {lineno}: multiplicity must be at least 1")
        if kind == "digraph" and (c > 1 or (u, v) in seen):
            raise InputError(f"line {lineno}: parallel edge in a digraph; use the multigraph header")
        seen.add((u, v))
        edges.append((u, v, c))
    total = sum(c for _, _, c in edges)
    if total != m:
        raise InputError(f"header says m={m} but the records give {total} edges")
    return DirectedMultigraph(n, edges)


def read_graph(path: str | Path) -> DirectedMultigraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return parse(text)


def write_graph(D: DirectedMultigraph, path: str | Path) -> None:
    Path(path).write_text(serialize(D))


def to_dot(D: DirectedMultigraph, name: str = "D") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f"  {v};" for v in range(D.n)]
    for u, v, c in D.edges():
        lines += [f"  {u} -> {v};"] * c
    lines.append("}")
    return "\n".join(lines) + "\n"


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if hasattr(x, "item"):
        return x.item()
    return str(x)


def report_document(report, **extra) -> str:
    """JSON document with the report's fields in declaration order, then ``extra``."""
    body = report.as_dict() if hasattr(report, "as_dict") else dict(report)
    body.update(extra)
    return json.dumps(_plain(body), indent=2) + "\n"


def write_report(report, stream: TextIO, **extra) -> None:
    stream.write(report_document(report, **extra))


__all__ = ["serialize", "parse", "read_graph", "write_graph", "to_dot", "report_document", "write_report"]
