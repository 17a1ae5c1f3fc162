import json

import pytest
from hypothesis import given

from sparsek.errors import InputError
from sparsek.generators import gen_doubled_tree
from sparsek.io import parse, read_graph, report_document, serialize, to_dot, write_graph
from sparsek.pipeline import sparsify_arc

from .strategies import digraphs


@given(digraphs(min_n=1, max_n=9, density=0.5, multi=True))
def test_round_trip(D):
    text = serialize(D)
    assert parse(text) == D
    assert serialize(parse(text)) == text


def test_format():
    D = parse("multigraph 3 4\n0 1 2\n1 2\n2 0\n")
    assert serialize(D) == "multigraph 3 4\n0 1 2\n1 2\n2 0\n"
    assert serialize(parse("digraph 2 1\n0 1\n")) == "digraph 2 1\n0 1\n"


def test_comments_and_blank_lines():
    D = parse("# a triangle\n\ndigraph 3 3  # header\n0 1\n1 2\n\n2 0 # closing edge\n")
    assert D.m == 3 and D.has_edge(2, 0)


@pytest.mark.parametrize("text,fragment", [
    ("", "empty"),
    ("graph 3 0\n", "header"),
    ("digraph 0 0\n", "at least one vertex"),
    ("digraph 3 1\n0 3\n", "line 2"),
    ("digraph 3 1\n1 1\n", "self-loop"),
    ("digraph 3 2\n0 1\n0 1\n", "parallel"),
    ("digraph 3 2\n0 1 2\n", "parallel"),
    ("multigraph 3 1\n0 1 0\n", "multiplicity"),
    ("digraph 3 2\n0 1\n", "m=2"),
    ("digraph 3 1\n0 x\n", "integer"),
    ("digraph 3 1\n0 1 1 1\n", "u v"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(InputError, match=fragment):
        parse(text)


def test_files(tmp_path):
    D = gen_doubled_tree(6, 2, seed=1)
    write_graph(D, tmp_path / "g.txt")
    assert read_graph(tmp_path / "g.txt") == D
    with pytest.raises(InputError):
        read_graph(tmp_path / "missing.txt")


def test_dot_repeats_parallel_edges():
    dot = to_dot(parse("multigraph 2 3\n0 1 2\n1 0\n"))
    assert dot.count("0 -> 1;") == 2 and dot.count("1 -> 0;") == 1 and dot.startswith("digraph D {")


def test_report_document_field_order():
    _, rep = sparsify_arc(gen_doubled_tree(5, 1, seed=0), 1)
    text = report_document(rep, seed=7)
    body = json.loads(text)
    assert list(body)[:4] == ["mode", "n", "k", "delta_bar"] and list(body)[-1] == "seed"
    assert body["branch_taken"] == "minimal-fallback" and body["verified"] is True
    assert text == report_document(rep, seed=7)
