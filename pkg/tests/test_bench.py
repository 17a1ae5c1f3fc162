import io
import json

import pytest

from sparsek.bench import COLUMNS, JOBS_ENV, load_suite, run_instance, run_suite, worker_count, write_csv
from sparsek.errors import InputError

SUITE = [
    {"name": "t40", "family": "random_tournament", "params": {"n": 40, "k": 2}, "seed": 4, "mode": "vertex", "k": 2},
    {"name": "a30", "family": "random_dense", "params": {"n": 30, "delta_bar": 1, "k": 1}, "seed": 2,
     "mode": "arc", "k": 1},
    {"name": "tree", "family": "doubled_tree", "params": {"n": 9, "k": 2}, "seed": 0, "mode": "arc", "k": 2},
]


def test_row_fields():
    row = run_instance(SUITE[0])
    assert tuple(row) == COLUMNS
    assert row["verified"] and row["bound_met"] and row["n"] == 40
    assert len(row["output_sha256"]) == 64 and len(row["report_sha256"]) == 64


def test_pool_matches_serial():
    strip = lambda rows: [{k: v for k, v in r.items() if k != "seconds"} for r in rows]
    serial = run_suite(SUITE, jobs=1)
    pooled = run_suite(SUITE, jobs=2)
    assert strip(serial) == strip(pooled)
    assert [r["name"] for r in pooled] == ["t40", "a30", "tree"]


def test_arc_suite_samples_arc_instances():
    row = run_instance(SUITE[1])
    assert row["mode"] == "arc" and row["verified"]


def test_worker_count(monkeypatch):
    monkeypatch.setenv(JOBS_ENV, "3")
    assert worker_count() == 3
    assert worker_count(5) == 5
    monkeypatch.delenv(JOBS_ENV)
    assert worker_count() >= 1 and worker_count(0) == 1


def test_csv():
    buf = io.StringIO()
    write_csv([run_instance(SUITE[2])], buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == ",".join(COLUMNS) and len(lines) == 2


def test_load_suite(tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps(SUITE))
    assert load_suite(p) == SUITE
    p.write_text(json.dumps({"family": "dk"}))
    with pytest.raises(InputError):
        load_suite(p)
    p.write_text(json.dumps([{"family": "dk"}]))
    with pytest.raises(InputError, match="lacks"):
        load_suite(p)
    p.write_text("{")
    with pytest.raises(InputError):
        load_suite(p)
