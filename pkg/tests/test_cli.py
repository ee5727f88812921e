"""Command line interface: subcommands, formats, exit codes."""
from __future__ import annotations

import contextlib
import io
import json
import os

from knotcensus.cli import EXIT_DATA, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE, main


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        rc = main(argv)
    return rc, out.getvalue(), err.getvalue()


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------

def test_census_writes_counts_knots_and_journal(tmp_path):
    out = str(tmp_path / "run")
    rc, _, _ = run_cli(["census", "--max-crossings", "5", "--out", out])
    assert rc == EXIT_OK
    assert sorted(os.listdir(out)) == ["counts.csv", "knots.csv",
                                       "state.journal"]
    assert open(os.path.join(out, "counts.csv")).read() == (
        "crossings|count\n0|1\n1|0\n2|0\n3|1\n4|1\n5|2\n")
    assert open(os.path.join(out, "knots.csv")).read() == (
        "order|crossings|name\n"
        "0|0|{}\n"
        "1|3|{(1,4),(3,6),(5,2)}\n"
        "2|4|{(1,4),(3,6),(5,8),(7,2)}\n"
        "3|5|{(1,4),(3,8),(5,10),(7,2),(9,6)}\n"
        "4|5|{(1,6),(3,8),(5,10),(7,2),(9,4)}\n")


def test_census_json_format(tmp_path):
    out = str(tmp_path / "run")
    rc, _, _ = run_cli(["census", "--max-crossings", "4", "--out", out,
                        "--format", "json"])
    assert rc == EXIT_OK
    counts = json.load(open(os.path.join(out, "counts.json")))
    assert counts == {"columns": ["crossings", "count"],
                      "rows": [[0, 1], [1, 0], [2, 0], [3, 1], [4, 1]]}
    knots = json.load(open(os.path.join(out, "knots.json")))
    assert knots["columns"] == ["order", "crossings", "name"]
    assert knots["rows"][1] == [1, 3, "{(1,4),(3,6),(5,2)}"]


def test_census_resume_reuses_the_journal(tmp_path):
    out = str(tmp_path / "run")
    run_cli(["census", "--max-crossings", "5", "--out", out])
    journal = open(os.path.join(out, "state.journal")).read()
    rc, _, _ = run_cli(["census", "--max-crossings", "5", "--out", out,
                        "--resume"])
    assert rc == EXIT_OK
    assert open(os.path.join(out, "state.journal")).read() == journal


def test_census_workers_match_sequential(tmp_path):
    a, b = str(tmp_path / "a"), str(tmp_path / "b")
    assert run_cli(["census", "--max-crossings", "6", "--out", a])[0] == EXIT_OK
    assert run_cli(["census", "--max-crossings", "6", "--out", b,
                    "--workers", "2"])[0] == EXIT_OK
    assert open(os.path.join(a, "knots.csv")).read() == \
        open(os.path.join(b, "knots.csv")).read()
    assert open(os.path.join(a, "state.journal")).read() == \
        open(os.path.join(b, "state.journal")).read()


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

def test_invariants_from_journal(tmp_path):
    out = str(tmp_path / "run")
    run_cli(["census", "--max-crossings", "5", "--out", out])
    rc, _, _ = run_cli(["invariants", "--state",
                        os.path.join(out, "state.journal"), "--out", out])
    assert rc == EXIT_OK
    lines = open(os.path.join(out, "invariants.csv")).read().splitlines()
    assert lines[0] == ("order|crossings|name|characteristic|"
                       "[3,1]|[5,1]|[5,2]|[7,1]|[7,2]|[7,3]|"
                       "T1|T2|T3|T4|T5|T6|T7|T8|T9|T10|T11")
    assert lines[1].startswith("0|0|{}|1|0|0")
    assert lines[2] == ("1|3|{(1,4),(3,6),(5,2)}|(s^3+3s^2+3s+2)(s+1)^-3|"
                        "1|0|0|0|1|0|1|1|0|0|1|1|0|0|1|0|0")


def test_invariants_from_knots_file_matches_journal(tmp_path):
    out = str(tmp_path / "run")
    run_cli(["census", "--max-crossings", "5", "--out", out])
    via_state = str(tmp_path / "via_state")
    os.makedirs(via_state)
    run_cli(["invariants", "--state", os.path.join(out, "state.journal"),
             "--out", via_state])
    # without --state the knots file already in --out is used
    rc, _, _ = run_cli(["invariants", "--out", out])
    assert rc == EXIT_OK
    assert open(os.path.join(out, "invariants.csv")).read() == \
        open(os.path.join(via_state, "invariants.csv")).read()


def test_invariants_narrow_grid(tmp_path):
    out = str(tmp_path / "run")
    run_cli(["census", "--max-crossings", "4", "--out", out])
    rc, _, _ = run_cli(["invariants", "--out", out, "--linear-max", "5",
                        "--tables", "none"])
    assert rc == EXIT_OK
    lines = open(os.path.join(out, "invariants.csv")).read().splitlines()
    assert lines[0] == "order|crossings|name|characteristic|[3,1]|[5,1]|[5,2]"


# ---------------------------------------------------------------------------
# reduce
# ---------------------------------------------------------------------------

def test_reduce_prints_reduced_names():
    rc, out, _ = run_cli(["reduce", "{(1,4),(3,6),(2,5)}"])
    assert rc == EXIT_OK
    assert out == "{}\n"
    rc, out, _ = run_cli(["reduce", "{(1,4),(3,6),(5,2)}"])
    assert rc == EXIT_OK
    assert out == "{(1,4),(3,6),(5,2)}\n"


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------

def test_usage_errors_exit_one(tmp_path):
    assert run_cli(["census"])[0] == EXIT_USAGE  # missing --max-crossings
    assert run_cli(["bogus"])[0] == EXIT_USAGE
    assert run_cli(["census", "--max-crossings", "-1"])[0] == EXIT_USAGE
    assert run_cli(["census", "--max-crossings", "5",
                    "--format", "xml"])[0] == EXIT_USAGE


def test_data_errors_exit_two(tmp_path):
    assert run_cli(["reduce", "not-a-name"])[0] == EXIT_DATA
    assert run_cli(["invariants", "--state",
                    str(tmp_path / "missing.journal")])[0] == EXIT_DATA
    bad = tmp_path / "bad.journal"
    bad.write_text("C 4\nX nope\n")
    assert run_cli(["invariants", "--state", str(bad)])[0] == EXIT_DATA
    # no state and no knots file in the output directory
    empty = tmp_path / "empty"
    empty.mkdir()
    assert run_cli(["invariants", "--out", str(empty)])[0] == EXIT_DATA


def test_internal_errors_exit_three(monkeypatch):
    import knotcensus.cli as cli

    def explode(cfg):
        raise RuntimeError("boom")

    monkeypatch.setitem(cli._DISPATCH, "reduce", explode)
    rc, _, err = run_cli(["reduce", "{}"])
    assert rc == EXIT_INTERNAL
    assert "internal error" in err
