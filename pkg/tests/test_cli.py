from __future__ import annotations

import json
import subprocess
import sys

import pytest

from ttr.cli import main

from _support import DATA


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info(capsys):
    code, out, _ = run(capsys, "info", "a2")
    assert code == 0
    assert out.splitlines() == ["p=101", "dim=3", "cartan=1,1 0,1", "P1=1,1 I1=1,0", "P2=0,1 I2=1,1"]


def test_field_override(capsys):
    code, out, _ = run(capsys, "info", "a2", "--field", "7")
    assert code == 0 and out.startswith("p=7\n")
    code, _, err = run(capsys, "info", "a2", "--field", "8")
    assert code == 1 and "prime" in err


def test_tau(capsys):
    code, out, _ = run(capsys, "tau", "a2", "--module", "S1")
    assert code == 0 and out.splitlines()[1:] == ["dims 0 1"]
    code, out, _ = run(capsys, "tau", "preproj_a3", "--module", "preproj_21.rep")
    assert code == 0 and out.splitlines()[1:] == ["dims 0 0 1"]
    code, _, _ = run(capsys, "tau", "a2")
    assert code == 1


def test_enumerate(capsys, tmp_path):
    dot, recs = tmp_path / "a2.dot", tmp_path / "a2.jsonl"
    code, out, _ = run(capsys, "enumerate", str(DATA / "a2.alg"), "--dot", str(dot), "--records", str(recs))
    assert code == 0
    assert out.splitlines() == ["p=101", "nodes=5 arrows=5 complete=true"]
    assert dot.read_text().count("->") == 5
    assert len(recs.read_text().splitlines()) == 5


def test_enumerate_with_cap(capsys):
    code, out, _ = run(capsys, "enumerate", "kronecker", "--cap", "8")
    assert code == 2
    assert "nodes=8 complete=false" in out.splitlines()


def test_cap_zero_is_an_input_error(capsys):
    code, _, err = run(capsys, "enumerate", "a2", "--cap", "1")
    assert code == 1 and err.startswith("error:")


def test_freeze(capsys):
    code, out, _ = run(capsys, "freeze", "a3r2", "--module", "P3")
    assert code == 0
    lines = out.splitlines()
    assert lines[1] == "interval=5 complete=true"
    assert lines[2] == "max=0,0,1;0,1,0;1,0,0"


def test_reduce(capsys, tmp_path):
    recs = tmp_path / "r.jsonl"
    code, out, _ = run(capsys, "reduce", "a3r2", "--module", "P3", "--against", "a2", "--records", str(recs))
    assert code == 0
    lines = out.splitlines()
    assert lines[1] == "interval=5 dimC=3 poset_iso=true"
    assert "count_match=true dim_match=true" in lines
    rows = [json.loads(ln) for ln in recs.read_text().splitlines()]
    assert sorted(r["reduced_dim"] for r in rows) == [0, 1, 1, 3, 3]


def test_reduce_failed_verdict_exits_nonzero(capsys):
    code, out, _ = run(capsys, "reduce", "a3r2", "--module", "P3", "--against", "kk")
    assert code == 1 and "poset_iso=false" in out


def test_reduce_incomplete_interval(capsys):
    code, out, _ = run(capsys, "reduce", "preproj_a3", "--module", "preproj_21.rep", "--cap", "3")
    assert code == 2 and "interval=3 complete=false" in out


def test_check(capsys):
    code, out, _ = run(capsys, "check", "two_cycle")
    assert code == 0
    assert all(ln.endswith("ok") for ln in out.splitlines()[2:])
    code, _, _ = run(capsys, "check", "kronecker", "--cap", "4")
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate", "missing.alg"],
        ["info", "loop"],
        ["freeze", "a2"],
        ["reduce", "a2", "--module", "P1+P1[1]"],
        ["reduce", "a2", "--module", "nowhere.rep"],
    ],
)
def test_input_errors_exit_one(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err.startswith("error:")


def test_cache_reuse(capsys, tmp_path):
    first = run(capsys, "enumerate", "nak3", "--cache", str(tmp_path))
    assert len(list(tmp_path.iterdir())) == 1
    second = run(capsys, "enumerate", "nak3", "--cache", str(tmp_path))
    assert first == second
    assert first[1].splitlines()[1] == "nodes=14 arrows=21 complete=true"


def test_console_script_output_is_byte_identical(tmp_path):
    outs = []
    for _ in range(2):
        res = subprocess.run(
            [sys.executable, "-m", "ttr.cli", "reduce", "a3r2", "--module", "P3", "--against", "a2"],
            capture_output=True,
            check=False,
        )
        assert res.returncode == 0
        outs.append(res.stdout)
    assert outs[0] == outs[1]
