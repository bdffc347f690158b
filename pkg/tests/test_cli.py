from __future__ import annotations

import json
import subprocess
import sys

import pytest

from codegrees import config
from codegrees.cli import EXIT_CAPACITY, EXIT_INPUT, EXIT_INVARIANT, EXIT_OK, EXIT_VERIFY, run

from conftest import CATALOG


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cod_text(capsys):
    code, out, _ = call(capsys, "cod", "dirprod(elemab(2,1),elemab(3,1))")
    assert code == EXIT_OK and out.strip() == "{1,2,3,6}"


def test_cod_json(capsys):
    code, out, _ = call(capsys, "cod", "--format", "json", "symmetric(4)")
    assert code == EXIT_OK and json.loads(out) == [1, 2, 3, 8]


def test_classify_sl2_json(capsys):
    code, out, _ = call(capsys, "classify", "--format", "json", "sl2(3)")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["label"] == "Case7" and data["codSet"] == [1, 56, 63, 72]


def test_classify_text_lists_evidence(capsys):
    code, out, _ = call(capsys, "classify", 'named("D8onC3sq")')
    assert code == EXIT_OK
    assert "Case4a" in out.splitlines()[0]
    assert "complementFingerprint" in out


def test_table_json_schema(capsys):
    code, out, _ = call(capsys, "table", "--format", "json", "symmetric(4)")
    data = json.loads(out)
    assert code == EXIT_OK
    assert {"order", "exponent", "classCount", "degrees", "codegrees", "codSet", "kernels"} <= set(data)
    assert data["classCount"] == 5 and sorted(data["degrees"]) == [1, 1, 2, 3, 3]
    for k in data["kernels"]:
        assert set(k) == {"degree", "kernelOrder", "codegree"}


def test_table_text(capsys):
    code, out, _ = call(capsys, "table", "dihedral(10)")
    assert code == EXIT_OK and "codSet {1,2,5}" in out


def test_construct(capsys):
    code, out, _ = call(capsys, "construct", "frobsinger", "3", "7", "1")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert "order 21" in lines[0]
    assert lines[1].startswith("(")
    code, out, _ = call(capsys, "construct", "--format", "json", "TwoStepFrobenius", "p=2", "q=3", "r=2", "m=1")
    data = json.loads(out)
    assert data["order"] == 24 and data["expectedCase"] == "6" and set(data["meta"]) == {"K", "N", "P", "V"}


def test_verify_shipped_catalog(capsys):
    code, out, err = call(capsys, "verify", str(CATALOG), "--jobs", "2")
    assert code == EXIT_OK, err
    assert out.strip().endswith("entries passed")
    assert err == ""


def test_verify_failure_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text('symmetric(4) expect_cod = {1,2,3} expect_case = "6"\n', encoding="utf-8")
    code, out, err = call(capsys, "verify", str(bad))
    assert code == EXIT_VERIFY
    assert "line 1" in err


def test_verify_empty_catalog(tmp_path, capsys):
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing here\n", encoding="utf-8")
    code, out, _ = call(capsys, "verify", "--format", "json", str(empty))
    assert code == EXIT_OK and json.loads(out) == {"entries": [], "failures": 0}


@pytest.mark.parametrize("argv", [
    ["cod", "elemab(4,1)"],
    ["cod", "cyclic(3"],
    ["verify", "/nonexistent/catalog.txt"],
    ["construct", "nosuchfamily", "1"],
    ["cod", "--capacity", "0", "cyclic(3)"],
    ["frobnicate"],
])
def test_input_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as info:
        raise SystemExit(run(argv))
    assert info.value.code == EXIT_INPUT
    assert capsys.readouterr().err


def test_capacity_exit_code(capsys):
    code, _, err = call(capsys, "cod", "--capacity", "100", "symmetric(6)")
    assert code == EXIT_CAPACITY and "capacity" in err
    assert config.capacity() == config.DEFAULT_CAPACITY


def test_invariant_exit_code(capsys, monkeypatch):
    from codegrees import chartable
    monkeypatch.setattr(chartable, "cod_set", lambda G: [1, 2, 3, 7])
    code, _, err = call(capsys, "classify", "symmetric(4)")
    assert code == EXIT_INVARIANT and "invariant" in err


def test_json_is_byte_identical_across_processes():
    argv = [sys.executable, "-m", "codegrees", "classify", "--format", "json", 'named("Q8onCq2", 3)']
    outs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1]
    json.loads(outs[0])
    argv = [sys.executable, "-m", "codegrees", "table", "--format", "json", "sl2(2)"]
    outs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1]
