import csv
import io
import json
import os
import subprocess
import sys

import pytest
from mpmath import mpf

from multihermite import cli
from multihermite.zeros import IsolationFailure


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_transition(capsys):
    code, out, _ = run(["transition"], capsys)
    assert code == 0
    header, value = rows(out)
    assert header == ["c_star"]
    assert abs(mpf(value[0]) - mpf("4.10938818")) <= mpf("5e-8")
    assert len(value[0].replace(".", "")) == 20


def test_zeros_closed_form(capsys):
    code, out, _ = run(["zeros", "--n", "1", "--c", "15"], capsys)
    assert code == 0
    table = rows(out)
    assert table[0] == ["k", "zero", "interval"]
    assert table[1][1].startswith("-7.599342")
    assert mpf(table[2][1]) == 0
    assert table[3][1].startswith("7.599342")


def test_rule_reproduces_first_weight(capsys):
    code, out, _ = run(["rule", "--n", "10", "--c", "15"], capsys)
    assert code == 0
    table = rows(out)
    assert table[0] == ["k", "node", "lambda_1", "lambda_2", "lambda_3"]
    assert len(table) == 31
    assert table[1][2].startswith("6.88765386")
    # P significant digits
    assert len(table[1][2].split("e")[0].replace(".", "").lstrip("-")) == 64


def test_chat_resolves_to_c(capsys):
    _, via_c, _ = run(["rule", "--n", "4", "--c", "20", "--format", "json"], capsys)
    _, via_chat, _ = run(["rule", "--n", "4", "--chat", "10", "--format", "json"], capsys)
    assert json.loads(via_c)["rows"] == json.loads(via_chat)["rows"]


def test_rule_json_meta(capsys):
    code, out, _ = run(["rule", "--n", "2", "--c", "30", "--raw", "--format", "json", "--precision", "40"], capsys)
    assert code == 0
    doc = json.loads(out)
    meta = doc["meta"]
    assert meta["normalization"] == "raw"
    assert meta["P"] == "40"
    assert {"n", "c", "chat", "version"} <= set(meta)
    assert all(isinstance(v, str) for row in doc["rows"] for v in row[1:])
    assert doc["sign_patterns"]["1"]["ok"] is True


def test_poly_reports_both_methods(capsys):
    code, out, _ = run(["poly", "--n", "2,1,1", "--c=-5,0,5", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["columns"] == ["degree", "recurrence", "explicit", "abs_diff"]
    assert len(doc["rows"]) == 5
    assert mpf(doc["meta"]["max_relative_discrepancy"]) <= mpf("1e-50")


def test_density_columns_and_header(capsys):
    code, out, _ = run(["density", "--chat", "6", "--samples", "7", "--format", "json", "--precision", "30"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["columns"] == ["x", "v", "nu1", "nu2", "nu3"]
    assert doc["phase"] == "three-interval"
    assert abs(mpf(doc["c_star"]) - mpf("4.10938818")) <= mpf("5e-8")
    assert mpf(doc["d"]) < mpf(doc["a"]) < mpf(doc["b"])
    code, out, _ = run(["density", "--chat", "2", "--samples", "3", "--precision", "30"], capsys)
    table = rows(out)
    assert table[0] == ["x", "v", "nu1", "nu2", "nu3"]
    assert table[2][2:] == ["", "", ""]


def test_potentials(capsys):
    code, out, _ = run(["potentials", "--chat", "6", "--n", "5", "--samples", "4", "--density-samples", "32",
                        "--precision", "30", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["columns"][:4] == ["x", "U1", "U2", "U3"]
    assert len(doc["ell"]) == 3
    assert len(doc["rows"]) == 4


def test_check_suite_json(capsys):
    code, out, _ = run(["check", "--suite", "table1", "--format", "json"], capsys)
    doc = json.loads(out)
    assert doc["rows"][0][0] == 1
    assert code == (0 if doc["passed"] else 1)


@pytest.mark.parametrize(
    "argv",
    [
        ["rule", "--n", "2"],
        ["rule", "--n", "2", "--c", "1", "--chat", "1"],
        ["rule", "--n", "0", "--c", "15"],
        ["rule", "--n", "x", "--c", "15"],
        ["zeros", "--n", "2", "--c", "15", "--precision", "12"],
        ["density", "--chat", "-1"],
        ["check", "--suite", "nope"],
        ["frobnicate"],
    ],
)
def test_bad_flags_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_precision_from_environment(capsys, monkeypatch):
    monkeypatch.setenv(cli.PRECISION_ENV, "35")
    _, out, _ = run(["rule", "--n", "1", "--c", "15", "--format", "json"], capsys)
    assert json.loads(out)["meta"]["P"] == "35"
    _, out, _ = run(["rule", "--n", "1", "--c", "15", "--format", "json", "--precision", "45"], capsys)
    assert json.loads(out)["meta"]["P"] == "45"


def test_numeric_failure_exit_3(capsys, monkeypatch):
    def boom(*args, **kwargs):
        raise IsolationFailure("found 2 sign changes for degree 3")

    monkeypatch.setattr("multihermite.zeros.multiple_hermite_zeros", boom)
    code, out, err = run(["zeros", "--n", "1", "--c", "15"], capsys)
    assert code == 3
    assert out == ""
    assert "numeric failure" in err


def test_atomic_out_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for target in (a, b):
        assert cli.main(["rule", "--n", "3", "--c", "30", "--out", str(target)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert sorted(os.listdir(tmp_path)) == ["a.csv", "b.csv"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "multihermite", "transition", "--format", "json"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["rows"][0][0].startswith("4.1093881786")
