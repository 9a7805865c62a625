"""CLI surface: parsing, output formats, determinism, exit codes."""

import json

import pytest

from quartic_hecke.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_symbol_examples(capsys):
    code, out, _ = _run(capsys, "symbol", "i", "3+2i")
    assert code == 0 and out.strip() == "-i"
    code, out, _ = _run(capsys, "symbol", "5", "1")
    assert code == 0 and out.strip() == "1"
    code, out, _ = _run(capsys, "symbol", "3+2i", "15+10i")
    assert code == 0 and out.strip() == "0"


def test_symbol_input_errors(capsys):
    code, _, err = _run(capsys, "symbol", "i", "2+1i")
    assert code == 1 and "error" in err
    code, _, err = _run(capsys, "symbol", "3 + 2i", "17")
    assert code == 1


def test_gauss_csv_schema(capsys):
    code, out, _ = _run(capsys, "gauss", "1", "3+2i")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "# schema=v1"
    assert lines[1].startswith("# config=")
    config = json.loads(lines[1].split("=", 1)[1])
    assert config["command"] == "gauss" and config["n"] == "3+2i"
    header = lines[2].split(",")
    row = lines[3].split(",")
    vals = dict(zip(header, row))
    assert abs(float(vals["abs"]) ** 2 - 13.0) < 1e-9


def test_gauss_fast_matches_direct(capsys):
    _, out1, _ = _run(capsys, "gauss", "1", "33+16i", "--method", "direct")
    _, out2, _ = _run(capsys, "gauss", "1", "33+16i", "--method", "fast")
    v1 = complex(*[float(out1.strip().splitlines()[3].split(",")[k]) for k in (2, 3)])
    v2 = complex(*[float(out2.strip().splitlines()[3].split(",")[k]) for k in (2, 3)])
    assert abs(v1 - v2) < 1e-9 * abs(v1)


def test_lvalue_json(capsys):
    code, out, _ = _run(capsys, "lvalue", "17", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == "v1"
    row = dict(zip(payload["columns"], payload["rows"][0]))
    assert row["norm"] == 289
    assert abs(row["l_re"] - 1.946331439292) < 1e-9


def test_moment_csv_float_roundtrip(tmp_path, capsys):
    out_file = tmp_path / "m.csv"
    code, _, _ = _run(capsys, "moment", "--y", "40", "--threads", "1",
                      "--out", str(out_file))
    assert code == 0
    text = out_file.read_text()
    lines = [l for l in text.splitlines() if not l.startswith("#")]
    header = lines[0].split(",")
    for line in lines[1:]:
        vals = dict(zip(header, line.split(",")))
        # 17 significant digits round-trip losslessly
        w = float(vals["weight"])
        assert format(w, ".17g") == vals["weight"]


def test_moment_byte_identical_across_threads(tmp_path, capsys):
    f1 = tmp_path / "a.csv"
    f2 = tmp_path / "b.csv"
    _run(capsys, "moment", "--y", "40", "--threads", "1", "--out", str(f1))
    _run(capsys, "moment", "--y", "40", "--threads", "2", "--out", str(f2))
    assert f1.read_bytes() == f2.read_bytes()


def test_moment_rerun_byte_identical(tmp_path, capsys):
    f1 = tmp_path / "a.csv"
    f2 = tmp_path / "b.csv"
    _run(capsys, "moment", "--y", "40", "--threads", "1", "--out", str(f1))
    _run(capsys, "moment", "--y", "40", "--threads", "1", "--out", str(f2))
    assert f1.read_bytes() == f2.read_bytes()


def test_sieve_deterministic_and_exit_codes(tmp_path, capsys):
    f1 = tmp_path / "s1.csv"
    f2 = tmp_path / "s2.csv"
    code, _, _ = _run(capsys, "sieve", "--m", "64", "--n", "64", "--trials", "4",
                      "--seed", "9", "--out", str(f1))
    assert code == 0
    code, _, _ = _run(capsys, "sieve", "--m", "64", "--n", "64", "--trials", "4",
                      "--seed", "9", "--out", str(f2))
    assert f1.read_bytes() == f2.read_bytes()
    # an absurd threshold turns PASS into exit code 2
    code, _, _ = _run(capsys, "sieve", "--m", "64", "--n", "64", "--trials", "4",
                      "--seed", "9", "--threshold", "1e-9")
    assert code == 2


def test_constant_a_output(capsys):
    code, out, _ = _run(capsys, "constant-a", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    row = dict(zip(payload["columns"], payload["rows"][0]))
    assert row["class_number"] == 32
    assert abs(row["geometric"] - 3.414213562373095) < 1e-15


def test_verify_suite_symbols(capsys):
    code, out, _ = _run(capsys, "verify", "symbols", "--bound", "300")
    assert code == 0
    assert "PASS" in out


def test_verify_suite_gauss(capsys):
    code, out, _ = _run(capsys, "verify", "gauss-algebra", "--bound", "200",
                        "--count", "20")
    assert code == 0 and "PASS" in out


def test_pv_command(capsys):
    code, out, _ = _run(capsys, "pv", "--y", "50", "--norm-bound", "40",
                        "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"]["passed"] is True
