from io import StringIO
import argparse
import json
import csv

import pytest

from CodedTN.Classes.examples import hyperedge_example_network, matmul_network, peps_grid
from CodedTN.cli import (
    SWEEP_COLUMNS,
    formula_rows,
    main,
    parse_f_range,
    parse_failures,
    parse_plan,
)
from CodedTN.utils.spec_io import write_spec


def run(*argv):
    out = StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.fixture(autouse=True)
def no_env_file(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)


@pytest.fixture
def matmul_spec(tmp_path):
    path = tmp_path / "matmul.json"
    write_spec(matmul_network([[1, 2], [3, 4]], [[5, 6], [7, 8]]), path, ["j"])
    return str(path)


@pytest.fixture
def example2_spec(tmp_path):
    net, plan = hyperedge_example_network()
    path = tmp_path / "example2.json"
    write_spec(net, path, plan.labels)
    return str(path)


def test_parse_plan():
    assert parse_plan("2:4, 2:3").pairs == ((2, 4), (2, 3))
    for bad in ("2:x", "1:3", "", "2-4"):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_plan(bad)


def test_parse_f_range_and_failures():
    assert parse_f_range("0..3") == [0, 1, 2, 3]
    assert parse_f_range("2") == [2]
    with pytest.raises(argparse.ArgumentTypeError):
        parse_f_range("3..1")
    assert parse_failures("random") == ("random", ())
    assert parse_failures("explicit:4,1") == ("explicit", (4, 1))
    with pytest.raises(argparse.ArgumentTypeError):
        parse_failures("some")


def test_formula_rows_flag_the_best():
    rows = formula_rows(parse_plan("2:4,2:3"), [3])
    best = [row for row in rows if row["best"]]
    assert [row["scheme"] for row in best] == ["2node"]
    assert best[0]["workers"] == 26
    assert best[0]["gain"] == 22
    by_name = {row["scheme"]: row["workers"] for row in rows}
    assert by_name["replicate"] == 48
    assert by_name["partial2node(2)"] == 26


def test_formulas_command():
    code, text = run("formulas", "--plan", "2:4,2:3", "--f-range", "0..3")
    assert code == 0
    lines = [line.split() for line in text.splitlines()[2:]]
    assert len(lines) == 4 * 5
    starred = [line for line in lines if line[-1] == "*"]
    assert len(starred) == 4
    assert starred[0][1] == "replicate"
    assert starred[-1][:5] == ["3", "2node", "22", "26", "22"]


def test_usage_errors():
    assert run("formulas", "--plan", "2:x")[0] == 2
    assert run()[0] == 2
    assert run("simulate")[0] == 2


def test_config_error(monkeypatch):
    monkeypatch.setenv("CODEDTN_THREADS", "zero")
    assert run("formulas", "--plan", "2:2")[0] == 2


def test_validate(tmp_path, gf):
    net = peps_grid(2, 2, field=gf)
    good = tmp_path / "good.json"
    bad = tmp_path / "bad.json"
    write_spec(net, good, ["h0_0", "h1_0"])
    write_spec(net, bad, ["h0_0", "v0_0"])
    code, text = run("validate", str(good))
    assert code == 0
    assert text.strip().endswith(": ok")
    code, text = run("validate", str(bad))
    assert code == 1
    assert "violation:" in text
    assert "invalid" in text


def test_validate_reports_spec_errors(tmp_path, capsys):
    path = tmp_path / "short.json"
    path.write_text(json.dumps({"dims": {"i": 2}, "tensors": [{"id": "A", "axes": ["i"], "data": [1, 2, 3]}]}))
    code, _ = run("validate", str(path))
    assert code == 1
    assert "tensors[0].data: shape mismatch" in capsys.readouterr().err


def test_contract(matmul_spec):
    code, text = run("contract", matmul_spec, "--check-slices")
    assert code == 0
    assert "[[19, 22], [43, 50]]" in text
    assert "slice-sum: exact match" in text


def test_contract_in_complex128(matmul_spec):
    code, text = run("contract", matmul_spec, "--check-slices", "--field", "c128")
    assert code == 0
    assert "slice-sum:" in text
    assert "MISMATCH" not in text


def test_contract_takes_the_field_from_the_environment(matmul_spec, monkeypatch):
    monkeypatch.setenv("CODEDTN_FIELD", "c128")
    code, text = run("contract", matmul_spec, "--check-slices")
    assert code == 0
    assert "(19+0j)" in text
    assert "slice-sum:" in text
    assert "MISMATCH" not in text


def test_contract_rejects_a_bad_order(matmul_spec, capsys):
    code, _ = run("contract", matmul_spec, "--order", "i")
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_simulate_auto(example2_spec, tmp_path):
    report_path = tmp_path / "report.json"
    code, text = run("simulate", example2_spec, "-f", "2", "--threads", "1", "--out", str(report_path))
    assert code == 0
    assert "auto selected replicate" in text
    assert "workers provisioned: 12 (formula ok)" in text
    assert "decode: exact match" in text
    report = json.loads(report_path.read_text())
    assert report["scheme"] == "replicate"
    assert report["subsets_checked"] == 66
    assert report["provenance"]["spec"] == example2_spec


def test_simulate_hyperedge_random(example2_spec):
    code, text = run(
        "simulate", example2_spec, "--scheme", "hyper", "-f", "1", "--failures", "random", "--seed", "3", "--threads", "1"
    )
    assert code == 0
    assert "workers provisioned: 21 (formula ok)" in text
    assert "failure subsets checked: 1" in text


def test_simulate_seed_comes_from_the_flag_then_the_environment(example2_spec, tmp_path, monkeypatch):
    monkeypatch.setenv("CODEDTN_SEED", "11")
    from_env = tmp_path / "env.json"
    from_flag = tmp_path / "flag.json"
    args = ("simulate", example2_spec, "--scheme", "hyper", "-f", "1", "--failures", "random", "--threads", "1")
    assert run(*args, "--out", str(from_env))[0] == 0
    assert run(*args, "--seed", "4", "--out", str(from_flag))[0] == 0
    assert json.loads(from_env.read_text())["seed"] == 11
    assert json.loads(from_flag.read_text())["seed"] == 4


def test_simulate_over_the_limit(example2_spec):
    code, text = run(
        "simulate", example2_spec, "--scheme", "hyper", "-f", "1", "--failures", "explicit:0,1", "--threads", "1"
    )
    assert code == 1
    assert "resilience exceeded" in text


def test_simulate_inapplicable_scheme(example2_spec, capsys):
    code, _ = run("simulate", example2_spec, "--scheme", "2node")
    assert code == 1
    assert "error:" in capsys.readouterr().err


def read_csv(text):
    return list(csv.DictReader(StringIO(text)))


def test_sweep(tmp_path):
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({"plans": ["2:2"], "f": [0, 1], "schemes": ["2node", "replicate"]}))
    code, text = run("sweep", str(config))
    assert code == 0
    rows = read_csv(text)
    assert [(row["scheme"], row["f"], row["workers"]) for row in rows] == [
        ("2node", "0", "3"),
        ("2node", "1", "4"),
        ("replicate", "0", "2"),
        ("replicate", "1", "4"),
    ]
    assert all(row["decode_verified"] == "True" for row in rows)
    assert all(row["error"] == "" for row in rows)


def test_sweep_records_failing_cells(tmp_path):
    config = tmp_path / "sweep.json"
    out = tmp_path / "sweep.csv"
    config.write_text(json.dumps({"grid": {"m": [3], "L": [2], "n": 1}, "schemes": ["2node"], "simulate": False}))
    assert run("sweep", str(config), "--out", str(out))[0] == 0
    rows = read_csv(out.read_text())
    assert len(rows) == 1
    assert rows[0]["decode_verified"] == "False"
    assert rows[0]["error"]


def test_sweep_of_an_empty_grid(tmp_path):
    config = tmp_path / "sweep.json"
    config.write_text(json.dumps({"grid": {}}))
    code, text = run("sweep", str(config))
    assert code == 0
    assert text.strip() == ",".join(SWEEP_COLUMNS)


def test_verify_alignment():
    code, text = run("verify-alignment", "--two-node-limit", "6", "--hyper-limit", "20", "--max-n", "2")
    assert code == 0
    assert text.strip().endswith("all aligned")
