import csv
import io
import json
import math
import subprocess
import sys

import pytest

from gauss_periodize import aliasing_bound
from gauss_periodize.cli import CliConfig, main, parse_config, run
from gauss_periodize.errors import InvalidParameterError


def invoke(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_coeffs_csv(capsys):
    code, out, err = invoke(["coeffs", "--tau-m", "12", "--n-max", "4", "--format", "csv"], capsys)
    assert code == 0 and err == ""
    table = rows(out)
    assert table[0] == ["n", "a_n"]
    assert len(table) == 6
    assert table[1][0] == "0"
    assert float(table[1][1]) == 2.0 * math.sqrt(math.pi) / 12.0


def test_select_order_unsatisfiable(capsys):
    code, out, err = invoke(["select-order", "--tau-m", "12", "--epsilon", "1e-20"], capsys)
    assert code == 3 and out == ""
    assert err.count("\n") == 1
    msg = json.loads(err)
    assert msg["error"] == "unsatisfiable"
    assert msg["aliasing_floor"] == aliasing_bound(12.0)
    assert "aliasing floor" in msg["message"]


def test_select_order_ok(capsys):
    code, out, _ = invoke(["select-order", "--tau-m", "12", "--epsilon", "1e-15"], capsys)
    assert code == 0
    header, row = rows(out)
    assert header == ["tau_m", "epsilon", "n_max", "aliasing", "truncation", "total"]
    assert row[2] == "22"


def test_eval_single_term(capsys):
    code, out, _ = invoke(["eval", "--tau-m", "12", "--n-max", "0", "--t", "0"], capsys)
    assert code == 0
    header, row = rows(out)
    assert header == ["t", "series", "exact", "abs_error", "in_domain"]
    assert float(row[1]) == math.sqrt(math.pi) / 12.0
    assert row[4] == "true"


def test_eval_flags_periodic_extension(capsys):
    _, out, _ = invoke(["eval", "--tau-m", "12", "--n-max", "20", "--t", "30"], capsys)
    assert rows(out)[1][4] == "false"


def test_scan_schema(capsys):
    code, out, _ = invoke(["scan", "--tau-m", "12", "--epsilon", "1e-15", "--grid-points", "11"], capsys)
    assert code == 0
    table = rows(out)
    assert table[0] == ["t", "series", "exact", "abs_error"]
    assert len(table) == 12
    assert float(table[1][0]) == -12.0 and float(table[-1][0]) == 12.0


def test_budget_schema(capsys):
    _, out, _ = invoke(["budget", "--tau-m", "12", "--n-max", "22"], capsys)
    header, row = rows(out)
    assert header == ["tau_m", "n_max", "aliasing", "truncation", "total"]
    assert float(row[4]) == float(row[2]) + float(row[3])


def test_equivalence_schema(capsys):
    code, out, _ = invoke(["equivalence", "--tau-m", "12", "--n-max", "24"], capsys)
    assert code == 0
    table = rows(out)
    assert table[0] == ["n", "poisson", "fourier", "abs_diff"]
    assert len(table) == 26
    assert max(float(r[3]) for r in table[1:]) <= 1e-12


def test_equivalence_not_converged(capsys):
    code, out, err = invoke(["equivalence", "--tau-m", "24", "--n-max", "3",
                             "--initial-panels", "8", "--max-doublings", "1"], capsys)
    assert code == 4 and out == ""
    assert json.loads(err)["error"] == "not_converged"


def test_chain_check(capsys):
    code, out, _ = invoke(["chain-check", "--tau-m", "12", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["rows"][0]["holds"] is True
    assert doc["rows"][0]["grid_points"] == 1001
    assert len(doc["summary"]["log_ratios"]) == 4


@pytest.mark.parametrize("argv", [
    ["eval", "--tau-m", "12", "--n-max", "3"],
    ["select-order", "--tau-m", "12"],
    ["scan", "--tau-m", "12"],
    ["coeffs", "--tau-m", "-1", "--n-max", "3"],
    ["coeffs", "--tau-m", "12", "--n-max", "500"],
    ["coeffs", "--tau-m", "abc", "--n-max", "3"],
    ["nonsense"],
    [],
    ["scan", "--tau-m", "12", "--n-max", "3", "--grid-points", "1"],
])
def test_validation_errors(argv, capsys):
    code, out, err = invoke(argv, capsys)
    assert code == 2 and out == ""
    assert err.count("\n") == 1
    assert json.loads(err)["error"] == "invalid"


def test_bad_thread_env(capsys, monkeypatch):
    monkeypatch.setenv("GAUSS_PERIODIZE_THREADS", "zero")
    code, _, err = invoke(["scan", "--tau-m", "12", "--n-max", "5"], capsys)
    assert code == 2 and json.loads(err)["error"] == "invalid"


def test_output_path(tmp_path, capsys):
    target = tmp_path / "c.csv"
    code, out, _ = invoke(["coeffs", "--tau-m", "12", "--n-max", "2", "--output", str(target)], capsys)
    assert code == 0 and out == ""
    assert target.read_text().startswith("n,a_n\n0,")


def test_csv_round_trips_bitwise(capsys):
    from gauss_periodize import SeriesParams, poisson_coefficients
    _, out, _ = invoke(["coeffs", "--tau-m", "7.3", "--n-max", "40"], capsys)
    want = poisson_coefficients(SeriesParams(7.3, 40)).coeffs
    got = [float(r[1]) for r in rows(out)[1:]]
    assert got == list(want)
    assert all(len(r[1].replace("-", "").replace(".", "").split("e")[0].lstrip("0")) <= 17
               for r in rows(out)[1:])


@pytest.mark.parametrize("argv", [
    ["coeffs", "--tau-m", "12", "--n-max", "10"],
    ["scan", "--tau-m", "12", "--n-max", "22", "--grid-points", "101"],
    ["equivalence", "--tau-m", "6", "--n-max", "12"],
    ["budget", "--tau-m", "16", "--epsilon", "1e-12"],
    ["select-order", "--tau-m", "12", "--epsilon", "1e-12"],
    ["chain-check", "--tau-m", "12", "--grid-points", "51"],
    ["eval", "--tau-m", "12", "--n-max", "22", "--t", "1.75"],
])
def test_json_and_csv_agree(argv, capsys):
    _, out_csv, _ = invoke(argv + ["--format", "csv"], capsys)
    _, out_json, _ = invoke(argv + ["--format", "json"], capsys)
    doc = json.loads(out_json)
    table = rows(out_csv)
    assert doc["columns"] == table[0]

    def norm(v):
        if isinstance(v, bool):
            return "true" if v else "false"
        return "" if v is None else repr(v) if isinstance(v, float) else str(v)

    assert [[norm(r[c]) for c in doc["columns"]] for r in doc["rows"]] == table[1:]


def test_config_validation():
    with pytest.raises(InvalidParameterError):
        CliConfig(command="eval", tau_m=12.0, n_max=3)
    with pytest.raises(InvalidParameterError):
        CliConfig(command="coeffs", tau_m=12.0, n_max=3, output_format="xml")
    cfg = parse_config(["scan", "--tau-m", "12", "--n-max", "3"])
    assert cfg.grid_points is None and cfg.output_format == "csv"


def test_run_writes_to_given_streams():
    out, err = io.StringIO(), io.StringIO()
    assert run(CliConfig(command="budget", tau_m=12.0, n_max=3), out, err) == 0
    assert out.getvalue().startswith("tau_m,n_max,") and err.getvalue() == ""


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gauss_periodize", "coeffs", "--tau-m", "12",
                           "--n-max", "1"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "n,a_n"
