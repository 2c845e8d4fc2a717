import json
import math

import pytest

from powexp import __version__
from powexp.__main__ import run


def run_json(capsys, argv):
    if isinstance(argv, str):
        argv = argv.split()
    code = run(argv)
    return code, json.loads(capsys.readouterr().out)


def test_integrate(capsys):
    code, record = run_json(
        capsys, "integrate --n 2 --sign neg --from 0 --to inf --format json"
    )
    assert code == 0
    assert record["command"] == "integrate"
    assert record["outputs"]["value"] == pytest.approx(0.8862269, abs=1e-7)
    assert record["inputs"] == {"n": 2, "sign": "neg", "from": 0.0, "to": "inf"}
    assert record["diagnostics"]["converged"] is True

    for argv in ("integrate --n 2 --from -inf --to inf", "integrate --n 2 --from=-inf --to inf"):
        code, record = run_json(capsys, argv)
        assert code == 0
        assert record["inputs"]["from"] == "-inf"
        assert record["outputs"]["value"] == pytest.approx(math.sqrt(math.pi), abs=1e-12)

    # Negative finite endpoints pass through untouched
    code, record = run_json(capsys, "integrate --n 2 --from -1 --to 1")
    assert record["inputs"]["from"] == -1.0


def test_integrate_oracle(capsys):
    code, record = run_json(
        capsys, "integrate --n 3 --sign pos --from -1 --to 0.5 --oracle"
    )
    assert code == 0
    value = record["outputs"]["value"]
    assert record["diagnostics"]["oracle_value"] == pytest.approx(value, abs=1e-9)
    assert record["diagnostics"]["est_error"] <= 1e-10

    assert run(["integrate", "--n", "2", "--from", "0", "--to", "inf", "--oracle"]) == 3


def test_inputs_echoed_exactly(capsys):
    code, record = run_json(capsys, ["antideriv", "--n", "4", "--sign", "pos", "--x", "0.1"])
    assert code == 0
    assert record["inputs"]["x"] == 0.1
    assert record["inputs"]["method"] == "bracket"

    code, maclaurin = run_json(
        capsys, ["antideriv", "--n", "4", "--sign", "pos", "--x", "0.1", "--method", "maclaurin"]
    )
    assert maclaurin["outputs"]["value"] == pytest.approx(record["outputs"]["value"], rel=1e-13)


def test_distribution_commands(capsys):
    code, record = run_json(capsys, ["pdf", "--n", "4", "--x", "0"])
    assert code == 0
    assert record["outputs"]["density"] == pytest.approx(0.3900817, abs=1e-7)

    code, record = run_json(capsys, ["cdf", "--n", "2", "--x", "1"])
    assert code == 0
    assert record["outputs"]["probability"] == pytest.approx(0.8413447, abs=1e-7)

    code, record = run_json(capsys, "moments --n 6 --order 18 --method recurrence")
    assert code == 0
    assert record["outputs"]["moment"] == 91.0

    code, record = run_json(capsys, ["mvpdf", "--orders", "2,2", "--z", "0,0"])
    assert code == 0
    assert record["outputs"]["density"] == pytest.approx(1 / (2 * math.pi), rel=1e-15)


def test_shape(capsys, data_file):
    code, record = run_json(capsys, ["shape", "--n", "4", "--moments", "m4=1,m5=0,m8=5"])
    assert code == 0
    assert record["outputs"]["kurtosis"] == 5.0
    assert record["outputs"]["kurtosis_excess"] == 0.0
    assert record["outputs"]["skew"] == 0.0
    assert record["inputs"]["moments"] == {"m4": 1.0, "m5": 0.0, "m8": 5.0}

    code, record = run_json(capsys, ["shape", "--n", "2", "--data", str(data_file("-1 1\n"))])
    assert code == 0
    assert record["outputs"]["kurtosis"] == 1.0
    assert record["outputs"]["kurtosis_excess"] == -2.0


def test_ode_check(capsys):
    code, record = run_json(capsys, ["ode-check", "--n", "2", "--eq", "13", "--tol", "1e-14"])
    assert code == 0
    assert record["outputs"]["particular"] == "f"
    assert record["outputs"]["max_abs_residual"] <= 1e-8
    assert record["diagnostics"]["matches_stated_pairing"] is False

    code, record = run_json(
        capsys, "ode-check --n 3 --eq 14 --series g --k1 1 --k2 2 --points 5"
    )
    assert code == 0
    assert record["outputs"]["max_abs_residual"] <= 1e-8
    assert "matches_stated_pairing" not in record["diagnostics"]


def test_stirling(capsys):
    code, record = run_json(capsys, ["stirling", "--n", "5"])
    assert code == 0
    assert record["outputs"]["rel_err50"] == pytest.approx(-0.0083, abs=0.0002)
    assert record["outputs"]["ratio_49_over_50"] == pytest.approx(math.sqrt(10), rel=1e-12)
    assert record["outputs"]["wallis_raw"] == pytest.approx(14745600 / 893025, rel=1e-12)


def test_figures(tmp_path, capsys):
    out = tmp_path / "fig2.csv"
    assert run(["figures", "--which", "2", "--n", "100", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""

    lines = out.read_text().splitlines()
    assert lines[0] == "x,y_finite,y_limit"
    corner = "{0},{0}".format(format(math.exp(-1.0), ".17g"))
    assert "-1,{}".format(corner) in lines
    assert "1,{}".format(corner) in lines

    # Byte identical reruns
    again = tmp_path / "again.csv"
    assert run(["figures", "--which", "2", "--n", "100", "--out", str(again)]) == 0
    assert again.read_bytes() == out.read_bytes()

    # Without --out or --format the record is JSON like every other command
    code, record = run_json(capsys, ["figures", "--which", "2", "--n", "4"])
    assert code == 0
    assert record["outputs"]["columns"] == ["x", "y_finite", "y_limit"]

    code, record = run_json(capsys, ["figures", "--which", "3", "--format", "json"])
    assert code == 0
    assert record["outputs"]["columns"] == ["n", "z_abs", "ordinate"]
    assert len(record["outputs"]["rows"]) == 20


def test_csv_format(capsys):
    assert run(["pdf", "--n", "2", "--x", "0", "--format", "csv"]) == 0
    header, row = capsys.readouterr().out.splitlines()
    assert header == "command,inputs.n,inputs.m,inputs.sigma,inputs.x,outputs.density"
    assert row.startswith("pdf,2,0,1,0,0.398942280401432")


def test_config_file(tmp_path, capsys):
    path = tmp_path / "powexp.yml"
    path.write_text("format: csv\nfigure_n: 50\n")

    assert run(["-f", str(path), "stirling", "--n", "2"]) == 0
    assert capsys.readouterr().out.startswith("command,inputs.n,")

    # Flags beat the file
    assert run(["-f", str(path), "stirling", "--n", "2", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["command"] == "stirling"

    code, record = run_json(
        capsys, ["-f", str(path), "figures", "--which", "2", "--format", "json"]
    )
    assert record["inputs"]["n"] == 50


def test_usage_errors(capsys, caplog, tmp_path):
    assert run(["integrate", "--n", "2"]) == 2
    assert run(["figures", "--which", "5"]) == 2
    assert run(["shape", "--n", "4", "--moments", "m4=1", "--data", "x.txt"]) == 2
    assert run(["shape", "--n", "4", "--moments", "k4=1"]) == 2
    assert run([]) == 2

    bad = tmp_path / "bad.yml"
    bad.write_text("colour: blue\n")
    assert run(["-f", str(bad), "stirling", "--n", "2"]) == 2
    assert "config-error" in caplog.text


def test_domain_errors(caplog):
    assert run(["pdf", "--n", "3", "--x", "0"]) == 3
    assert "domain-error: n must be an even integer" in caplog.text

    caplog.clear()
    assert run(["integrate", "--n", "2", "--sign", "pos", "--from", "0", "--to", "inf"]) == 3
    assert len(caplog.records) == 1
    assert caplog.records[0].getMessage().startswith("divergent-integral: ")
    assert "-inf < x and x < inf" in caplog.text

    caplog.clear()
    assert run(["shape", "--n", "4", "--moments", "m4=1,m8=3"]) == 3
    assert "missing-moment: moment of order 5 is required" in caplog.text

    caplog.clear()
    assert run(["antideriv", "--n", "4", "--sign", "pos", "--x", "3"]) == 3
    assert caplog.records[0].getMessage().startswith("overflow: ")


def test_data_errors(caplog, data_file, tmp_path):
    missing = tmp_path / "missing.txt"
    assert run(["shape", "--n", "2", "--data", str(missing)]) == 3
    assert caplog.records[-1].getMessage().startswith("data-error: could not read ")

    caplog.clear()
    assert run(["shape", "--n", "2", "--data", str(data_file("1 2 abc\n"))]) == 3
    assert len(caplog.records) == 1
    assert caplog.records[0].getMessage().endswith(":1: not a number: abc")


def test_not_converged(capsys, caplog):
    code, record = run_json(capsys, ["antideriv", "--n", "2", "--x", "1", "--max-terms", "2"])
    assert code == 4
    assert record["diagnostics"]["converged"] is False
    assert record["diagnostics"]["terms_used"] == 2
    assert "not-converged" in caplog.text


def test_version(capsys):
    assert run(["--version"]) == 0
    assert "powexp {}".format(__version__) in capsys.readouterr().out
