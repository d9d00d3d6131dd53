import csv
import io
import json

import pytest

from partheta import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_q_zero(capsys):
    code, out, _ = run(capsys, "eval", "--q", "0", "--x", "3")
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert set(row) == {"value", "tail_bound", "terms_used", "error_bound"}
    assert float(row["value"]) == 1.0


def test_eval_digits_are_decimal_strings(capsys):
    code, out, _ = run(capsys, "eval", "--q", "-0.5", "--x", "2", "--digits", "40")
    value = json.loads(out)["rows"][0]["value"]
    assert isinstance(value, str) and value.startswith("-0.36038159953025680758175835965")


def test_format_changes_layout_not_values(capsys):
    _, js, _ = run(capsys, "eval", "--q", "-0.3", "--x", "1.5", "--digits", "30")
    _, cs, _ = run(capsys, "eval", "--q", "-0.3", "--x", "1.5", "--digits", "30", "--format", "csv")
    row = next(csv.DictReader(io.StringIO(cs)))
    assert row["value"] == json.loads(js)["rows"][0]["value"]


def test_zeros_csv_header(capsys):
    code, out, _ = run(capsys, "zeros", "--q", "-0.1", "--j-max", "4", "--digits", "30", "--format", "csv")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "label,x,multiplicity,residual,uncertainty"
    assert len(lines) == 5


def test_census_example(capsys):
    code, out, _ = run(capsys, "census", "--q", "-0.75", "--j-max", "10", "--digits", "30")
    assert code == 0 and json.loads(out)["rows"][0]["complex_pairs"] == 1


def test_verify_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--claims", "phi-bounds,sign-zones", "--digits", "30")
    reps = json.loads(out)
    assert code == 0
    assert [r["claim_id"] for r in reps] == ["phi-bounds", "sign-zones"]
    code, _, err = run(capsys, "verify", "--claims", "bogus")
    assert code == 2 and "bogus" in err


def test_spectrum_footer(capsys, tmp_path):
    out = tmp_path / "s.json"
    code, _, _ = run(capsys, "spectrum", "--k-max", "4", "--digits", "30", "--no-validate", "--out", str(out))
    doc = json.loads(out.read_text())
    assert code == 0 and len(doc["rows"]) == 4 and doc["fit"]["target_slope"].startswith("0.3926")


def test_plotdata_figure3(capsys, tmp_path):
    out = tmp_path / "f3.csv"
    code, _, _ = run(capsys, "plotdata", "--figure", "3", "--q", "-0.1", "--j-max", "6", "--digits", "30",
                     "--format", "csv", "--out", str(out))
    rows = list(csv.DictReader(out.open()))
    assert code == 0 and [r["label"] for r in rows] == [str(i) for i in range(1, 7)]


def test_plotdata_figure1_has_1000_rows(tmp_path):
    out = tmp_path / "f1.csv"
    assert cli.main(["plotdata", "--figure", "1", "--digits", "20", "--format", "csv", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 1000 and set(rows[0]) == {"x", "theta_k1", "theta_k2", "theta_k3", "theta_k4", "limit"}


@pytest.mark.parametrize("argv", [["eval", "--q", "1", "--x", "0"], ["eval", "--q", "0", "--x", "1", "--digits", "10"],
                                  ["zeros", "--q", "-0.5", "--j-max", "0"], ["frobnicate"]])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code != 0


def test_env_default_digits(monkeypatch, capsys):
    monkeypatch.setenv("THETA_DIGITS", "20")
    code, out, _ = run(capsys, "eval", "--q", "-0.5", "--x", "2")
    assert json.loads(out)["digits"] == 20
