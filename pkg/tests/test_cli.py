import csv
import io
import json

import pytest

from gamma2sphere.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bounds_csv(capsys):
    code, out, _ = run(capsys, "bounds", "--d", "3")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    row = dict(zip(rows[0], rows[1]))
    assert float(row["lambda_lower"]) == 5.5
    assert float(row["lambda_d"]) == 6.0
    assert row["rothaus"] == "5.5555555555555554"


def test_bounds_json(capsys):
    code, out, _ = run(capsys, "bounds", "--format", "json")
    assert code == 0 and json.loads(out)["lambda_d"] == 6.0


def test_minimize(capsys):
    code, out, _ = run(capsys, "minimize", "--target", "lambda3", "--format", "json")
    res = json.loads(out)
    assert code == 0
    assert abs(res["value"] - 5.73892) <= 1e-4 and abs(res["t_star"] - 0.69214) <= 1e-3


def test_minimize_bad_target(capsys):
    code, _, err = run(capsys, "minimize", "--target", "nope")
    assert code == 2 and "error" in err


def test_unknown_command(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 2 and "invalid choice" in err


def test_ratio_quartic(capsys):
    code, out, _ = run(capsys, "ratio", "--family", "quartic", "--t", "1.0")
    rows = list(csv.reader(io.StringIO(out)))
    row = dict(zip(rows[0], rows[1]))
    assert code == 0
    assert float(row["fisher"]) == pytest.approx(32 / 15, abs=1e-12)
    # 17 significant digits
    assert len(row["fisher"].replace(".", "").lstrip("0").split("e")[0]) >= 16


def test_ratio_constant_undefined(capsys):
    code, _, err = run(capsys, "ratio", "--family", "constant")
    assert code == 1 and "undefined ratio" in err


def test_sweep_matches_closed_form(capsys):
    code, out, _ = run(capsys, "sweep", "--t-steps", "6", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 6
    assert max(r["gamma2_error"] for r in rows) <= 1e-8


def test_heatflow_csv_footer(capsys):
    code, out, _ = run(capsys, "heatflow", "--t-steps", "6")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "time,mass,entropy,fisher,gamma2"
    footer = json.loads(lines[-1][2:])
    assert footer["integrated_inequality"]["pass"] and footer["monotone"]


def test_heatflow_violation_exits_one(capsys):
    code, out, err = run(capsys, "heatflow", "--t", "0.757585", "--lambda", "5.95", "--t-steps", "3")
    assert code == 1 and out and "slack" in err


def test_search_deterministic(capsys):
    a = run(capsys, "search", "--count", "6", "--seed", "2")
    b = run(capsys, "search", "--count", "6", "--seed", "2")
    assert a == b and a[0] == 0
    assert json.loads(a[1])["count"] == 6


def test_verify(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert all(v["pass"] for v in json.loads(out).values())


def test_verify_perturbed(capsys):
    code, out, _ = run(capsys, "verify", "--perturb-tau", "1e-3", "--format", "csv")
    assert code == 1
    rows = {r[0]: r for r in csv.reader(io.StringIO(out))}
    assert rows["combination_identity"][3] == "false"


def test_config_and_override(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"d": 4, "format": "json"}))
    _, out, _ = run(capsys, "bounds", "--config", str(cfg))
    assert json.loads(out)["d"] == 4
    _, out, _ = run(capsys, "bounds", "--config", str(cfg), "--d", "5")
    assert json.loads(out)["d"] == 5


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    code, _, _ = run(capsys, "bounds", "--config", str(cfg))
    assert code == 2


def test_out_file(tmp_path, capsys):
    path = tmp_path / "o.csv"
    code, out, _ = run(capsys, "bounds", "--out", str(path))
    assert code == 0 and out == ""
    assert path.read_text().startswith("d,")
