import json

import pytest

from dronecell.cli import main
from dronecell.results import CSV_COLUMNS


def test_eval_prints_coverage_and_diagnostics(capsys):
    code = main(["eval", "--config", "configs/default.cfg", "--engines",
                 "analytic,mc_powerlaw", "--runs", "20000"])
    out = capsys.readouterr().out
    assert code == 0
    assert "AlwaysInversion" in out
    assert "analytic" in out and "mc_powerlaw" in out
    assert "seed: 0" in out


def test_eval_override_reports_always_max(capsys):
    code = main(["eval", "--set", "h=700", "--runs", "1000", "--engines", "analytic"])
    out = capsys.readouterr().out
    assert code == 0
    assert "AlwaysMax" in out


def test_missing_config_exits_2(capsys):
    code = main(["eval", "--config", "does-not-exist.cfg"])
    err = capsys.readouterr().err
    assert code == 2
    assert "does-not-exist.cfg" in err


def test_invalid_override_exits_2(capsys):
    code = main(["eval", "--set", "d=450"])
    assert code == 2
    assert "r1" in capsys.readouterr().err


def test_sweep_row_count_csv(tmp_path, capsys):
    out_path = tmp_path / "sweep.csv"
    code = main([
        "sweep", "--axis", "h", "--from", "100", "--to", "600", "--points", "5",
        "--engines", "analytic", "--out", str(out_path),
    ])
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 1 + 5 * 2  # header + points x stations x 1 engine


def test_sweep_seed_determinism_bytes(tmp_path):
    args = [
        "sweep", "--axis", "gamma_t", "--from", "-5", "--to", "5", "--points", "3",
        "--engines", "mc_powerlaw", "--runs", "20000", "--seed", "42",
    ]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_json_schema(tmp_path):
    out_path = tmp_path / "sweep.json"
    code = main([
        "sweep", "--axis", "h", "--from", "200", "--to", "400", "--points", "2",
        "--engines", "analytic", "--format", "json", "--out", str(out_path),
    ])
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert payload["meta"]["config"]["r1"] == 500.0
    assert payload["meta"]["seed"] == 0
    assert payload["meta"]["version"]
    assert len(payload["rows"]) == 4
    assert {row["station"] for row in payload["rows"]} == {"T", "A"}


def test_opt_height_command(tmp_path, capsys):
    out_path = tmp_path / "opt.csv"
    code = main([
        "opt-height", "--h-from", "50", "--h-to", "400", "--out", str(out_path),
    ])
    out = capsys.readouterr().out
    assert code == 0
    assert "h_star" in out
    lines = out_path.read_text().strip().splitlines()
    assert len(lines) == 2
    assert "boundary-maximum" in lines[1]  # coverage still rising at 400 m


def test_feasibility_command_headline(tmp_path):
    out_path = tmp_path / "feas.csv"
    code = main([
        "feasibility", "--d-from", "300", "--d-to", "300", "--points", "1",
        "--floor", "0.90", "--out", str(out_path),
    ])
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    row = dict(zip(CSV_COLUMNS.__iter__(), lines[1].split(",")))
    assert row["axis_name"] == "d"
    assert float(row["h_star"]) == pytest.approx(342.0, abs=30.0)
    assert float(row["tbs_floor"]) == 0.9
    assert row["constrained"] == "true"


def test_stdout_output_default(capsys):
    code = main(["sweep", "--axis", "h", "--from", "200", "--to", "300",
                 "--points", "2", "--engines", "analytic"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith(",".join(CSV_COLUMNS))


def test_workers_env_override(monkeypatch, capsys):
    """Worker count comes from DRONECELL_WORKERS and leaves results unchanged."""
    baseline = main(["eval", "--engines", "mc_powerlaw", "--runs", "40000"])
    out_one = capsys.readouterr().out
    monkeypatch.setenv("DRONECELL_WORKERS", "4")
    assert main(["eval", "--engines", "mc_powerlaw", "--runs", "40000"]) == baseline == 0
    out_four = capsys.readouterr().out
    assert out_four == out_one
