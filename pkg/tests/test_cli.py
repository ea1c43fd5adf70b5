"""Command-line interface: parsing, output formats, determinism, exit codes."""

import csv
import io
import json

import pytest

from swapwitness.cli import main, parse_noise, parse_state


def run_cli(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_state_formats():
    s = parse_state("0,0.7071,-0.7071,0")
    assert s.alpha == 0 and abs(s.gamma - 0.70710678) < 1e-6
    s = parse_state("0.5+0.5i,0.5,0.5i,0")
    assert s.alpha == pytest.approx(0.5 + 0.5j, abs=1e-12)
    with pytest.raises(ValueError):
        parse_state("1,0,0")
    with pytest.raises(ValueError):
        parse_state("1,1,1,1")          # norm 2, too far from 1
    with pytest.raises(ValueError):
        parse_state("a,b,c,d")


def test_witness_one_psi_minus(capsys):
    code, out, err = run_cli(capsys, "witness-one", "--state", "0,0.7071,-0.7071,0")
    assert code == 0 and err == ""
    payload = json.loads(out)
    rec = payload["records"][0]
    assert rec["entangled"] is True
    assert rec["p1"] == pytest.approx(1.0, abs=1e-4)
    assert rec["concurrence_lower_bound"] == pytest.approx(1.0, abs=1e-4)
    assert payload["manifest"]["subcommand"] == "witness-one"


def test_witness_one_by_phases_with_noise(capsys):
    from swapwitness.photonic import solve_phases
    from swapwitness.qstate import bell_state
    phase_text = ",".join(repr(float(x)) for x in solve_phases(bell_state("psi_minus")).as_array())
    code, out, _ = run_cli(capsys, "witness-one", "--phases", phase_text,
                           "--noise-preset", "hardware750")
    assert code == 0
    rec = json.loads(out)["records"][0]
    # noisy threshold (1 + c)/2 for the preset
    assert rec["threshold"] == pytest.approx(0.50204696, abs=1e-6)
    assert rec["entangled"] is True


def test_witness_one_requires_exactly_one_input(capsys):
    code, _, err = run_cli(capsys, "witness-one")
    assert code != 0 and "error" in err
    code, _, err = run_cli(capsys, "witness-one", "--state", "1,0,0,0",
                           "--phases", ",".join(["0"] * 12))
    assert code != 0


def test_invalid_noise_is_diagnosed(capsys):
    code, _, err = run_cli(capsys, "witness-one", "--state", "1,0,0,0",
                           "--noise", "1.4,0.2,0.1")
    assert code != 0 and "error" in err


def test_noise_parsing_rules():
    class Args:
        noise = "0.48,0.52,0.1"
        noise_preset = None
    nm = parse_noise(Args)
    assert nm.t2 == pytest.approx(0.48)
    Args.noise_preset = "hardware750"
    with pytest.raises(ValueError):
        parse_noise(Args)


def test_detection_rate_subcommand(capsys):
    code, out, _ = run_cli(capsys, "detection-rate", "--trials", "200000", "--seed", "7")
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"]["fraction"] == pytest.approx(0.125, abs=0.005)


def test_bell_csv_and_json_agree(capsys, tmp_path):
    args = ("bell", "--seed", "21", "--draws", "500", "--noise-preset", "hardware750")
    code, out_json, _ = run_cli(capsys, *args, "--format", "json")
    assert code == 0
    code, out_csv, _ = run_cli(capsys, *args, "--format", "csv")
    assert code == 0
    records = json.loads(out_json)["records"]
    rows = list(csv.DictReader(io.StringIO(out_csv)))
    assert len(rows) == len(records) == 4
    for rec, row in zip(records, rows):
        for key, value in rec.items():
            if isinstance(value, float):
                assert float(row[key]) == pytest.approx(value, abs=1e-12)
            else:
                assert str(value) == row[key]


def test_golden_determinism_across_runs(capsys):
    args = ("random-states", "--states", "48", "--seed", "123",
            "--noise-preset", "hardware750", "--shots", "2000")
    _, out_a, _ = run_cli(capsys, *args)
    _, out_b, _ = run_cli(capsys, *args)
    a, b = json.loads(out_a), json.loads(out_b)
    assert json.dumps(a["records"], sort_keys=True) == json.dumps(b["records"], sort_keys=True)
    assert json.dumps(a["summary"], sort_keys=True) == json.dumps(b["summary"], sort_keys=True)


def test_out_file_written(tmp_path, capsys):
    target = tmp_path / "run.json"
    code, out, _ = run_cli(capsys, "werner", "--ps", "0,0.5,1", "--shots", "2000",
                           "--seed", "3", "--out", str(target))
    assert code == 0 and out == ""
    payload = json.loads(target.read_text())
    assert payload["summary"]["m"] == pytest.approx(0.75, abs=0.05)


def test_noise_ci_subcommand(capsys):
    code, out, _ = run_cli(capsys, "noise-ci", "--bell", "psi_plus",
                           "--noise-preset", "hardware750", "--draws", "2000",
                           "--seed", "5")
    assert code == 0
    rec = json.loads(out)["records"][0]
    assert 0.0 <= rec["ci_low"] <= rec["p1_mean"] <= rec["ci_high"] <= 0.1


def test_noise_ci_requires_one_target(capsys):
    code, _, err = run_cli(capsys, "noise-ci")
    assert code != 0 and "error" in err


def test_omega_sweep_summary(capsys):
    code, out, _ = run_cli(capsys, "omega-sweep", "--points", "9", "--exact")
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"]["rmse"] == pytest.approx(0.0, abs=1e-12)


def test_unknown_flag_exits_nonzero(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bell", "--frobnicate"])
    assert exc.value.code != 0
