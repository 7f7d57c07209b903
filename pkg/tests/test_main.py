import os
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.append(str(ROOT / "src"))

os.environ.setdefault("OTEL_SDK_DISABLED", "true")

from main import run  # noqa: E402
from records import RunRecord, read_records  # noqa: E402


def _run(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bound_values(capsys):
    assert _run(capsys, "bound", "eq4", "--nt", "2", "--ne", "1")[:2] == (0, "0.75\n")
    assert _run(capsys, "bound", "eq5", "--k", "1")[:2] == (0, "0.632120558829\n")
    assert _run(capsys, "bound", "sec3c", "--lambda-e", "0")[:2] == (0, "1\n")
    assert _run(capsys, "bound", "eq3", "--ne", "1")[:2] == (0, "0.5\n")
    assert _run(capsys, "bound", "eq6", "--lambda-t", "0", "--ne", "3")[:2] == (0, "0\n")


def test_bound_missing_parameter_is_a_usage_error(capsys):
    code, out, err = _run(capsys, "bound", "eq4", "--nt", "2")
    assert code == 2
    assert out == ""
    assert "--ne" in err


def test_bound_out_of_range_parameter_is_a_usage_error(capsys):
    code, _, err = _run(capsys, "bound", "eq4", "--nt", "0", "--ne", "1")
    assert code == 2
    assert err.startswith("usage error")


def test_unknown_figure_is_rejected(capsys):
    code, out, _ = _run(capsys, "figure", "--id", "1", "--trials", "10")
    assert code == 2
    assert out == ""


def test_malformed_process_spec_names_the_token(capsys):
    code, out, err = _run(capsys, "sim", "--tx", "iud:x", "--eve", "iud:1", "--trials", "10")
    assert code == 2
    assert out == ""
    assert "iud:x" in err
    code, _, err = _run(capsys, "sim", "--tx", "ring:3", "--eve", "iud:1", "--trials", "10")
    assert code == 2
    assert "ring" in err


def test_channel_validation_is_a_usage_error(capsys):
    code, _, err = _run(capsys, "sim", "--tx", "iud:1", "--eve", "iud:1", "--trials", "10", "--beta", "1.5")
    assert code == 2
    assert "beta" in err


def test_sim_emits_one_record_with_bounds(capsys):
    code, out, _ = _run(capsys, "sim", "--tx", "iud:1", "--eve", "iud:1", "--trials", "500", "--seed", "3")
    assert code == 0
    assert out.splitlines()[0] == ",".join(RunRecord.columns())
    (record,) = read_records(out)
    assert record.tx_process == "iud"
    assert record.strategy == "coop-tx"
    assert record.trials == 500
    assert record.seed == 3
    assert record.bound == 0.5
    assert record.bound_kind == "exact"
    assert record.bound_asymptotic == 0.632120558829
    assert 0.0 <= record.p_hat <= 1.0


def test_lattice_scenarios_carry_no_bound(capsys):
    code, out, _ = _run(capsys, "sim", "--tx", "hex:4", "--eve", "iud:5", "--trials", "100")
    assert code == 0
    (record,) = read_records(out)
    assert record.bound is None
    assert record.bound_kind == ""
    assert out.splitlines()[1].endswith(",,,")


def test_sim_is_reproducible_across_thread_counts(capsys):
    argv = ["sim", "--tx", "poisson:5", "--eve", "iud:3", "--strategy", "best-relay", "--trials", "400", "--seed", "77"]
    _, single, _ = _run(capsys, *argv, "--threads", "1")
    _, many, _ = _run(capsys, *argv, "--threads", "4")
    assert single == many


def test_sweep_rows_and_unknown_axis(capsys):
    code, out, _ = _run(capsys, "sweep", "--tx", "iud:1", "--eve", "iud:2", "--axis", "n_T", "--values", "1,2,4", "--trials", "200")
    assert code == 0
    records = read_records(out)
    assert [r.tx_param for r in records] == [1.0, 2.0, 4.0]
    assert [r.p_hat for r in records] == sorted(r.p_hat for r in records)

    code, out, err = _run(capsys, "sweep", "--tx", "iud:1", "--eve", "iud:2", "--axis", "gamma", "--values", "1", "--trials", "10")
    assert code == 2
    assert out == ""
    assert "n_E" in err


def test_figure_4_grid(capsys):
    code, out, _ = _run(capsys, "figure", "--id", "4", "--trials", "50")
    assert code == 0
    records = read_records(out)
    assert len(records) == 10
    assert {r.tx_param for r in records} == {10.0}
    assert [r.eve_param for r in records] == [float(n) for n in range(1, 11)]
    assert all(r.bound_kind == "upper-bound" for r in records)
    assert all(r.bound_asymptotic is not None for r in records)


def test_figure_2_is_identical_for_any_thread_count(capsys):
    _, single, _ = _run(capsys, "figure", "--id", "2", "--trials", "20", "--seed", "5", "--threads", "1")
    _, many, _ = _run(capsys, "figure", "--id", "2", "--trials", "20", "--seed", "5", "--threads", "8")
    assert single == many
    assert len(read_records(single)) == 100


def test_figure_7_combinations(capsys):
    code, out, _ = _run(capsys, "figure", "--id", "7", "--trials", "10")
    assert code == 0
    records = read_records(out)
    combos = {(r.tx_process, r.eve_process, r.strategy) for r in records}
    assert ("hex", "iud", "coop-tx") in combos
    assert ("square", "iud", "coop-tx") in combos
    assert ("poisson", "poisson", "coop-tx") in combos
    assert ("iud", "iud", "best-relay") in combos
    assert ("iud", "iud", "best-jammer") in combos
    assert ("iud", "iud", "direct") in combos
    assert len(records) == 10 * len(combos)


def test_out_flag_writes_the_file(capsys, tmp_path):
    target = tmp_path / "run.csv"
    code, out, _ = _run(capsys, "sim", "--tx", "iud:2", "--eve", "iud:2", "--trials", "100", "--out", str(target))
    assert code == 0
    assert out == ""
    (record,) = read_records(target.read_text(encoding="utf-8"))
    assert record.bound == 0.75


def test_keyx_demo_prints_a_transcript(capsys):
    code, out, _ = _run(capsys, "keyx-demo", "--seed", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("receiver")
    assert sum(line.startswith("transmitter") for line in lines) == 4
    assert sum(line.startswith("eavesdropper") for line in lines) == 3
    assert lines[-1] in {"verdict       secure", "verdict       compromised"}
    assert _run(capsys, "keyx-demo", "--seed", "4")[1] == out


def test_keyx_demo_rejects_a_short_presecret(capsys):
    code, _, err = _run(capsys, "keyx-demo", "--tx", "iud:8", "--length", "4")
    assert code == 2
    assert "--length" in err


def test_exit_codes_from_a_subprocess():
    env = {**os.environ, "OTEL_SDK_DISABLED": "true"}
    ok = subprocess.run(
        [sys.executable, str(ROOT / "src" / "main.py"), "bound", "eq4", "--nt", "2", "--ne", "1"],
        capture_output=True, text=True, env=env, check=False,
    )
    assert ok.returncode == 0
    assert ok.stdout == "0.75\n"
    bad = subprocess.run(
        [sys.executable, str(ROOT / "src" / "main.py"), "sim", "--tx", "iud:1"],
        capture_output=True, text=True, env=env, check=False,
    )
    assert bad.returncode == 2
