import json

import numpy as np
import pytest

from nlscanon.commands import main
from nlscanon.utils import tc
from nlscanon.utils.errors import ConfigError
from nlscanon.utils.options import join_signed_values, toml_load


def _error(capsys) -> dict:
    lines = [line for line in capsys.readouterr().err.splitlines() if line.startswith("{")]
    return json.loads(lines[-1])


def _csv(path) -> tuple[list[str], np.ndarray]:
    lines = path.read_text(encoding="utf-8").splitlines()
    return lines[0].split(","), np.loadtxt(lines[1:], delimiter=",", ndmin=2)


# demo


def test_demo_plasma(tmp_path):
    report = tmp_path / "demo.json"
    assert main(["demo", "--example", "plasma", "--k", "0.5", "--report", str(report)]) == 0
    payload = json.loads(report.read_text(encoding="utf-8"))
    assert payload["passed"]
    assert payload["residual"]["sup_norm"] <= 1e-6
    assert [c["name"] for c in payload["checks"]] == ["pde_residual", "round_trip", "coupling_forms"]
    round_trip = payload["checks"][1]
    assert round_trip["tol"] == 1e-12
    assert round_trip["value"] <= 1e-12


def test_demo_table_is_coloured(tmp_path):
    log = tmp_path / "demo.log"
    assert main(["demo", "--example", "plasma", "--report", str(tmp_path / "demo.json"), "--log-file", str(log)]) == 0
    text = log.read_text(encoding="utf-8")
    assert f"{tc.light_green}PASS{tc.end}" in text
    assert tc.red not in text


def test_demo_fails_on_tight_tolerance(tmp_path):
    report = tmp_path / "demo.json"
    assert main(["demo", "--example", "plasma", "--tol", "1e-30", "--report", str(report)]) == 1
    assert not json.loads(report.read_text(encoding="utf-8"))["passed"]


# field output


def test_solution_csv_shape(tmp_path):
    out = tmp_path / "psi.csv"
    assert main(["solution", "--family", "one_soliton", "--grid", "-10:10:401,0:1:11", "--out", str(out)]) == 0
    header, rows = _csv(out)
    assert header == ["x", "t", "re", "im"]
    assert rows.shape == (401 * 11, 4)
    # time is the slow index
    assert rows[0, 1] == 0.0
    assert rows[401, 1] == pytest.approx(0.1)
    assert np.max(np.abs(np.hypot(rows[:, 2], rows[:, 3]) - 1 / np.cosh(rows[:, 0]))) <= 1e-14


def test_output_is_deterministic(tmp_path):
    argv = ["solution", "--family", "two_soliton", "--grid", "-5:5:64,0:1:8"]
    assert main([*argv, "--out", str(tmp_path / "a.csv")]) == 0
    assert main([*argv, "--out", str(tmp_path / "b.csv"), "--threads", "3"]) == 0
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_solution_report(tmp_path):
    report = tmp_path / "res.json"
    argv = ["solution", "--family", "bright", "--param", "y=0.5", "--out", str(tmp_path / "f.csv"), "--report", str(report)]
    assert main(argv) == 0
    payload = json.loads(report.read_text(encoding="utf-8"))
    assert payload["method"] == "analytic_derivatives"
    assert payload["sup_norm"] <= 1e-10
    assert payload["solution"]["y"] == 0.5


def test_lift_with_report(tmp_path):
    out, report = tmp_path / "lift.csv", tmp_path / "lift.json"
    argv = ["lift", "--preset", "plasma", "--k", "0.5", "--solution", "bright", "--param", "y=0.4"]
    argv += ["--grid", "-10:10:201,0:1:13", "--out", str(out), "--report", str(report)]
    assert main(argv) == 0
    _, rows = _csv(out)
    assert rows.shape == (201 * 13, 4)
    assert json.loads(report.read_text(encoding="utf-8"))["sup_norm"] <= 1e-6


def test_glm_two_soliton(tmp_path):
    out = tmp_path / "glm.csv"
    argv = ["glm", "--eigenvalues", "0.5i,1.5i", "--norming", "-2i,-6i", "--grid", "-8:8:81,0:1:8", "--out", str(out)]
    assert main(argv) == 0
    _, rows = _csv(out)
    first = rows[:81]
    assert np.max(np.abs(first[:, 2] - 2 / np.cosh(first[:, 0]))) <= 1e-8
    assert np.max(np.abs(first[:, 3])) <= 1e-8


def test_glm_default_norming_report(tmp_path):
    report = tmp_path / "glm.json"
    argv = ["glm", "--eigenvalues", "0.5i", "--out", str(tmp_path / "g.csv"), "--report", str(report)]
    assert main(argv) == 0
    payload = json.loads(report.read_text(encoding="utf-8"))
    assert payload["norming"] == [{"re": 0.0, "im": -1.0}]
    assert payload["sup_norm"] <= 1e-6


def test_glm_far_field(tmp_path):
    out = tmp_path / "far.csv"
    assert main(["glm", "--eigenvalues", "1.5i", "--grid", "-300:0:31,0:1:8", "--out", str(out)]) == 0
    _, rows = _csv(out)
    assert np.all(np.isfinite(rows))
    assert np.max(np.hypot(rows[::31, 2], rows[::31, 3])) <= 1e-12


def test_glm_mismatched_data(capsys):
    assert main(["glm", "--eigenvalues", "0.5i,1.5i", "--norming", "-1i"]) == 2
    assert _error(capsys)["error"] == "ConfigError"


# JSON reports


def test_riccati_harmonic(capsys):
    assert main(["riccati", "--preset", "harmonic", "--omega", "1", "--t", "0.5"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["alpha"] == pytest.approx(-0.25 * np.tan(0.5), abs=1e-10)
    assert payload["mu"] == pytest.approx(np.cos(0.5), abs=1e-10)
    assert max(payload["residuals"].values()) <= 1e-7


def test_riccati_with_negative_init(capsys):
    argv = ["riccati", "--preset", "plasma", "--t", "0.5", "--init", "-1.3,0.2,0.8,0.1,0.3,-0.2,0.05"]
    assert main(argv) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["method"] == "closed_form"
    assert max(payload["residuals"].values()) <= 1e-7


def test_chareq_csv(tmp_path):
    out = tmp_path / "chareq.csv"
    assert main(["chareq", "--preset", "harmonic", "--t-end", "1", "--samples", "21", "--out", str(out)]) == 0
    header, rows = _csv(out)
    assert header == ["t", "mu0", "mu0'", "mu1", "mu1'"]
    t = rows[:, 0]
    assert np.max(np.abs(rows[:, 1] - 2 * np.sin(t))) <= 1e-9
    assert np.max(np.abs(rows[:, 3] - np.cos(t))) <= 1e-9


def test_greens_compare(capsys):
    assert main(["greens", "--preset", "plasma", "--compare", "--samples", "50"]) == 0
    assert json.loads(capsys.readouterr().out)["sup_norm"] <= 1e-8


def test_greens_column_needs_positive_time(capsys):
    assert main(["greens", "--grid", "-4:4:81,0:1:9"]) == 2
    assert _error(capsys)["t0"] == 0.0


def test_flatness(capsys):
    assert main(["flatness", "--family", "one_soliton", "--lambda", "0.7+0.2i"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["sup_norm"] <= 1e-8
    assert payload["lambda"] == {"re": 0.7, "im": 0.2}


def test_flatness_rejects_autonomous_solutions(capsys):
    assert main(["flatness", "--family", "bright"]) == 2


def test_residual_nonautonomous(tmp_path):
    report = tmp_path / "out.json"
    argv = ["residual", "--equation", "nonautonomous", "--preset", "plasma", "--k", "0.5"]
    argv += ["--solution", "bright", "--grid", "-10:10:201,0:1:11", "--report", str(report)]
    assert main(argv) == 0
    payload = json.loads(report.read_text(encoding="utf-8"))
    assert set(payload) >= {"sup_norm", "l2_norm", "worst_point", "method", "grid"}
    assert payload["sup_norm"] <= 1e-6
    assert payload["grid"]["nx"] == 201


def test_residual_standard_form(capsys):
    assert main(["residual", "--equation", "standard", "--solution", "bright", "--param", "g0=0.5", "--param", "h0=-1"]) == 0
    assert json.loads(capsys.readouterr().out)["sup_norm"] <= 1e-10


def test_painleve_report(tmp_path):
    out, report = tmp_path / "airy.csv", tmp_path / "fit.json"
    assert main(["painleve", "--k0", "0.5", "--zeta", "-60:4:641", "--out", str(out), "--report", str(report)]) == 0
    header, rows = _csv(out)
    assert header == ["zeta", "A", "A'"]
    assert rows.shape == (641, 3)
    assert json.loads(report.read_text(encoding="utf-8"))["fit"]["amplitude_error"] <= 0.02


def test_simulate(tmp_path):
    report = tmp_path / "sim.json"
    argv = ["simulate", "--preset", "plasma", "--grid", "-30:30:512,0:0.1:8", "--dt", "1e-3", "--report", str(report)]
    assert main(argv) == 0
    payload = json.loads(report.read_text(encoding="utf-8"))
    assert payload["relative_l2"] <= 1e-4
    assert payload["steps"] > 0


def test_simulate_rejects_transport_terms(tmp_path, capsys):
    coeffs = tmp_path / "drift.json"
    coeffs.write_text(json.dumps({"c": "0.5", "h0": -2}), encoding="utf-8")
    assert main(["simulate", "--coeffs", str(coeffs), "--grid", "-30:30:256,0:0.1:8"]) == 1
    assert _error(capsys)["error"] == "DomainError"


# errors and configuration


@pytest.mark.parametrize(
    "argv",
    [
        ["solution", "--grid", "0:1:401"],
        ["solution", "--grid", "-1:1:4,0:1:11"],
        ["solution", "--family", "kink"],
        ["solution", "--no-such-flag"],
        ["lift", "--preset", "harmonic", "--omega", "fast"],
        ["teleport"],
    ],
)
def test_config_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    payload = _error(capsys)
    assert payload["error"] == "ConfigError"
    assert payload["exit_code"] == 2


def test_domain_error_exits_1(capsys):
    assert main(["solution", "--family", "bright", "--param", "g0=-1"]) == 1
    payload = _error(capsys)
    assert payload["error"] == "DomainError"
    assert payload["inequality"] == "g0 > 0"


def test_thread_env(monkeypatch, capsys):
    monkeypatch.setenv("NLS_CANON_THREADS", "many")
    assert main(["solution", "--grid", "-1:1:16,0:1:8"]) == 2
    assert "NLS_CANON_THREADS" in _error(capsys)["message"]


def test_help_lists_defaults(capsys):
    assert main(["lift", "--help"]) == 0
    text = capsys.readouterr().out
    assert "--grid" in text
    assert "-10:10:201,0:1:11" in text


def test_option_file(tmp_path, capsys):
    opt = tmp_path / "riccati.toml"
    opt.write_text('preset = "harmonic"\nomega = 2.0\nt = 0.3\n', encoding="utf-8")
    assert main(["riccati", "-opt", str(opt)]) == 0
    assert json.loads(capsys.readouterr().out)["alpha"] == pytest.approx(-0.5 * np.tan(0.6), abs=1e-10)
    # explicit flags win over the file
    assert main(["riccati", "-opt", str(opt), "--omega", "1"]) == 0
    assert json.loads(capsys.readouterr().out)["alpha"] == pytest.approx(-0.25 * np.tan(0.3), abs=1e-10)


def test_option_file_errors(tmp_path, capsys):
    bad_key = tmp_path / "bad.toml"
    bad_key.write_text("speed = 1.0\n", encoding="utf-8")
    assert main(["riccati", "-opt", str(bad_key)]) == 2
    assert _error(capsys)["keys"] == ["speed"]
    not_toml = tmp_path / "opt.yml"
    not_toml.write_text("t: 1\n", encoding="utf-8")
    assert main(["riccati", "-opt", str(not_toml)]) == 2
    with pytest.raises(ConfigError):
        toml_load(tmp_path / "missing.toml")


def test_join_signed_values():
    argv = ["glm", "--norming", "-2i,-6i", "--grid", "-8:8:81,0:1:8", "--out", "-"]
    assert join_signed_values(argv) == ["glm", "--norming=-2i,-6i", "--grid=-8:8:81,0:1:8", "--out", "-"]


def test_log_file(tmp_path):
    log = tmp_path / "logs" / "run.log"
    assert main(["riccati", "--debug", "--log-file", str(log), "--report", str(tmp_path / "r.json")]) == 0
    assert "Running [riccati]" in log.read_text(encoding="utf-8")
