import csv
import io

import pytest
from click.testing import CliRunner

from qftbell import commands
from qftbell.cli import cli, main
from qftbell.constants import EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, VERSION
from qftbell.utils import safe_command

QUICK = ["--points", "4096", "--replicates", "8", "--seed", "7"]


def table(output):
    lines = [line for line in output.splitlines() if line and not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


@pytest.fixture
def runner():
    return CliRunner()


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert VERSION in result.output


def test_eval_tt(runner):
    result = runner.invoke(cli, ["eval-tt", "--lambda", "0.884"])
    assert result.exit_code == EXIT_OK
    assert f"# qftbell version: {VERSION}" in result.output
    assert "# command: eval-tt" in result.output
    (row,) = table(result.output)
    assert row["family"] == "lorentz"
    assert row["rule"] == "tensor"
    assert float(row["value"]) == pytest.approx(
        float(row["AB"]) + float(row["ApB"]) + float(row["ABp"]) - float(row["ApBp"]), abs=1e-12
    )


def test_reruns_are_byte_identical(runner, tmp_path):
    outputs = []
    for name in ("first.csv", "second.csv"):
        out = tmp_path / name
        result = runner.invoke(cli, [*QUICK, "--out", str(out), "smear", "--first", "right:1:2", "--second", "left:1:2"])
        assert result.exit_code == EXIT_OK
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    (row,) = table(outputs[0].decode())
    assert float(row["value"]) > 0
    assert row["points"] == "4096"


def test_seed_changes_qmc_output(runner):
    first = runner.invoke(cli, [*QUICK, "smear"])
    second = runner.invoke(cli, [*QUICK[:-1], "8", "smear"])
    assert table(first.output)[0]["value"] != table(second.output)[0]["value"]


def test_kernels_verify_documents_printed_pair(runner):
    result = runner.invoke(cli, ["kernels-verify"])
    assert result.exit_code == EXIT_OK
    statuses = [row["status"] for row in table(result.output)]
    assert statuses.count("pass") == 4
    assert statuses.count("mismatch-documented") == 1


def test_scan_writes_one_row_per_cell(runner):
    result = runner.invoke(cli, ["scan", "--axis", "eta", "0", "0.5", "2", "--axis", "eta_p", "0", "10", "3"])
    assert result.exit_code == EXIT_OK
    rows = table(result.output)
    assert len(rows) == 6
    assert set(rows[0]) == {"eta", "eta_p", "value", "error", "exceeds_2"}
    assert all(row["exceeds_2"] == str(abs(float(row["value"])) > 2).lower() for row in rows)


def test_optimize_writes_trace(runner, tmp_path):
    trace = tmp_path / "trace.csv"
    config = tmp_path / "run.yaml"
    config.write_text("search:\n  bounds:\n    lam: {lower: 0.8, upper: 0.95}\n")
    result = runner.invoke(cli, ["--config", str(config), "optimize", "--budget", "100", "--starts", "2", "--trace", str(trace)])
    assert result.exit_code == EXIT_OK
    summary = {row["quantity"]: row["value"] for row in table(result.output)}
    assert int(summary["evaluations"]) <= 100
    assert 0.8 <= float(summary["lam"]) <= 0.95
    rows = table(trace.read_text())
    assert len(rows) == int(summary["evaluations"])
    best = [float(row["best_so_far"]) for row in rows]
    assert best == sorted(best)


def test_small_budget_is_a_validation_error(runner):
    result = runner.invoke(cli, ["optimize", "--budget", "20"])
    assert result.exit_code == EXIT_VALIDATION


def test_invalid_config_key(runner, tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text("run:\n  colour: red\n")
    result = runner.invoke(cli, ["--config", str(config), "eval-tt"])
    assert result.exit_code == EXIT_VALIDATION


def test_main_exit_codes(tmp_path, capsys):
    assert main(["--family", "cauchy", "eval-tt"]) == EXIT_USAGE
    assert main(["eval-tt", "--lam", "1.5"]) == EXIT_VALIDATION
    out = tmp_path / "tt.csv"
    assert main(["--out", str(out), "eval-tt"]) == EXIT_OK
    assert out.read_text().startswith(f"# qftbell version: {VERSION}")


def test_bump_spec_rejects_malformed_values(runner):
    result = runner.invoke(cli, ["smear", "--first", "right:1"])
    assert result.exit_code != EXIT_OK
    assert "side:R:sharpness" in result.output


def test_eval_diamond(runner):
    result = runner.invoke(cli, [*QUICK, "eval-diamond", "--a-p", "0.5", "--b-p", "1.0", "--method", "momentum"])
    assert result.exit_code == EXIT_OK
    (row,) = table(result.output)
    assert row["method"] == "momentum"
    assert 0.0 < float(row["beta"]) <= 1.0 + 1e-6
    assert float(row["min_eigenvalue"]) > -1e-9
    assert float(row["value"]) == pytest.approx(
        float(row["AB"]) + float(row["ApB"]) + float(row["ABp"]) - float(row["ApBp"]), abs=1e-12
    )


def test_reproduce_report(runner, tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text("reproduce:\n  fit_budget: 100\n  fit_points: 1024\n  grid_points: 2\n")
    out = tmp_path / "report.csv"
    result = runner.invoke(cli, [*QUICK, "--config", str(config), "--out", str(out), "reproduce"])
    assert result.exit_code == EXIT_OK
    text = out.read_text()
    assert "# command: reproduce" in text
    assert "# exponent: -(k^2 F + p^2 G + 2 k p X) / 2" in text
    assert "# tt terms (tensor):" in text
    assert "# tt terms (adaptive):" in text
    rows = {row["quantity"]: row for row in table(text)}
    for quantity in ("tt_value_tensor", "tt_value_adaptive", "numerical_value", "numerical_value_fitted"):
        assert float(rows[quantity]["expected"]) in (2.723, 2.752)
        assert rows[quantity]["status"] in ("match", "mismatch-documented")
    assert rows["tt_rule_agreement"]["status"] == "match"
    assert rows["alpha_tt"]["status"] == "match"
    assert {"alpha_fit", "beta_fit", "gamma_fit", "delta_fit"} <= set(rows)
    assert {"lorentz-surface_exceedance_cells", "sech-surface_exceedance_cells", "gauss-surface_exceedance_cells"} <= set(rows)


def test_unexpected_errors_are_numerical_failures(monkeypatch):
    def broken(config):
        raise AttributeError("no attribute")

    response = safe_command(broken)(None)
    assert response["status"] == "error"
    assert response["exit_code"] == EXIT_NUMERICAL
    assert "AttributeError" in response["message"]

    monkeypatch.setattr(commands, "eval_tt", broken)
    assert main(["eval-tt"]) == EXIT_NUMERICAL
