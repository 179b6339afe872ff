# tests/test_harness.py

"""
Experiment runner, artifact writers and the command-line entry point.
Runs use tiny cells and few trials; the point is file layout and
determinism, not statistics.
"""

import csv
import json
from pathlib import Path

import numpy as np
import pytest

from onebit.channel_model.models import SystemConfig
from onebit.errors import ExperimentError
from onebit.guardrails.checks import CheckResult, ValidationReport
from onebit.harness import cli, runner
from onebit.harness.models import ExperimentName, ExperimentSpec, SweepOverrides
from onebit.harness.runner import ExperimentRunner, default_trials, from_db, run
from onebit.harness.writers import ArtifactWriter, build_manifest, format_cell, header
from onebit.transceive.models import Processing

FIG2_CELL = str(Path(__file__).parent.parent / "scenarios" / "fig2_cell.json")
TINY = SystemConfig(M=16, K=4, K_max=4, tau0=2, T=40, rho_u=0.1, seed=5)


def _spec(name, tmp_path, trials=10, processing=None, **overrides):
    return ExperimentSpec(
        name=name,
        config=TINY,
        overrides=SweepOverrides(**overrides),
        trials=trials,
        output_dir=tmp_path,
        processing=processing or [Processing.MRC, Processing.ZF],
    )


def _read_csv(path):
    with open(path, newline="", encoding="utf-8") as handle:
        return list(csv.reader(handle))


class TestWriters:
    def test_format_cell(self):
        assert format_cell(0.1) == "0.1"
        assert format_cell(1 / 3) == "0.3333333333"
        assert format_cell(np.float64(2.5)) == "2.5"
        assert format_cell(np.int64(7)) == "7"
        assert format_cell("approx") == "approx"
        assert format_cell(True) == "True"

    def test_header_carries_units(self):
        assert header([("rho_db", "dB"), ("se", "bit/s/Hz")]) == ["rho_db [dB]", "se [bit/s/Hz]"]

    def test_write_csv(self, tmp_path):
        writer = ArtifactWriter(tmp_path / "out")
        path = writer.write_csv("table.csv", [("x", "1"), ("y", "dB")], [[1, 0.5], [2, np.float64(0.25)]])
        assert path.read_text() == "x [1],y [dB]\n1,0.5\n2,0.25\n"
        assert writer.files == ["table.csv"]

    def test_row_length_mismatch(self, tmp_path):
        writer = ArtifactWriter(tmp_path)
        with pytest.raises(ExperimentError):
            writer.write_csv("bad.csv", [("x", "1"), ("y", "1")], [[1.0]])

    def test_unwritable_output_dir(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        with pytest.raises(ExperimentError):
            ArtifactWriter(blocker / "sub")

    def test_manifest_keys(self):
        manifest = build_manifest("fig2", 1, 10, ["mrc"], {"M": 16}, ["a.csv"], {"total": 0.1}, True, {})
        assert set(manifest) == {
            "experiment", "seed", "version", "trials", "processing", "config",
            "files", "timings_seconds", "passed", "summary",
        }
        assert manifest["version"]


class TestSpec:
    def test_default_trials(self):
        assert default_trials(ExperimentName.FIG3) == 500
        assert default_trials("fig2") == 200

    def test_from_db(self):
        assert from_db(-10.0) == pytest.approx(0.1)
        assert from_db(0.0) == 1.0

    def test_empty_M_values_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            SweepOverrides(M_values=[])
        with pytest.raises(ValueError):
            _spec("fig2", tmp_path, trials=0)

    def test_no_processing_rejected(self, tmp_path):
        spec = _spec("fig2", tmp_path).model_copy(update={"processing": []})
        with pytest.raises(ExperimentError):
            ExperimentRunner(spec)


class TestExperiments:
    def test_fig2_tables(self, tmp_path):
        result = run(_spec("fig2", tmp_path, M_values=[16], rho_db=[-20.0, -10.0]))
        assert sorted(result.files) == ["fig2_mrc_M16.csv", "fig2_zf_M16.csv", "run_manifest.json"]
        rows = _read_csv(tmp_path / "fig2_mrc_M16.csv")
        assert rows[0] == [
            "rho_db [dB]",
            "se_mc [bit/s/Hz]",
            "se_mc_std_err [bit/s/Hz]",
            "se_closed_form [bit/s/Hz]",
            "relative_gap [1]",
        ]
        assert [float(r[0]) for r in rows[1:]] == [-20.0, -10.0]
        assert all(float(r[1]) > 0 and float(r[3]) > 0 for r in rows[1:])
        assert "max_relative_gap" in result.summary

    def test_fig2_zf_needs_enough_antennas(self, tmp_path):
        with pytest.raises(ExperimentError):
            run(_spec("fig2", tmp_path, processing=[Processing.ZF], M_values=[5], rho_db=[0.0]))

    def test_same_seed_same_bytes(self, tmp_path):
        for out in ("a", "b"):
            run(_spec("fig2", tmp_path / out, trials=5, processing=[Processing.MRC], M_values=[16], rho_db=[-5.0]))
        first = (tmp_path / "a" / "fig2_mrc_M16.csv").read_bytes()
        assert first == (tmp_path / "b" / "fig2_mrc_M16.csv").read_bytes()

    def test_manifest_written(self, tmp_path):
        run(_spec("fig2", tmp_path, trials=3, processing=[Processing.MRC], M_values=[16], rho_db=[0.0]))
        manifest = json.loads((tmp_path / "run_manifest.json").read_text())
        assert manifest["experiment"] == "fig2"
        assert manifest["seed"] == 5
        assert manifest["trials"] == 3
        assert manifest["processing"] == ["mrc"]
        assert manifest["config"]["M"] == 16
        assert "run_manifest.json" in manifest["files"]
        assert "total" in manifest["timings_seconds"]

    def test_fig3_tables(self, tmp_path):
        result = run(_spec("fig3", tmp_path, trials=3, processing=[Processing.MRC], M_values=[16, 32]))
        assert "fig3_mrc_M16_cdf.csv" in result.files
        assert "fig3_mrc_spread.csv" in result.files
        cdf = _read_csv(tmp_path / "fig3_mrc_M32_cdf.csv")
        assert cdf[0] == ["antenna_power [linear]", "cdf [1]"]
        assert len(cdf) == 1 + 3 * 32
        assert float(cdf[-1][1]) == 1.0
        powers = [float(r[0]) for r in cdf[1:]]
        assert powers == sorted(powers)
        # every realization averages to the total power
        assert np.mean(powers) == pytest.approx(from_db(10.0))
        spread = _read_csv(tmp_path / "fig3_mrc_spread.csv")
        assert [int(r[0]) for r in spread[1:]] == [16, 32]
        assert "spread_decreasing_mrc" in result.summary

    @pytest.mark.slow
    def test_fig3_spread_shrinks_with_antennas(self, tmp_path):
        spec = ExperimentSpec(
            name=ExperimentName.FIG3,
            config=SystemConfig.from_file(FIG2_CELL),
            trials=default_trials(ExperimentName.FIG3),
            output_dir=tmp_path,
            processing=[Processing.MRC],
        )
        result = run(spec)
        assert result.summary["spread_decreasing_mrc"] == 1.0
        rows = _read_csv(tmp_path / "fig3_mrc_spread.csv")
        assert [int(r[0]) for r in rows[1:]] == [32, 64, 128]
        spreads = [float(r[4]) for r in rows[1:]]
        assert spreads[0] > spreads[1] > spreads[2]
        for r in rows[1:]:
            assert float(r[4]) == pytest.approx(float(r[3]) - float(r[1]))

    def test_pareto_tables(self, tmp_path):
        result = run(_spec("pareto", tmp_path, processing=[Processing.MRC], rho_db=[-10.0, 0.0],
                           weights=[(0.0, 1.0), (1.0, 1.0), (1.0, 0.0)]))
        for case in ("optimized", "benchmark", "unquantized"):
            assert f"pareto_mrc_{case}.csv" in result.files
        rows = _read_csv(tmp_path / "pareto_mrc_optimized.csv")
        assert rows[0][:2] == ["se [bit/s/Hz]", "ee [bit/s/Hz per unit power]"]
        se = [float(r[0]) for r in rows[1:]]
        assert se == sorted(se)
        assert result.summary["max_se_mrc"] == pytest.approx(max(se))

    def test_optimal_k_table(self, tmp_path):
        run(_spec("optimal-k", tmp_path, M_values=[20, 40], rho_db=[-10.0, 0.0]))
        for processing in ("mrc", "zf"):
            rows = _read_csv(tmp_path / f"optimal_k_{processing}.csv")
            assert rows[0] == ["M [antennas]", "K [terminals]", "se [bit/s/Hz]", "ee [bit/s/Hz per unit power]"]
            assert [int(r[0]) for r in rows[1:]] == [20, 40]
            assert all(1 <= int(r[1]) <= int(r[0]) for r in rows[1:])

    def test_optimal_tau0_and_rho_tables(self, tmp_path):
        run(_spec("optimal-tau0", tmp_path / "tau0", processing=[Processing.MRC], M_values=[20], rho_db=[-10.0]))
        run(_spec("optimal-rho", tmp_path / "rho", processing=[Processing.MRC], M_values=[20],
                  rho_db=[-10.0, 0.0]))
        tau0 = _read_csv(tmp_path / "tau0" / "optimal_tau0_mrc.csv")
        rho = _read_csv(tmp_path / "rho" / "optimal_rho_mrc.csv")
        assert tau0[0][1] == "tau0 [1]"
        assert int(tau0[1][1]) >= 1
        assert rho[0][1] == "rho_db [dB]"
        assert float(rho[1][1]) in (-10.0, 0.0)

    def test_duality_check_table(self, tmp_path):
        result = run(_spec("duality-check", tmp_path, trials=4, rho_db=[-10.0]))
        rows = _read_csv(tmp_path / "duality_mrc.csv")
        assert [r[1] for r in rows[1:]] == ["approx", "exact"]
        approx = rows[1]
        assert float(approx[2]) < 1e-6
        assert float(approx[4]) < 1e-9
        assert result.summary["approx_sinr_mismatch_zf_rho0"] < 1e-6

    def test_validation_failure_sets_passed(self, tmp_path, monkeypatch):
        failing = ValidationReport(
            passed=False,
            checks=[CheckResult(name="wishart-moment", passed=False, observed=0.5, tolerance=0.03)],
        )
        monkeypatch.setattr(runner, "validate", lambda spec: failing)
        result = run(_spec("validation", tmp_path, trials=1))
        assert not result.passed
        assert result.summary["checks_total"] == 1.0
        rows = _read_csv(tmp_path / "validation.csv")
        assert rows[1][:2] == ["wishart-moment", "False"]
        report = json.loads((tmp_path / "validation_report.json").read_text())
        assert report["passed"] is False

    @pytest.mark.slow
    def test_validation_run(self, tmp_path):
        result = run(_spec("validation", tmp_path, trials=1, samples=200_000))
        assert result.passed
        assert result.summary["checks_passed"] == result.summary["checks_total"] == 5.0


class TestCli:
    def test_parser(self):
        args = cli.build_parser().parse_args(
            ["--config", "x.json", "--experiment", "fig2", "--M", "16", "32", "--rho-db", "-10", "0"]
        )
        assert args.M_values == [16, 32]
        assert args.rho_db == [-10.0, 0.0]
        assert args.processing is None

    def test_build_spec(self, tmp_path):
        args = cli.build_parser().parse_args(
            ["--config", FIG2_CELL, "--experiment", "fig3", "--seed", "99",
             "--processing", "zf", "--out", str(tmp_path)]
        )
        spec = cli.build_spec(args)
        assert spec.config.seed == 99
        assert spec.processing == [Processing.ZF]
        assert spec.trials == 500
        assert spec.output_dir == tmp_path

    def test_weight_and_power_overrides(self, tmp_path):
        args = cli.build_parser().parse_args(
            ["--config", FIG2_CELL, "--experiment", "pareto", "--weights", "0", "1", "--weights", "1", "0.5",
             "--total-power-db", "5", "--out", str(tmp_path)]
        )
        overrides = cli.build_spec(args).overrides
        assert overrides.weights == [(0.0, 1.0), (1.0, 0.5)]
        assert overrides.total_power_db == 5.0

    def test_total_power_reaches_fig3(self, tmp_path):
        code = cli.main(
            ["--config", FIG2_CELL, "--experiment", "fig3", "--trials", "2", "--processing", "mrc",
             "--M", "16", "--total-power-db", "3", "--out", str(tmp_path)]
        )
        assert code == cli.EXIT_OK
        powers = [float(r[0]) for r in _read_csv(tmp_path / "fig3_mrc_M16_cdf.csv")[1:]]
        assert np.mean(powers) == pytest.approx(from_db(3.0))

    def test_exit_ok(self, tmp_path):
        code = cli.main(
            ["--config", FIG2_CELL, "--experiment", "fig2", "--trials", "3",
             "--processing", "mrc", "--M", "16", "--rho-db", "0", "--out", str(tmp_path)]
        )
        assert code == cli.EXIT_OK
        assert (tmp_path / "fig2_mrc_M16.csv").exists()

    def test_missing_config_is_an_error(self, tmp_path):
        code = cli.main(["--config", "no_such_scenario", "--experiment", "fig2", "--out", str(tmp_path)])
        assert code == cli.EXIT_ERROR

    def test_failed_validation_exit_code(self, tmp_path, monkeypatch):
        monkeypatch.setattr(runner, "validate", lambda spec: ValidationReport(passed=False, checks=[]))
        code = cli.main(
            ["--config", FIG2_CELL, "--experiment", "validation", "--out", str(tmp_path)]
        )
        assert code == cli.EXIT_VALIDATION_FAILED
