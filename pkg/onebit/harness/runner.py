# onebit/harness/runner.py

"""
Experiment runner. Each experiment writes CSVs through ArtifactWriter and a
run_manifest.json at the end. Every random draw comes from a substream named
after the experiment, the curve and the trial index, so the CSVs depend only
on (seed, spec).
"""

import logging
import time
from contextlib import contextmanager
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from backend.config.settings import settings
from backend.services.trial_pool import TrialPool
from backend.utils.rng import SubstreamFactory
from onebit.channel_model.models import SystemConfig
from onebit.duality.solver import duality_trial
from onebit.errors import ExperimentError
from onebit.frontend.models import FrontendKind, NoiseMode
from onebit.guardrails.checks import ValidationReport, default_checks, run_checks
from onebit.harness.models import ExperimentName, ExperimentResult, ExperimentSpec
from onebit.harness.writers import ArtifactWriter, build_manifest
from onebit.optimizer.models import ParetoPoint, SearchGrid
from onebit.optimizer.search import benchmark_sweep, default_weights, optimize, pareto_sweep
from onebit.rates.closed_form import closed_form_rate
from onebit.rates.ergodic import ergodic_rate_mc, run_with_redraws
from onebit.transceive.models import Link, Processing
from onebit.transceive.processing import antenna_power_profile, power_spread

logger = logging.getLogger(__name__)

SE_UNIT = "bit/s/Hz"
EE_UNIT = "bit/s/Hz per unit power"

FIG2_M_VALUES = [32, 64]
FIG2_RHO_DB = [-20.0, -17.5, -15.0, -12.5, -10.0, -7.5, -5.0, -2.5, 0.0]
FIG3_M_VALUES = [32, 64, 128]
FIG3_TOTAL_POWER_DB = 10.0
SWEEP_M_VALUES = list(range(50, 501, 50))
DUALITY_RHO_DB = [-10.0, 10.0]
VALIDATION_SAMPLES = 1_000_000

PARETO_COLUMNS = [
    ("se", SE_UNIT),
    ("ee", EE_UNIT),
    ("K", "terminals"),
    ("tau0", "1"),
    ("rho_db", "dB"),
    ("w_se", "1"),
    ("w_ee", "1"),
]


def default_trials(name: ExperimentName) -> int:
    if ExperimentName(name) == ExperimentName.FIG3:
        return settings.FIG3_REALIZATIONS
    return settings.DEFAULT_TRIALS


def from_db(value_db: float) -> float:
    return float(10.0 ** (value_db / 10.0))


def _pareto_rows(points: List[ParetoPoint]):
    return [
        [p.se, p.ee, p.point.K, p.point.tau0, p.point.rho_db, p.weights[0], p.weights[1]] for p in points
    ]


class ExperimentRunner:
    """Runs one ExperimentSpec and records what it wrote"""

    EXPERIMENTS: Dict[ExperimentName, str] = {
        ExperimentName.FIG2: "run_fig2",
        ExperimentName.FIG3: "run_fig3",
        ExperimentName.PARETO: "run_pareto",
        ExperimentName.OPTIMAL_K: "run_optimal_k",
        ExperimentName.OPTIMAL_TAU0: "run_optimal_tau0",
        ExperimentName.OPTIMAL_RHO: "run_optimal_rho",
        ExperimentName.DUALITY_CHECK: "run_duality_check",
        ExperimentName.VALIDATION: "run_validation",
    }

    def __init__(self, spec: ExperimentSpec, pool: Optional[TrialPool] = None):
        if spec.name not in self.EXPERIMENTS:
            raise ExperimentError(f"Unknown experiment: {spec.name}")
        if not spec.processing:
            raise ExperimentError("at least one processing scheme is required")
        self.spec = spec
        self.config = spec.config if spec.overrides.T is None else spec.config.replace(T=spec.overrides.T)
        self.factory = SubstreamFactory(self.config.seed)
        self.pool = pool or TrialPool(spec.max_workers)
        self.writer = ArtifactWriter(spec.output_dir)
        self.timings: Dict[str, float] = {}
        self.summary: Dict[str, float] = {}
        self.passed = True

    @contextmanager
    def timed(self, phase: str):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[phase] = round(time.perf_counter() - start, 6)

    def run(self) -> ExperimentResult:
        name = self.spec.name.value
        logger.info("\n" + "=" * 80)
        logger.info(f"EXPERIMENT '{name}' (seed {self.config.seed}, {self.spec.trials} trials)")
        logger.info("=" * 80)

        handler: Callable[[], None] = getattr(self, self.EXPERIMENTS[self.spec.name])
        with self.timed("total"):
            handler()

        manifest = build_manifest(
            experiment=name,
            seed=self.config.seed,
            trials=self.spec.trials,
            processing=[p.value for p in self.spec.processing],
            config=self.config.to_json_dict(),
            files=list(self.writer.files) + ["run_manifest.json"],
            timings=self.timings,
            passed=self.passed,
            summary=self.summary,
        )
        self.writer.write_json("run_manifest.json", manifest)

        status = "PASSED" if self.passed else "FAILED"
        logger.info(f"EXPERIMENT '{name}' {status} in {self.timings['total']:.2f}s")
        return ExperimentResult(
            name=self.spec.name,
            files=list(self.writer.files),
            passed=self.passed,
            summary=self.summary,
            timings=self.timings,
        )

    def _trial_reports(self, config: SystemConfig, processing: Processing, purpose: str, trials: int,
                       noise_mode: NoiseMode, total_power: Optional[float] = None):
        def one(index: int):
            report, _ = run_with_redraws(
                lambda g: duality_trial(config, processing, g, noise_mode, total_power=total_power),
                self.factory,
                purpose,
                index,
            )
            return report

        return self.pool.map(one, range(trials))

    def run_fig2(self) -> None:
        """MC and closed-form sum SE against the operating power, per M and processing."""
        M_values = self.spec.overrides.M_values or FIG2_M_VALUES
        rho_db = self.spec.overrides.rho_db or FIG2_RHO_DB
        columns = [
            ("rho_db", "dB"),
            ("se_mc", SE_UNIT),
            ("se_mc_std_err", SE_UNIT),
            ("se_closed_form", SE_UNIT),
            ("relative_gap", "1"),
        ]
        worst_gap = 0.0
        for processing in self.spec.processing:
            for M in M_values:
                config = self.config.replace(M=M)
                if processing == Processing.ZF and M < config.K + 2:
                    raise ExperimentError(f"ZF closed form needs M >= K + 2, got M={M}, K={config.K}")
                logger.info(f"fig2 {processing.value} M={M}: {len(rho_db)} points")
                rows = []
                with self.timed(f"fig2.{processing.value}.M{M}"):
                    for i, value_db in enumerate(rho_db):
                        point = config.replace(rho_u=from_db(value_db))
                        scale = point.data_fraction
                        mc = ergodic_rate_mc(
                            point, processing, Link.UPLINK, self.spec.trials, rng=self.factory, pool=self.pool,
                            purpose=f"fig2.{processing.value}.M{M}.rho{i}",
                        )
                        cf = closed_form_rate(point, processing)
                        se_mc = scale * mc.sum_rate
                        se_cf = scale * cf.sum_rate
                        gap = (se_mc - se_cf) / se_cf
                        if value_db <= 0:
                            worst_gap = max(worst_gap, abs(gap))
                        rows.append([float(value_db), se_mc, scale * point.K * mc.std_err, se_cf, gap])
                self.writer.write_csv(f"fig2_{processing.value}_M{M}.csv", columns, rows)
        self.summary["max_relative_gap"] = worst_gap

    def run_fig3(self) -> None:
        """Distribution of per-antenna downlink powers at a fixed total power."""
        M_values = self.spec.overrides.M_values or FIG3_M_VALUES
        total_power_db = self.spec.overrides.total_power_db
        total_power = from_db(FIG3_TOTAL_POWER_DB if total_power_db is None else total_power_db)
        trials = self.spec.trials

        for processing in self.spec.processing:
            spread_rows = []
            for M in M_values:
                config = self.config.replace(M=M)
                purpose = f"fig3.{processing.value}.M{M}"
                logger.info(f"fig3 {processing.value} M={M}: {trials} realizations")
                with self.timed(purpose):
                    reports = self._trial_reports(config, processing, purpose, trials, NoiseMode.APPROX, total_power)
                profile = np.concatenate([antenna_power_profile(r.Q_diag, total_power) for r in reports])
                values = np.sort(profile)
                cdf = np.arange(1, values.size + 1) / values.size
                self.writer.write_csv(
                    f"fig3_{processing.value}_M{M}_cdf.csv",
                    [("antenna_power", "linear"), ("cdf", "1")],
                    list(zip(values.tolist(), cdf.tolist())),
                )
                p10, p50, p90 = power_spread(profile)
                spread_rows.append([M, p10, p50, p90, p90 - p10])

            spreads = [row[-1] for row in spread_rows]
            decreasing = all(b < a for a, b in zip(spreads, spreads[1:]))
            self.summary[f"spread_decreasing_{processing.value}"] = float(decreasing)
            self.writer.write_csv(
                f"fig3_{processing.value}_spread.csv",
                [("M", "antennas"), ("p10", "linear"), ("p50", "linear"), ("p90", "linear"), ("spread", "linear")],
                spread_rows,
            )

    def _grid(self, config: SystemConfig, processing: Processing) -> SearchGrid:
        return SearchGrid.default(config, processing, rho_db=self.spec.overrides.rho_db)

    def run_pareto(self) -> None:
        """Optimized, benchmark and unquantized-reference frontiers."""
        weights = self.spec.overrides.weights or default_weights()
        for processing in self.spec.processing:
            grid = self._grid(self.config, processing)
            with self.timed(f"pareto.{processing.value}"):
                frontiers = {
                    "optimized": pareto_sweep(self.config, processing, weights, grid),
                    "benchmark": benchmark_sweep(self.config, processing, weights),
                    "unquantized": pareto_sweep(self.config, processing, weights, grid, FrontendKind.UNQUANTIZED),
                }
            for case, points in frontiers.items():
                self.writer.write_csv(f"pareto_{processing.value}_{case}.csv", PARETO_COLUMNS, _pareto_rows(points))
            self.summary[f"max_se_{processing.value}"] = max(p.se for p in frontiers["optimized"])
            self.summary[f"max_ee_{processing.value}"] = max(p.ee for p in frontiers["optimized"])

    def _optimal_sweep(self, label: str, column: Tuple[str, str], pick: Callable[[ParetoPoint], float]) -> None:
        M_values = self.spec.overrides.M_values or SWEEP_M_VALUES
        w_se, w_ee = (self.spec.overrides.weights or [(1.0, 1.0)])[0]
        columns = [("M", "antennas"), column, ("se", SE_UNIT), ("ee", EE_UNIT)]
        for processing in self.spec.processing:
            rows = []
            with self.timed(f"{label}.{processing.value}"):
                for M in M_values:
                    config = self.config.replace(M=M, K_max=max(self.config.K_max, M))
                    _, best = optimize(config, processing, w_se, w_ee, grid=self._grid(config, processing))
                    rows.append([M, pick(best), best.se, best.ee])
            self.writer.write_csv(f"{label}_{processing.value}.csv", columns, rows)

    def run_optimal_k(self) -> None:
        self._optimal_sweep("optimal_k", ("K", "terminals"), lambda best: best.point.K)

    def run_optimal_tau0(self) -> None:
        self._optimal_sweep("optimal_tau0", ("tau0", "1"), lambda best: best.point.tau0)

    def run_optimal_rho(self) -> None:
        self._optimal_sweep("optimal_rho", ("rho_db", "dB"), lambda best: best.point.rho_db)

    def run_duality_check(self) -> None:
        """SINR and power mismatch of the duality powers under both noise models."""
        rho_db = self.spec.overrides.rho_db or DUALITY_RHO_DB
        columns = [
            ("rho_db", "dB"),
            ("noise_mode", "-"),
            ("max_sinr_mismatch", "1"),
            ("mean_sinr_mismatch", "1"),
            ("max_power_mismatch", "1"),
        ]
        for processing in self.spec.processing:
            rows = []
            for i, value_db in enumerate(rho_db):
                config = self.config.replace(rho_u=from_db(value_db))
                for mode in (NoiseMode.APPROX, NoiseMode.EXACT):
                    # both modes see the same drops
                    purpose = f"duality.{processing.value}.rho{i}"
                    with self.timed(f"{purpose}.{mode.value}"):
                        reports = self._trial_reports(config, processing, purpose, self.spec.trials, mode)
                    sinr = np.array([r.sinr_mismatch for r in reports])
                    power = np.array([r.power_mismatch for r in reports])
                    rows.append([float(value_db), mode.value, float(sinr.max()), float(sinr.mean()),
                                 float(power.max())])
                    if mode == NoiseMode.APPROX:
                        self.summary[f"approx_sinr_mismatch_{processing.value}_rho{i}"] = float(sinr.max())
            self.writer.write_csv(f"duality_{processing.value}.csv", columns, rows)

    def run_validation(self) -> None:
        with self.timed("validation"):
            report = validate(self.spec)
        self.passed = report.passed
        self.summary["checks_passed"] = float(sum(c.passed for c in report.checks))
        self.summary["checks_total"] = float(len(report.checks))
        self.writer.write_json("validation_report.json", report.to_json_dict())
        self.writer.write_csv(
            "validation.csv",
            [("check", "-"), ("passed", "bool"), ("observed", "1"), ("tolerance", "1")],
            [[c.name, c.passed, c.observed, c.tolerance] for c in report.checks],
        )


def run(spec: ExperimentSpec, pool: Optional[TrialPool] = None) -> ExperimentResult:
    """Run one experiment and write its artifacts under spec.output_dir."""
    return ExperimentRunner(spec, pool).run()


def validate(spec: ExperimentSpec, gain_scale: float = 1.0) -> ValidationReport:
    """
    Run the cross-module property checks. Failures are reported, not raised.

    Args:
        spec: Supplies the config, the seed and an optional samples override
        gain_scale: Multiplies the Bussgang gain inside the orthogonality check
    """
    samples = spec.overrides.samples or VALIDATION_SAMPLES
    checks = default_checks(spec.config, samples=samples, gain_scale=gain_scale)
    report = run_checks(checks, SubstreamFactory(spec.config.seed))
    logger.info(f"Validation: {sum(c.passed for c in report.checks)}/{len(report.checks)} checks passed")
    return report
