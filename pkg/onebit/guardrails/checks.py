# onebit/guardrails/checks.py

"""
Cross-module property checks. Each check returns a CheckResult and never
raises; an unexpected exception turns into a failed result.
"""

import logging
from typing import List, Optional

import numpy as np

from backend.models.base import CustomModel
from backend.utils.rng import SubstreamFactory
from onebit.channel_model.generator import complex_normal
from onebit.channel_model.models import SystemConfig
from onebit.duality.solver import duality_trial
from onebit.frontend.bussgang import arcsine_covariance
from onebit.frontend.models import BussgangGain, GainKind, NoiseMode, SQRT_2_OVER_PI
from onebit.frontend.quantizer import one_bit_quantize
from onebit.rates.closed_form import lemma1_check
from onebit.rates.moments import wishart_inverse_mean
from onebit.transceive.models import Processing

logger = logging.getLogger(__name__)

SAMPLE_BLOCK = 100_000


class CheckResult(CustomModel):
    name: str
    passed: bool
    observed: float
    tolerance: float
    detail: Optional[str] = None


class ValidationReport(CustomModel):
    passed: bool
    checks: List[CheckResult]


def correlated_gaussian(rng: np.random.Generator, C_y: np.ndarray, n: int) -> np.ndarray:
    """n samples (as columns) of CN(0, C_y)."""
    L = np.linalg.cholesky(C_y)
    return L @ complex_normal(rng, (C_y.shape[0], n))


def paired_correlation_matrix() -> np.ndarray:
    """4 x 4 real covariance with pairwise correlations 0, 0.3 and 0.5."""
    C = np.eye(4)
    for (i, j), value in {(0, 1): 0.3, (2, 3): 0.3, (0, 2): 0.5, (1, 3): 0.5}.items():
        C[i, j] = C[j, i] = value
    return C


def random_covariance(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random Hermitian positive definite matrix with unequal diagonal."""
    B = complex_normal(rng, (n, n))
    return B @ B.conj().T / n + 0.5 * np.diag(1.0 + rng.random(n))


class BaseCheck:
    """Base class for all checks"""

    name = "base"

    def run(self, factory: SubstreamFactory) -> CheckResult:
        try:
            result = self.evaluate(factory)
        except Exception as e:
            logger.error(f"Check {self.name} errored: {e}")
            return CheckResult(name=self.name, passed=False, observed=float("nan"), tolerance=float("nan"),
                               detail=f"error: {e}")
        if result.passed:
            logger.info(f"✅ {self.name}: observed {result.observed:.4g} within {result.tolerance:.4g}")
        else:
            logger.warning(f"❌ {self.name}: observed {result.observed:.4g} outside {result.tolerance:.4g}")
        return result

    def evaluate(self, factory: SubstreamFactory) -> CheckResult:
        raise NotImplementedError


class BussgangOrthogonalityCheck(BaseCheck):
    """E{eta yᴴ} = 0 entry-wise within 3 standard errors, on several covariances"""

    name = "bussgang-orthogonality"

    def __init__(self, samples: int = 1_000_000, gain_scale: float = 1.0, sigmas: float = 3.0):
        self.samples = samples
        self.gain_scale = gain_scale
        self.sigmas = sigmas

    def instances(self, rng: np.random.Generator) -> List[np.ndarray]:
        return [np.diag([1.0, 2.0, 0.5, 1.5]), paired_correlation_matrix(), random_covariance(rng, 4)]

    def cross_covariance_scores(self, C_y: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        """|mean(eta_i y_j*)| / standard error for every (i, j)."""
        gain = BussgangGain(kind=GainKind.DOWNLINK, diag_gains=SQRT_2_OVER_PI / np.sqrt(np.real(np.diag(C_y))))
        gain = gain.scaled(self.gain_scale)
        n = C_y.shape[0]
        total = np.zeros((n, n), dtype=complex)
        total_sq = np.zeros((n, n))
        remaining = self.samples
        while remaining > 0:
            block = min(SAMPLE_BLOCK, remaining)
            y = correlated_gaussian(rng, C_y, block)
            eta = one_bit_quantize(y) - gain.apply(y)
            products = eta[:, None, :] * y.conj()[None, :, :]
            total += products.sum(axis=2)
            total_sq += np.sum(np.abs(products) ** 2, axis=2)
            remaining -= block
        mean = total / self.samples
        variance = total_sq / self.samples - np.abs(mean) ** 2
        std_err = np.sqrt(variance / self.samples)
        return np.abs(mean) / std_err

    def evaluate(self, factory: SubstreamFactory) -> CheckResult:
        worst = 0.0
        instances = self.instances(factory.generator("check.bussgang.instances"))
        for i, C_y in enumerate(instances):
            scores = self.cross_covariance_scores(C_y, factory.generator("check.bussgang", i))
            worst = max(worst, float(scores.max()))
        return CheckResult(
            name=self.name,
            passed=worst <= self.sigmas,
            observed=worst,
            tolerance=self.sigmas,
            detail=f"{len(instances)} covariances, {self.samples} samples each, gain scale {self.gain_scale}",
        )


class ArcsineLawCheck(BaseCheck):
    """Empirical covariance of quantized samples against the arcsine law"""

    name = "arcsine-law"

    def __init__(self, samples: int = 1_000_000, tolerance: float = 0.01):
        self.samples = samples
        self.tolerance = tolerance

    def evaluate(self, factory: SubstreamFactory) -> CheckResult:
        C_y = paired_correlation_matrix()
        rng = factory.generator("check.arcsine")
        accumulated = np.zeros(C_y.shape, dtype=complex)
        remaining = self.samples
        while remaining > 0:
            block = min(SAMPLE_BLOCK, remaining)
            r = one_bit_quantize(correlated_gaussian(rng, C_y, block))
            accumulated += r @ r.conj().T
            remaining -= block
        empirical = accumulated / self.samples
        deviation = float(np.max(np.abs(empirical - arcsine_covariance(C_y))))
        return CheckResult(name=self.name, passed=deviation <= self.tolerance, observed=deviation,
                           tolerance=self.tolerance, detail="max absolute entry deviation")


class DualityPowerCheck(BaseCheck):
    """Duality powers reproduce the uplink SINRs with equal total power"""

    name = "duality-power-equality"

    def __init__(self, config: SystemConfig, instances: int = 20, tolerance: float = 1e-9):
        self.config = config
        self.instances = instances
        self.tolerance = tolerance

    def evaluate(self, factory: SubstreamFactory) -> CheckResult:
        worst_power = 0.0
        worst_sinr = 0.0
        for i in range(self.instances):
            report = duality_trial(self.config, Processing.MRC, factory.generator("check.duality", i),
                                   NoiseMode.APPROX)
            worst_power = max(worst_power, report.power_mismatch)
            worst_sinr = max(worst_sinr, report.sinr_mismatch)
        return CheckResult(
            name=self.name,
            passed=worst_power <= self.tolerance and worst_sinr <= 1e-6,
            observed=worst_power,
            tolerance=self.tolerance,
            detail=f"worst SINR mismatch {worst_sinr:.3e} over {self.instances} instances",
        )


class WishartMomentCheck(BaseCheck):
    """E{[(ĜᴴĜ)⁻¹]_kk} = 1/(sigma²(M - K))"""

    name = "wishart-moment"

    def __init__(self, M: int = 32, K: int = 8, sigma2: float = 1.0, trials: int = 100_000, tolerance: float = 0.03):
        self.M = M
        self.K = K
        self.sigma2 = sigma2
        self.trials = trials
        self.tolerance = tolerance

    def evaluate(self, factory: SubstreamFactory) -> CheckResult:
        check = wishart_inverse_mean(self.M, self.K, self.sigma2, self.trials, factory.generator("check.wishart"))
        error = abs(check.empirical - check.theoretical) / check.theoretical
        return CheckResult(name=self.name, passed=error <= self.tolerance, observed=error, tolerance=self.tolerance,
                           detail=f"empirical {check.empirical:.5g} vs {check.theoretical:.5g}")


class LogRatioCheck(BaseCheck):
    """E{log2(1 + X/Y)} against log2(1 + E{X}/E{Y}) for sums of exponentials"""

    name = "log-ratio-approximation"

    def __init__(self, terms: int = 128, trials: int = 100_000, tolerance: float = 0.02):
        self.terms = terms
        self.trials = trials
        self.tolerance = tolerance

    def evaluate(self, factory: SubstreamFactory) -> CheckResult:
        rng = factory.generator("check.log-ratio", self.terms)
        # a sum of n unit exponentials is Gamma(n, 1)
        X = rng.gamma(self.terms, size=self.trials)
        Y = rng.gamma(self.terms, size=self.trials)
        lhs, rhs = lemma1_check(X, Y)
        gap = abs(lhs - rhs) / rhs
        return CheckResult(name=self.name, passed=gap <= self.tolerance, observed=gap, tolerance=self.tolerance,
                           detail=f"mean of log {lhs:.5f}, log of means {rhs:.5f}")


def default_checks(config: SystemConfig, samples: int = 1_000_000, gain_scale: float = 1.0) -> List[BaseCheck]:
    duality_config = config.replace(M=64, K=8, tau0=2, rho_u=0.1, T=max(config.T, 17))
    return [
        BussgangOrthogonalityCheck(samples=samples, gain_scale=gain_scale),
        ArcsineLawCheck(samples=samples),
        DualityPowerCheck(duality_config),
        WishartMomentCheck(),
        LogRatioCheck(),
    ]


def run_checks(checks: List[BaseCheck], factory: SubstreamFactory) -> ValidationReport:
    results = [check.run(factory) for check in checks]
    return ValidationReport(passed=all(r.passed for r in results), checks=results)
