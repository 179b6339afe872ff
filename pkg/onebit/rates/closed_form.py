# onebit/rates/closed_form.py

"""
Closed-form uplink SINR / rate approximations for MRC and ZF receivers with
LMMSE estimates. Helpers broadcast over numpy arrays so the optimizer can
evaluate whole (K, tau, rho) grids in one call.
"""

import logging
from typing import Union

import numpy as np

from onebit.channel_model.models import SystemConfig
from onebit.errors import DomainError
from onebit.estimation.estimator import lmmse_variance
from onebit.frontend.bussgang import frontend_distortion
from onebit.frontend.models import FrontendKind
from onebit.rates.models import RateMethod, RateReport
from onebit.transceive.models import Link, Processing

logger = logging.getLogger(__name__)


def _gain_squared(K, rho_u, frontend):
    if FrontendKind(frontend) == FrontendKind.UNQUANTIZED:
        return np.ones_like(np.asarray(K * rho_u, dtype=float))
    return (2.0 / np.pi) / (K * rho_u + 1.0)


def mrc_sinr(M, K, tau, rho_u, frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT, sigma2=None):
    """a² (sigma² M + rho) / (rho a² (K - 1) + a² + d)"""
    M, K, tau, rho_u = (np.asarray(v, dtype=float) for v in (M, K, tau, rho_u))
    a2 = _gain_squared(K, rho_u, frontend)
    d = frontend_distortion(frontend)
    sigma2 = lmmse_variance(K, tau, rho_u, frontend) if sigma2 is None else np.asarray(sigma2, dtype=float)
    return a2 * (sigma2 * M + rho_u) / (rho_u * a2 * (K - 1) + a2 + d)


def zf_sinr(M, K, tau, rho_u, frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT, sigma2=None):
    """(a² sigma² (M - K - 1) + a² rho) / (a² (K - 1)(rho - sigma²) + a² + d); needs M >= K + 2."""
    M, K, tau, rho_u = (np.asarray(v, dtype=float) for v in (M, K, tau, rho_u))
    if np.any(M < K + 2):
        raise DomainError("ZF closed form needs M >= K + 2")
    a2 = _gain_squared(K, rho_u, frontend)
    d = frontend_distortion(frontend)
    sigma2 = lmmse_variance(K, tau, rho_u, frontend) if sigma2 is None else np.asarray(sigma2, dtype=float)
    return (a2 * sigma2 * (M - K - 1) + a2 * rho_u) / (a2 * (K - 1) * (rho_u - sigma2) + a2 + d)


def closed_form_sinr(M, K, tau, rho_u, processing: Union[Processing, str], frontend=FrontendKind.ONE_BIT):
    if Processing(processing) == Processing.ZF:
        return zf_sinr(M, K, tau, rho_u, frontend)
    return mrc_sinr(M, K, tau, rho_u, frontend)


def _report(config: SystemConfig, sinr: float, processing: Processing, link: Link, frontend) -> RateReport:
    rate = float(np.log2(1.0 + sinr))
    return RateReport(
        per_user_rate=rate,
        sum_rate=config.K * rate,
        method=RateMethod.CLOSED_FORM,
        processing=processing,
        link=link,
        frontend=FrontendKind(frontend),
    )


def closed_form_rate_mrc(config: SystemConfig, frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT) -> RateReport:
    sinr = float(mrc_sinr(config.M, config.K, config.tau, config.rho_u, frontend))
    return _report(config, sinr, Processing.MRC, Link.UPLINK, frontend)


def closed_form_rate_zf(config: SystemConfig, frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT) -> RateReport:
    if config.M < config.K + 2:
        raise DomainError(f"ZF closed form needs M >= K + 2, got M={config.M}, K={config.K}")
    sinr = float(zf_sinr(config.M, config.K, config.tau, config.rho_u, frontend))
    return _report(config, sinr, Processing.ZF, Link.UPLINK, frontend)


def closed_form_rate(
    config: SystemConfig,
    processing: Union[Processing, str],
    frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT,
) -> RateReport:
    if Processing(processing) == Processing.ZF:
        return closed_form_rate_zf(config, frontend)
    return closed_form_rate_mrc(config, frontend)


def downlink_rate(
    config: SystemConfig,
    processing: Union[Processing, str],
    frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT,
) -> RateReport:
    """Under duality the downlink achieves the uplink closed form."""
    uplink = closed_form_rate(config, processing, frontend)
    return uplink.model_copy(update={"link": Link.DOWNLINK})


def low_snr_penalty(config: SystemConfig) -> float:
    """
    One-bit over unquantized MRC SINR with perfect CSI (sigma² := rho).
    Tends to 2/pi as rho -> 0.
    """
    args = (config.M, config.K, config.tau, config.rho_u)
    one_bit = mrc_sinr(*args, frontend=FrontendKind.ONE_BIT, sigma2=config.rho_u)
    unquantized = mrc_sinr(*args, frontend=FrontendKind.UNQUANTIZED, sigma2=config.rho_u)
    return float(one_bit / unquantized)


def lemma1_check(X_samples: np.ndarray, Y_samples: np.ndarray):
    """
    (E{log2(1 + X/Y)}, log2(1 + E{X}/E{Y})) from paired nonnegative samples.
    """
    X = np.asarray(X_samples, dtype=float)
    Y = np.asarray(Y_samples, dtype=float)
    if X.shape != Y.shape:
        raise DomainError(f"sample shapes differ: {X.shape} vs {Y.shape}")
    if np.any(X < 0) or np.any(Y < 0):
        raise DomainError("samples must be nonnegative")
    if not np.any(Y):
        raise DomainError("Y samples are all zero")
    with np.errstate(divide="ignore"):
        lhs = float(np.mean(np.log2(1.0 + X / Y)))
    rhs = float(np.log2(1.0 + X.mean() / Y.mean()))
    return lhs, rhs
