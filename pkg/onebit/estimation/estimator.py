# onebit/estimation/estimator.py

"""
LMMSE channel estimation from one-bit pilot observations.

For DFT pilots the training covariance factors as C_rt = Cr_tau ⊗ I_M with
Cr_tau a tau x tau matrix, so neither estimator ever builds the Mτ x Mτ matrix.
"""

import logging
from typing import Union

import numpy as np
import scipy.linalg

from backend.config.settings import settings
from onebit.channel_model.models import SystemConfig
from onebit.errors import DimensionError, DomainError
from onebit.estimation.models import ChannelEstimate, EstimateStatistics, EstimatorMethod, PilotMatrix
from onebit.estimation.pilots import dft_pilots
from onebit.estimation.training import unvectorize_block
from onebit.frontend.bussgang import (
    arcsine_covariance,
    frontend_distortion,
    frontend_gain_squared,
    scalar_alpha,
)
from onebit.frontend.models import FrontendKind

logger = logging.getLogger(__name__)


def lmmse_variance(K, tau, rho_u, frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT):
    """
    sigma² = a² tau rho² / (a² tau rho + a² + d)

    a² is alpha² (or 1 unquantized), d is 1 - 2/pi (or 0). Broadcasts over
    numpy arrays so the optimizer can evaluate whole grids.
    """
    K = np.asarray(K, dtype=float)
    tau = np.asarray(tau, dtype=float)
    rho_u = np.asarray(rho_u, dtype=float)
    if FrontendKind(frontend) == FrontendKind.UNQUANTIZED:
        a2 = np.ones_like(K * rho_u)
    else:
        a2 = (2.0 / np.pi) / (K * rho_u + 1.0)
    d = frontend_distortion(frontend)
    return a2 * tau * rho_u ** 2 / (a2 * tau * rho_u + a2 + d)


def estimate_variance(config: SystemConfig, frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT) -> float:
    """Closed-form per-element variance sigma² of the approximate LMMSE estimate."""
    return float(lmmse_variance(config.K, config.tau, config.rho_u, frontend))


def approx_estimator_gain(config: SystemConfig, frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT) -> float:
    """c in g_hat_k = c (phi_k ⊗ I)ᴴ r_t."""
    a2 = frontend_gain_squared(frontend, config.K, config.rho_u)
    a = np.sqrt(a2)
    d = frontend_distortion(frontend)
    return float(a * config.rho_u / (a2 * config.tau * config.rho_u + a2 + d))


def training_covariance_tau(Phi: np.ndarray, rho_u: float) -> np.ndarray:
    """Unquantized per-antenna pilot covariance rho Phi Phiᴴ + I (tau x tau)."""
    return rho_u * Phi @ Phi.conj().T + np.eye(Phi.shape[0])


def quantized_training_covariance_tau(Phi: np.ndarray, rho_u: float) -> np.ndarray:
    """Arcsine-law covariance of the quantized pilot sequence at one antenna."""
    return arcsine_covariance(training_covariance_tau(Phi, rho_u))


def full_training_covariance(
    Phi: Union[PilotMatrix, np.ndarray], rho_u: float, M: int, structured: bool = True
) -> np.ndarray:
    """
    Mτ x Mτ covariance of the quantized training vector.

    structured=True builds Cr_tau ⊗ I_M; structured=False applies the arcsine
    law to the full unquantized covariance. Only for cross-checks at small Mτ.
    """
    Phi = Phi.Phi if isinstance(Phi, PilotMatrix) else np.asarray(Phi)
    dim = M * Phi.shape[0]
    if dim > settings.EXACT_TRAINING_CROSSCHECK_MAX_DIM:
        raise DomainError(
            f"full training covariance limited to {settings.EXACT_TRAINING_CROSSCHECK_MAX_DIM} dims, got {dim}"
        )
    if structured:
        return np.kron(quantized_training_covariance_tau(Phi, rho_u), np.eye(M))
    return arcsine_covariance(np.kron(training_covariance_tau(Phi, rho_u), np.eye(M)))


def lmmse_estimate(
    r_t: np.ndarray,
    Phi: Union[PilotMatrix, np.ndarray],
    config: SystemConfig,
    method: Union[EstimatorMethod, str] = EstimatorMethod.APPROX,
    frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT,
) -> ChannelEstimate:
    """
    LMMSE estimate of the effective channels.

    Args:
        r_t: Training observation, length M*tau (leading batch axes allowed)
        Phi: Pilot matrix used for training
        config: Scenario (M, K, rho_u)
        method: approx (structured covariance) or exact (arcsine law)
        frontend: one-bit, or unquantized for the reference receiver

    Returns:
        ChannelEstimate with G_hat of shape (..., M, K)
    """
    Phi = Phi.Phi if isinstance(Phi, PilotMatrix) else np.asarray(Phi)
    method = EstimatorMethod(method)
    frontend = FrontendKind(frontend)
    tau, K = Phi.shape
    if K != config.K:
        raise DimensionError(f"Phi carries {K} pilots but config has K={config.K}")
    if np.shape(r_t)[-1] != config.M * tau:
        raise DimensionError(f"r_t has length {np.shape(r_t)[-1]}, expected M*tau = {config.M * tau}")

    R = unvectorize_block(r_t, config.M)

    if method == EstimatorMethod.APPROX or frontend == FrontendKind.UNQUANTIZED:
        G_hat = approx_estimator_gain(config, frontend) * (R @ Phi.conj())
        sigma2 = estimate_variance(config, frontend)
        method = EstimatorMethod.APPROX
    else:
        alpha = scalar_alpha(config.K, config.rho_u)
        Cr_tau = quantized_training_covariance_tau(Phi, config.rho_u)
        weights = np.conj(scipy.linalg.solve(Cr_tau, Phi, assume_a="her"))
        G_hat = alpha * config.rho_u * (R @ weights)
        stats = predicted_estimate_statistics(config, EstimatorMethod.EXACT)
        sigma2 = float(np.mean(stats.variance))

    return ChannelEstimate(G_hat=G_hat, sigma2=sigma2, err_var=config.rho_u - sigma2, method=method)


def predicted_estimate_statistics(
    config: SystemConfig, method: Union[EstimatorMethod, str] = EstimatorMethod.APPROX
) -> EstimateStatistics:
    """
    Per-user estimate variance and MSE per antenna under the exact arcsine law.

    approx estimator: var_k = c² phi_kᴴ Cr phi_k, mse_k = rho - 2 sigma² + var_k
    exact estimator:  var_k = alpha² rho² phi_kᴴ Cr⁻¹ phi_k, mse_k = rho - var_k
    """
    method = EstimatorMethod(method)
    Phi = dft_pilots(config.tau, config.K).Phi
    Cr_tau = quantized_training_covariance_tau(Phi, config.rho_u)
    rho = config.rho_u

    if method == EstimatorMethod.APPROX:
        c = approx_estimator_gain(config)
        variance = c ** 2 * np.real(np.einsum("nk,nm,mk->k", Phi.conj(), Cr_tau, Phi))
        mse = rho - 2.0 * estimate_variance(config) + variance
    else:
        alpha = scalar_alpha(config.K, rho)
        solved = scipy.linalg.solve(Cr_tau, Phi, assume_a="her")
        variance = alpha ** 2 * rho ** 2 * np.real(np.sum(Phi.conj() * solved, axis=0))
        mse = rho - variance

    return EstimateStatistics(variance=variance, mse=mse, method=method)
