# onebit/duality/solver.py

"""
Uplink-downlink SINR duality under uncorrelated quantizer noise.

Given precoder directions t̂_k and targets gamma_k, the downlink powers solve
q = (pi/2)(I - D Psi)⁻¹ D 1 and the dual uplink powers solve the transposed
system. Both use the same total power.
"""

import logging
from typing import Optional, Union

import numpy as np
import scipy.linalg

from backend.config.settings import settings
from onebit.channel_model.generator import drop_users, draw_channel, effective_channel, power_control
from onebit.channel_model.models import SystemConfig
from onebit.duality.models import DualityProblem, DualityReport, DualitySolution
from onebit.errors import InfeasibleGeometryError, InfeasibleTargetsError
from onebit.estimation.estimator import lmmse_estimate
from onebit.estimation.pilots import dft_pilots
from onebit.estimation.training import simulate_training
from onebit.frontend.bussgang import bussgang_gain, quantizer_noise_covariance
from onebit.frontend.models import GainKind, NoiseMode
from onebit.transceive.models import Processing
from onebit.transceive.processing import antenna_power_matrix, build_receiver, precoder_directions
from onebit.transceive.sinr import (
    data_covariance_downlink,
    data_covariance_uplink,
    downlink_sinr,
    uplink_sinr,
)

logger = logging.getLogger(__name__)

HALF_PI = np.pi / 2.0


def build_D(problem: DualityProblem) -> np.ndarray:
    """D_kk = gamma_k / |g_kᵀ t̂_k|²"""
    own_gain = np.abs(np.einsum("mk,mk->k", problem.G, problem.T_hat)) ** 2
    if np.any(own_gain == 0):
        blocked = np.flatnonzero(own_gain == 0).tolist()
        raise InfeasibleGeometryError(f"users {blocked} have zero gain along their precoder")
    return np.diag(problem.gammas / own_gain)


def build_Psi(problem: DualityProblem) -> np.ndarray:
    """
    Psi[k, i] = |g_kᵀ t̂_i|² (i ≠ k) + (pi/2 - 1) t̂_iᴴ diag(g_k* g_kᵀ) t̂_i
    """
    cross = np.abs(problem.G.T @ problem.T_hat) ** 2
    np.fill_diagonal(cross, 0.0)
    distortion = (np.abs(problem.G) ** 2).T @ (np.abs(problem.T_hat) ** 2)
    return cross + (HALF_PI - 1.0) * distortion


def spectral_radius(matrix: np.ndarray, tolerance: Optional[float] = None, max_steps: Optional[int] = None) -> float:
    """
    Perron root of a nonnegative matrix by power iteration, with a dense
    eigenvalue fallback when the iteration does not settle.
    """
    tolerance = settings.SPECTRAL_RADIUS_TOLERANCE if tolerance is None else tolerance
    max_steps = settings.POWER_ITERATION_MAX_STEPS if max_steps is None else max_steps

    x = np.ones(matrix.shape[0])
    estimate = 0.0
    for step in range(max_steps):
        y = matrix @ x
        norm = np.linalg.norm(y)
        if norm == 0:
            return 0.0
        new_estimate = norm / np.linalg.norm(x)
        x = y / norm
        if abs(new_estimate - estimate) <= tolerance * max(new_estimate, 1.0):
            logger.debug(f"Power iteration settled after {step + 1} steps: {new_estimate:.6g}")
            return float(new_estimate)
        estimate = new_estimate

    logger.warning(f"Power iteration did not settle in {max_steps} steps, using eigvals")
    return float(np.max(np.abs(np.linalg.eigvals(matrix))))


def _solve_powers(system: np.ndarray, D: np.ndarray, label: str) -> np.ndarray:
    K = D.shape[0]
    radius = spectral_radius(system)
    if radius >= 1.0 - settings.SPECTRAL_RADIUS_TOLERANCE:
        raise InfeasibleTargetsError(
            f"targets not simultaneously achievable: spectral radius {radius:.6g} >= 1",
            spectral_radius=radius,
        )
    powers = HALF_PI * scipy.linalg.solve(np.eye(K) - system, np.diag(D))
    if np.any(powers <= 0):
        raise InfeasibleTargetsError(f"{label} powers not strictly positive", spectral_radius=radius)
    return powers


def solve_downlink_powers(D: np.ndarray, Psi: np.ndarray) -> np.ndarray:
    """q = (pi/2) (I - D Psi)⁻¹ D 1"""
    return _solve_powers(D @ Psi, D, "downlink")


def solve_uplink_powers(D: np.ndarray, Psi: np.ndarray) -> np.ndarray:
    """p = (pi/2) (I - D Psiᵀ)⁻¹ D 1"""
    return _solve_powers(D @ Psi.T, D, "uplink")


def solve(problem: DualityProblem) -> DualitySolution:
    D = build_D(problem)
    Psi = build_Psi(problem)
    q = solve_downlink_powers(D, Psi)
    p = solve_uplink_powers(D, Psi)
    return DualitySolution(q=q, p=p, D=D, Psi=Psi, spectral_radius=spectral_radius(D @ Psi))


def _noise_models(mode: NoiseMode, G_eff: np.ndarray, A_u, T: Optional[np.ndarray] = None, A_d=None):
    if mode == NoiseMode.APPROX:
        return quantizer_noise_covariance(mode=NoiseMode.APPROX)
    if T is None:
        return quantizer_noise_covariance(data_covariance_uplink(G_eff), A_u, NoiseMode.EXACT)
    return quantizer_noise_covariance(data_covariance_downlink(T), A_d, NoiseMode.EXACT)


def duality_trial(
    config: SystemConfig,
    processing: Union[Processing, str],
    rng: np.random.Generator,
    noise_mode: Union[NoiseMode, str] = NoiseMode.APPROX,
    total_power: Optional[float] = None,
) -> DualityReport:
    """
    One round trip: estimate channels, run the uplink, carry its SINRs to
    the downlink through the duality powers and measure the downlink SINRs.

    Args:
        config: Scenario
        processing: mrc or zf receivers / precoders
        rng: Generator owned by this trial
        noise_mode: quantizer-noise model used to *evaluate* both links
        total_power: if set, uplink powers are rescaled from statistical power
            control so that they sum to this value

    Returns:
        DualityReport
    """
    processing = Processing(processing)
    noise_mode = NoiseMode(noise_mode)

    drop = drop_users(config, rng)
    p = power_control(config, drop)
    if total_power is not None:
        p = p * (total_power / np.sum(p))
    channel = draw_channel(config, drop, rng)
    G = channel.G
    G_eff = effective_channel(G, p)

    # every user sees the same effective power after power control
    training_config = config if total_power is None else config.replace(rho_u=float(p[0] * drop.betas[0]))
    Phi = dft_pilots(config.tau, config.K)
    r_t = simulate_training(G_eff, Phi, rng)
    estimate = lmmse_estimate(r_t, Phi, training_config)
    W = build_receiver(estimate.G_hat, processing)

    A_u = bussgang_gain(GainKind.UPLINK_EXACT, G_eff=G_eff)
    uplink_noise = _noise_models(noise_mode, G_eff, A_u)
    gammas = uplink_sinr(G, W, A_u, uplink_noise, p)

    T_hat = precoder_directions(W, A_u)
    problem = DualityProblem(G=G, T_hat=T_hat, gammas=gammas)
    D = build_D(problem)
    Psi = build_Psi(problem)
    q = solve_downlink_powers(D, Psi)

    T = T_hat * np.sqrt(q)
    Q_diag = antenna_power_matrix(T)
    A_d = bussgang_gain(GainKind.DOWNLINK, T=T)
    downlink_noise = _noise_models(noise_mode, G_eff, A_u, T=T, A_d=A_d)
    downlink = downlink_sinr(G, T, Q_diag, A_d, downlink_noise)

    sinr_mismatch = float(np.max(np.abs(downlink - gammas) / gammas))
    power_mismatch = float(abs(np.sum(q) - np.sum(p)) / np.sum(p))
    radius = spectral_radius(D @ Psi)
    logger.debug(
        f"Duality trial ({processing.value}, {noise_mode.value}): "
        f"SINR mismatch {sinr_mismatch:.3e}, power mismatch {power_mismatch:.3e}, radius {radius:.4f}"
    )

    return DualityReport(
        processing=processing,
        noise_mode=noise_mode,
        uplink_powers=p,
        downlink_powers=q,
        uplink_sinr=gammas,
        downlink_sinr=downlink,
        sinr_mismatch=sinr_mismatch,
        power_mismatch=power_mismatch,
        spectral_radius=radius,
        Q_diag=Q_diag,
    )


def duality_roundtrip(
    config: SystemConfig,
    processing: Union[Processing, str],
    rng: np.random.Generator,
    noise_mode: Union[NoiseMode, str] = NoiseMode.APPROX,
) -> DualityReport:
    """Uplink -> downlink round trip under statistical power control."""
    return duality_trial(config, processing, rng, noise_mode)
