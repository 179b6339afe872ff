# onebit/transceive/sinr.py

"""
SINR of the Bussgang-linearized uplink and downlink.
"""

import logging
from typing import Optional, Union

import numpy as np

from onebit.errors import DimensionError
from onebit.frontend.models import BussgangGain, QuantizerNoiseModel, SQRT_2_OVER_PI
from onebit.transceive.processing import apply_gain

logger = logging.getLogger(__name__)

GainLike = Union[BussgangGain, np.ndarray, float, None]


def _sinr(signal: np.ndarray, interference: np.ndarray, noise: np.ndarray) -> np.ndarray:
    return signal / (interference + noise)


def uplink_sinr(
    G: np.ndarray,
    W: np.ndarray,
    A_u: GainLike,
    noise_model: QuantizerNoiseModel,
    p: np.ndarray,
) -> np.ndarray:
    """
    SINR_k = p_k |w_kᵀ A g_k|² / (sum_{i≠k} p_i |w_kᵀ A g_i|² + ||A w_k||² + w_kᵀ C_η w_k*)

    Args:
        G: M x K channels
        W: M x K receiver
        A_u: uplink Bussgang gain (None means identity)
        noise_model: quantizer distortion covariance
        p: length-K transmit powers

    Returns:
        Length-K SINR vector
    """
    p = np.asarray(p, dtype=float)
    if G.shape != W.shape or p.shape != (G.shape[1],):
        raise DimensionError(f"G {G.shape}, W {W.shape} and p {p.shape} disagree")

    # B[k, i] = w_kᵀ A g_i
    B = W.T @ apply_gain(A_u, G)
    gains = np.abs(B) ** 2 * p[None, :]
    signal = np.diag(gains)
    interference = gains.sum(axis=1) - signal
    thermal = np.sum(np.abs(apply_gain(A_u, W)) ** 2, axis=0)
    distortion = noise_model.quadratic_forms(W)
    return _sinr(signal, interference, thermal + distortion)


def downlink_sinr(
    G: np.ndarray,
    T: np.ndarray,
    Q_diag: np.ndarray,
    A_d: GainLike,
    noise_model: QuantizerNoiseModel,
) -> np.ndarray:
    """
    SINR_k = |g_kᵀ Q A t_k|² / (sum_{i≠k} |g_kᵀ Q A t_i|² + (Q g_k)ᵀ C_η (Q g_k)* + 1)

    A_d=None derives the downlink Bussgang gain from T. Antennas carrying no
    power contribute nothing.
    """
    if G.shape != T.shape or Q_diag.shape != (G.shape[0],):
        raise DimensionError(f"G {G.shape}, T {T.shape} and Q_diag {Q_diag.shape} disagree")
    if not np.any(T):
        return np.zeros(G.shape[1])

    if A_d is None:
        row_power = np.sum(np.abs(T) ** 2, axis=1)
        active = row_power > 0
        a_d = np.zeros_like(row_power)
        a_d[active] = SQRT_2_OVER_PI / np.sqrt(row_power[active])
        effective = (Q_diag * a_d)[:, None] * T
    else:
        effective = Q_diag[:, None] * apply_gain(A_d, T)

    # B[k, i] = g_kᵀ Q A t_i
    B = G.T @ effective
    gains = np.abs(B) ** 2
    signal = np.diag(gains)
    interference = gains.sum(axis=1) - signal
    distortion = noise_model.quadratic_forms(Q_diag[:, None] * G)
    return _sinr(signal, interference, distortion + 1.0)


def data_covariance_uplink(G_eff: np.ndarray) -> np.ndarray:
    """C_y = G_eff G_effᴴ + I for unit-variance symbols."""
    return G_eff @ G_eff.conj().T + np.eye(G_eff.shape[0])


def data_covariance_downlink(T: np.ndarray) -> np.ndarray:
    """C_x = T Tᴴ, the covariance of the precoded signal before quantization."""
    return T @ T.conj().T


def expected_soft_gain(W: np.ndarray, A_u: GainLike, G: np.ndarray) -> np.ndarray:
    """diag(Wᵀ A G), the linear gain each user sees on its own symbol."""
    return np.einsum("mk,mk->k", W, apply_gain(A_u, G))


def classical_sinr(G: np.ndarray, W: np.ndarray, p: Optional[np.ndarray] = None) -> np.ndarray:
    """Unquantized uplink SINR (A = I, no distortion)."""
    p = np.ones(G.shape[1]) if p is None else p
    return uplink_sinr(G, W, None, QuantizerNoiseModel.zero(), p)
