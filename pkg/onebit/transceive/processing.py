# onebit/transceive/processing.py

"""
Linear receivers and the modified MF / ZF precoders built from them.

Convention: W is M x K and user k's soft output is w_kᵀ r.
"""

import logging
from typing import Optional, Tuple, Union

import numpy as np
import scipy.linalg

from backend.config.settings import settings
from onebit.errors import DimensionError, DomainError, SingularChannelError
from onebit.frontend.models import BussgangGain
from onebit.transceive.models import Processing

logger = logging.getLogger(__name__)


def mrc_receiver(G_hat: np.ndarray) -> np.ndarray:
    """W = conj(G_hat)"""
    return np.conj(G_hat)


def zf_receiver(G_hat: np.ndarray, condition_limit: Optional[float] = None) -> np.ndarray:
    """
    Zero-forcing receiver, Wᵀ = (Ĝᴴ Ĝ)⁻¹ Ĝᴴ, computed through a thin QR.

    Raises:
        SingularChannelError: K > M, or the Gram matrix condition number
            exceeds the limit (default settings.ZF_CONDITION_LIMIT)
    """
    condition_limit = settings.ZF_CONDITION_LIMIT if condition_limit is None else condition_limit
    M, K = G_hat.shape
    if K > M:
        raise SingularChannelError(f"ZF needs M >= K, got M={M}, K={K}")

    Q, R = scipy.linalg.qr(G_hat, mode="economic")
    singular_values = scipy.linalg.svdvals(R)
    if singular_values[-1] == 0:
        raise SingularChannelError("channel estimate is rank deficient")
    gram_condition = float((singular_values[0] / singular_values[-1]) ** 2)
    if gram_condition > condition_limit:
        raise SingularChannelError(
            f"Gram matrix condition number {gram_condition:.3e} exceeds {condition_limit:.1e}",
            condition_number=gram_condition,
        )

    # R Wᵀ = Qᴴ
    W_T = scipy.linalg.solve_triangular(R, Q.conj().T)
    return W_T.T


def build_receiver(G_hat: np.ndarray, processing: Union[Processing, str]) -> np.ndarray:
    if Processing(processing) == Processing.ZF:
        return zf_receiver(G_hat)
    return mrc_receiver(G_hat)


def apply_gain(A_u: Union[BussgangGain, np.ndarray, float, None], W: np.ndarray) -> np.ndarray:
    if A_u is None:
        return W
    if isinstance(A_u, BussgangGain):
        return A_u.apply(W)
    A_u = np.asarray(A_u)
    if A_u.ndim == 0:
        return float(A_u) * W
    if A_u.ndim == 1:
        return A_u[:, None] * W
    return A_u @ W


def precoder_directions(W: np.ndarray, A_u: Union[BussgangGain, np.ndarray, float, None] = None) -> np.ndarray:
    """Unit-norm directions t̂_k = A_u w_k / ||A_u w_k||."""
    V = apply_gain(A_u, W)
    norms = np.linalg.norm(V, axis=0)
    if np.any(norms == 0):
        raise DomainError(f"users {np.flatnonzero(norms == 0).tolist()} have a zero-norm receiver")
    return V / norms


def modified_precoders(
    W: np.ndarray, A_u: Union[BussgangGain, np.ndarray, float, None], q: np.ndarray
) -> np.ndarray:
    """t_k = sqrt(q_k / ||A_u w_k||²) A_u w_k, so ||t_k||² = q_k."""
    q = np.asarray(q, dtype=float)
    if q.shape != (W.shape[1],):
        raise DimensionError(f"need {W.shape[1]} powers, got {q.shape}")
    if np.any(q < 0):
        raise DomainError("downlink powers must be nonnegative")
    return precoder_directions(W, A_u) * np.sqrt(q)


def antenna_power_matrix(T: np.ndarray) -> np.ndarray:
    """Q_diag[m] = sqrt(sum_k |T[m, k]|²); Q_diag² sums to ||q||_1."""
    return np.sqrt(np.sum(np.abs(T) ** 2, axis=1))


def antenna_power_profile(Q_diag: np.ndarray, total_power: Optional[float] = None) -> np.ndarray:
    """
    Normalized per-antenna transmit powers M Q_diag².

    With total_power the powers are rescaled so that they sum to M times it;
    otherwise they are divided by ||q||_1 = sum Q_diag².
    """
    power = np.asarray(Q_diag, dtype=float) ** 2
    total = np.sum(power, axis=-1, keepdims=True)
    if np.any(total <= 0):
        raise DomainError("precoder radiates no power")
    scale = 1.0 if total_power is None else float(total_power)
    return power.shape[-1] * power / total * scale


def power_spread(profile: np.ndarray, low: float = 10.0, high: float = 90.0) -> Tuple[float, float, float]:
    """(p_low, median, p_high) of the pooled per-antenna powers."""
    values = np.percentile(np.ravel(profile), [low, 50.0, high])
    return float(values[0]), float(values[1]), float(values[2])
