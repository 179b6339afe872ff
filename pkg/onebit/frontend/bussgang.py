# onebit/frontend/bussgang.py

"""
Bussgang linearization of the one-bit quantizer: gains, the arcsine law and
the covariance of the resulting distortion.
"""

import logging
from typing import Optional, Union

import numpy as np

from backend.config.settings import settings
from onebit.errors import DimensionError, DomainError
from onebit.frontend.models import (
    BussgangGain,
    FrontendKind,
    GainKind,
    NoiseMode,
    QuantizerNoiseModel,
    QUANTIZER_NOISE_VARIANCE,
    SQRT_2_OVER_PI,
)

logger = logging.getLogger(__name__)

GainLike = Union[BussgangGain, np.ndarray, float]


def scalar_alpha(K: int, rho_u: float) -> float:
    """alpha = sqrt((2/pi) / (K rho_u + 1))"""
    return float(np.sqrt((2.0 / np.pi) / (K * rho_u + 1.0)))


def bussgang_gain(
    kind: Union[GainKind, str],
    K: Optional[int] = None,
    rho_u: Optional[float] = None,
    G_eff: Optional[np.ndarray] = None,
    T: Optional[np.ndarray] = None,
) -> BussgangGain:
    """
    Bussgang gain for one of the four quantization points.

    Args:
        kind: training, uplink-approx, uplink-exact or downlink
        K, rho_u: needed by training / uplink-approx
        G_eff: M x K effective channel, needed by uplink-exact
        T: M x K precoder matrix, needed by downlink

    Returns:
        BussgangGain (scalar for training / uplink-approx, diagonal otherwise)
    """
    kind = GainKind(kind)

    if kind in (GainKind.TRAINING, GainKind.UPLINK_APPROX):
        if K is None or rho_u is None:
            raise DimensionError(f"{kind.value} gain needs K and rho_u")
        return BussgangGain(kind=kind, alpha=scalar_alpha(K, rho_u))

    if kind == GainKind.UPLINK_EXACT:
        if G_eff is None:
            raise DimensionError("uplink-exact gain needs G_eff")
        received_power = np.sum(np.abs(G_eff) ** 2, axis=1) + 1.0
        return BussgangGain(kind=kind, diag_gains=SQRT_2_OVER_PI / np.sqrt(received_power))

    if T is None:
        raise DimensionError("downlink gain needs the precoder matrix T")
    antenna_power = np.sum(np.abs(T) ** 2, axis=1)
    if np.any(antenna_power <= 0):
        silent = np.flatnonzero(antenna_power <= 0)
        raise DomainError(f"antennas {silent.tolist()} carry zero precoded power")
    return BussgangGain(kind=kind, diag_gains=SQRT_2_OVER_PI / np.sqrt(antenna_power))


def _normalizer(C_y: np.ndarray) -> np.ndarray:
    diag = np.real(np.diagonal(C_y, axis1=-2, axis2=-1))
    if np.any(diag <= 0):
        raise DomainError("covariance diagonal must be strictly positive")
    inv_sqrt = 1.0 / np.sqrt(diag)
    return inv_sqrt[..., :, None] * inv_sqrt[..., None, :]


def _clamped_arcsin(x: np.ndarray, tolerance: float) -> np.ndarray:
    if np.any(np.abs(x) > 1.0 + tolerance):
        worst = float(np.max(np.abs(x)))
        raise DomainError(f"normalized correlation {worst:.15g} outside [-1, 1]")
    return np.arcsin(np.clip(x, -1.0, 1.0))


def arcsine_covariance(C_y: np.ndarray, tolerance: Optional[float] = None) -> np.ndarray:
    """
    Covariance of one_bit_quantize(y) for y ~ CN(0, C_y) via the arcsine law.

    Works on a single matrix or a stack (..., n, n).
    """
    tolerance = settings.ARCSIN_CLAMP_TOLERANCE if tolerance is None else tolerance
    C_y = np.asarray(C_y)
    if C_y.shape[-1] != C_y.shape[-2]:
        raise DimensionError(f"covariance must be square, got {C_y.shape}")

    scale = _normalizer(C_y)
    real_part = _clamped_arcsin(np.real(C_y) * scale, tolerance)
    imag_part = _clamped_arcsin(np.imag(C_y) * scale, tolerance)
    return (2.0 / np.pi) * (real_part + 1j * imag_part)


def _gain_matrix(A: GainLike, M: int) -> np.ndarray:
    if isinstance(A, BussgangGain):
        return A.matrix(M)
    A = np.asarray(A)
    if A.ndim == 0:
        return float(A) * np.eye(M)
    if A.ndim == 1:
        return np.diag(A)
    return A


def quantizer_noise_covariance(
    C_y: Optional[np.ndarray] = None,
    A: Optional[GainLike] = None,
    mode: Union[NoiseMode, str] = NoiseMode.APPROX,
) -> QuantizerNoiseModel:
    """
    Covariance of the Bussgang distortion eta = Q(y) - A y.

    exact: C_r - A C_y Aᴴ with C_r from the arcsine law
    approx: (1 - 2/pi) I
    """
    mode = NoiseMode(mode)
    if mode == NoiseMode.APPROX:
        return QuantizerNoiseModel.approx()

    if C_y is None or A is None:
        raise DimensionError("exact quantizer noise needs C_y and A")
    C_y = np.asarray(C_y)
    M = C_y.shape[-1]
    if M > settings.EXACT_QNOISE_MAX_DIM:
        raise DomainError(
            f"exact quantizer-noise covariance limited to {settings.EXACT_QNOISE_MAX_DIM} dims, got {M}"
        )

    A_mat = _gain_matrix(A, M)
    C_r = arcsine_covariance(C_y)
    C_eta = C_r - A_mat @ C_y @ A_mat.conj().T
    # Hermitian up to rounding
    C_eta = 0.5 * (C_eta + C_eta.conj().T)
    return QuantizerNoiseModel(mode=NoiseMode.EXACT, covariance=C_eta)


def frontend_gain_squared(frontend: Union[FrontendKind, str], K: int, rho_u: float) -> float:
    """alpha² for one-bit converters, 1 for the unquantized reference."""
    if FrontendKind(frontend) == FrontendKind.UNQUANTIZED:
        return 1.0
    return scalar_alpha(K, rho_u) ** 2


def frontend_distortion(frontend: Union[FrontendKind, str]) -> float:
    """1 - 2/pi for one-bit converters, 0 for the unquantized reference."""
    if FrontendKind(frontend) == FrontendKind.UNQUANTIZED:
        return 0.0
    return QUANTIZER_NOISE_VARIANCE
