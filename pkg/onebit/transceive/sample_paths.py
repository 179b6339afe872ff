# onebit/transceive/sample_paths.py

"""
Symbol-level simulation through the true one-bit converters. Used to check
the linearized SINR expressions, never by the optimizer.
"""

import logging
from typing import Optional, Tuple, Union

import numpy as np

from onebit.channel_model.generator import complex_normal
from onebit.errors import DimensionError
from onebit.frontend.models import SQRT_2_OVER_PI
from onebit.frontend.quantizer import one_bit_quantize, INV_SQRT2
from onebit.transceive.models import DownlinkSamples, SymbolKind, UplinkSamples
from onebit.transceive.processing import mrc_receiver

logger = logging.getLogger(__name__)

DEFAULT_BLOCK = 10_000


def draw_symbols(
    rng: np.random.Generator,
    shape: Tuple[int, ...],
    kind: Union[SymbolKind, str] = SymbolKind.GAUSSIAN,
) -> np.ndarray:
    """Unit-variance i.i.d. symbols, circular Gaussian or QPSK."""
    if SymbolKind(kind) == SymbolKind.QPSK:
        bits = rng.integers(0, 2, size=shape + (2,))
        signs = 1.0 - 2.0 * bits
        return (signs[..., 0] + 1j * signs[..., 1]) * INV_SQRT2
    return complex_normal(rng, shape)


def simulate_uplink(
    G_eff: np.ndarray,
    symbols: np.ndarray,
    rng: np.random.Generator,
    W: Optional[np.ndarray] = None,
) -> UplinkSamples:
    """
    r = Q(G_eff x + n) for each column x of symbols (K x N), then W-combining.

    W defaults to MRC on the true effective channel.
    """
    M, K = G_eff.shape
    if symbols.shape[0] != K:
        raise DimensionError(f"symbols need {K} rows, got {symbols.shape}")
    W = mrc_receiver(G_eff) if W is None else W

    y = G_eff @ symbols + complex_normal(rng, (M, symbols.shape[1]))
    r = one_bit_quantize(y)
    return UplinkSamples(received=r, soft_estimates=W.T @ r)


def simulate_downlink(
    G: np.ndarray,
    T: np.ndarray,
    Q_diag: np.ndarray,
    rng: np.random.Generator,
    symbols: Optional[np.ndarray] = None,
    n_symbols: int = 1,
    kind: Union[SymbolKind, str] = SymbolKind.GAUSSIAN,
) -> DownlinkSamples:
    """
    x = Q_b(T s) is radiated as Q x; user k receives g_kᵀ Q x + n_k.
    """
    M, K = T.shape
    if G.shape != T.shape:
        raise DimensionError(f"G {G.shape} and T {T.shape} disagree")
    if symbols is None:
        symbols = draw_symbols(rng, (K, n_symbols), kind)

    quantized = one_bit_quantize(T @ symbols)
    transmitted = Q_diag[:, None] * quantized
    received = G.T @ transmitted + complex_normal(rng, (K, symbols.shape[1]))
    return DownlinkSamples(quantized=quantized, transmitted=transmitted, received=received)


def empirical_uplink_sinr(
    G_eff: np.ndarray,
    W: np.ndarray,
    rng: np.random.Generator,
    n_symbols: int = 100_000,
    kind: Union[SymbolKind, str] = SymbolKind.GAUSSIAN,
    block: int = DEFAULT_BLOCK,
) -> np.ndarray:
    """
    Per-user SINR measured from soft outputs z_k = w_kᵀ r.

    The useful gain is the projection b_k = E{z_k x_k*} / E{|x_k|²}; everything
    else in z_k counts as interference plus noise.
    """
    K = G_eff.shape[1]
    cross = np.zeros(K, dtype=complex)
    symbol_power = np.zeros(K)
    output_power = np.zeros(K)

    remaining = n_symbols
    while remaining > 0:
        n = min(block, remaining)
        x = draw_symbols(rng, (K, n), kind)
        z = simulate_uplink(G_eff, x, rng, W).soft_estimates
        cross += np.sum(z * x.conj(), axis=1)
        symbol_power += np.sum(np.abs(x) ** 2, axis=1)
        output_power += np.sum(np.abs(z) ** 2, axis=1)
        remaining -= n

    b = cross / symbol_power
    useful = np.abs(b) ** 2 * symbol_power / n_symbols
    residual = output_power / n_symbols - useful
    return useful / residual


def empirical_quantizer_noise_variance(
    T: np.ndarray,
    rng: np.random.Generator,
    n_symbols: int = 100_000,
    block: int = DEFAULT_BLOCK,
) -> np.ndarray:
    """
    Per-antenna variance of eta_d = Q_b(T s) - A_d T s with A_d from T.
    """
    row_power = np.sum(np.abs(T) ** 2, axis=1)
    a_d = SQRT_2_OVER_PI / np.sqrt(row_power)
    K = T.shape[1]

    accumulated = np.zeros(T.shape[0])
    remaining = n_symbols
    while remaining > 0:
        n = min(block, remaining)
        x = T @ draw_symbols(rng, (K, n))
        eta = one_bit_quantize(x) - a_d[:, None] * x
        accumulated += np.sum(np.abs(eta) ** 2, axis=1)
        remaining -= n
    return accumulated / n_symbols
