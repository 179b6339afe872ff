# onebit/estimation/training.py

"""
Quantized pilot training.

Y = G_eff Phiᵀ + N is the M x tau block received over the pilot phase.
Vectorizing it time-major gives r[n*M + m] = Y[m, n], which is
sum_k (phi_k ⊗ I_M) g_k + n. All functions accept leading batch axes.
"""

import logging
from typing import Optional, Union

import numpy as np

from onebit.channel_model.generator import complex_normal
from onebit.errors import DimensionError
from onebit.estimation.models import PilotMatrix
from onebit.frontend.models import FrontendKind
from onebit.frontend.quantizer import one_bit_quantize

logger = logging.getLogger(__name__)


def _pilots(Phi: Union[PilotMatrix, np.ndarray]) -> np.ndarray:
    return Phi.Phi if isinstance(Phi, PilotMatrix) else np.asarray(Phi)


def vectorize_block(Y: np.ndarray) -> np.ndarray:
    """(..., M, tau) -> (..., M*tau), time-major."""
    Y = np.swapaxes(Y, -1, -2)
    return Y.reshape(Y.shape[:-2] + (-1,))


def unvectorize_block(r: np.ndarray, M: int) -> np.ndarray:
    """(..., M*tau) -> (..., M, tau)."""
    r = np.asarray(r)
    if r.shape[-1] % M:
        raise DimensionError(f"vector of length {r.shape[-1]} is not a multiple of M={M}")
    tau = r.shape[-1] // M
    return np.swapaxes(r.reshape(r.shape[:-1] + (tau, M)), -1, -2)


def received_training(
    G_eff: np.ndarray,
    Phi: Union[PilotMatrix, np.ndarray],
    rng: Optional[np.random.Generator] = None,
) -> np.ndarray:
    """
    Unquantized pilot block Y = G_eff Phiᵀ + N (M x tau).

    With rng=None the block is noiseless.
    """
    Phi = _pilots(Phi)
    if G_eff.shape[-1] != Phi.shape[1]:
        raise DimensionError(f"G_eff has {G_eff.shape[-1]} users but Phi has {Phi.shape[1]} pilots")
    Y = G_eff @ Phi.T
    if rng is not None:
        Y = Y + complex_normal(rng, Y.shape)
    return Y


def simulate_training(
    G_eff: np.ndarray,
    Phi: Union[PilotMatrix, np.ndarray],
    rng: np.random.Generator,
    frontend: Union[FrontendKind, str] = FrontendKind.ONE_BIT,
) -> np.ndarray:
    """
    Quantized, vectorized training observation r_t (length M*tau).

    With the unquantized frontend the raw y_t is returned instead.
    """
    Y = received_training(G_eff, Phi, rng)
    if FrontendKind(frontend) == FrontendKind.ONE_BIT:
        Y = one_bit_quantize(Y)
    return vectorize_block(Y)
