# onebit/estimation/pilots.py

import numpy as np

from onebit.errors import DimensionError
from onebit.estimation.models import PilotMatrix


def dft_pilots(tau: int, K: int) -> PilotMatrix:
    """First K columns of the tau-point DFT matrix, Phi[n, k] = exp(-j 2 pi n k / tau)."""
    if tau < K:
        raise DimensionError(f"pilot length tau={tau} is shorter than K={K}")
    if K < 1:
        raise DimensionError("need at least one pilot")
    n = np.arange(tau)[:, None]
    k = np.arange(K)[None, :]
    return PilotMatrix(Phi=np.exp(-2j * np.pi * n * k / tau))
