# onebit/duality/models.py

from typing import Optional

import numpy as np
from pydantic import model_validator

from backend.models.base import CustomModel
from onebit.errors import DimensionError
from onebit.frontend.models import NoiseMode
from onebit.transceive.models import Processing

UNIT_NORM_TOLERANCE = 1e-9


class DualityProblem(CustomModel):
    """True channels G, unit-norm precoder directions T_hat and target SINRs"""

    G: np.ndarray
    T_hat: np.ndarray
    gammas: np.ndarray

    @model_validator(mode="after")
    def check_problem(self) -> "DualityProblem":
        if self.G.shape != self.T_hat.shape:
            raise DimensionError(f"G {self.G.shape} and T_hat {self.T_hat.shape} disagree")
        if self.gammas.shape != (self.G.shape[1],):
            raise DimensionError(f"need {self.G.shape[1]} targets, got {self.gammas.shape}")
        if np.any(self.gammas <= 0):
            raise ValueError("target SINRs must be positive")
        norms = np.linalg.norm(self.T_hat, axis=0)
        if np.any(np.abs(norms - 1.0) > UNIT_NORM_TOLERANCE):
            raise ValueError("precoder directions must have unit norm")
        return self

    @property
    def K(self) -> int:
        return self.G.shape[1]


class DualitySolution(CustomModel):
    """Downlink powers q, uplink powers p and the system matrices behind them"""

    q: np.ndarray
    p: np.ndarray
    D: np.ndarray
    Psi: np.ndarray
    spectral_radius: float
    feasible: bool = True


class DualityReport(CustomModel):
    """Outcome of one uplink -> downlink round trip"""

    processing: Processing
    noise_mode: NoiseMode
    uplink_powers: np.ndarray
    downlink_powers: np.ndarray
    uplink_sinr: np.ndarray
    downlink_sinr: np.ndarray
    sinr_mismatch: float
    power_mismatch: float
    spectral_radius: float
    Q_diag: Optional[np.ndarray] = None
