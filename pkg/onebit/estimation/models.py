# onebit/estimation/models.py

from enum import Enum

import numpy as np
from pydantic import model_validator

from backend.models.base import CustomModel
from onebit.errors import DimensionError


class EstimatorMethod(str, Enum):
    """approx: structured low-SNR covariance; exact: arcsine-law covariance"""
    APPROX = "approx"
    EXACT = "exact"


class PilotMatrix(CustomModel):
    """tau x K pilot matrix with unit-modulus, mutually orthogonal columns"""

    Phi: np.ndarray

    @model_validator(mode="after")
    def check_shape(self) -> "PilotMatrix":
        if self.Phi.ndim != 2 or self.Phi.shape[0] < self.Phi.shape[1]:
            raise DimensionError(f"pilot matrix must be tau x K with tau >= K, got {self.Phi.shape}")
        return self

    @property
    def tau(self) -> int:
        return self.Phi.shape[0]

    @property
    def K(self) -> int:
        return self.Phi.shape[1]


class ChannelEstimate(CustomModel):
    """Estimated effective channels plus per-element estimate / error variance"""

    G_hat: np.ndarray
    sigma2: float
    err_var: float
    method: EstimatorMethod = EstimatorMethod.APPROX


class EstimateStatistics(CustomModel):
    """Per-user estimate variance and MSE (per antenna) under the arcsine law"""

    variance: np.ndarray
    mse: np.ndarray
    method: EstimatorMethod
