# onebit/frontend/models.py

from enum import Enum
from typing import Optional

import numpy as np
from pydantic import model_validator

from backend.models.base import CustomModel
from onebit.errors import DimensionError

SQRT_2_OVER_PI = float(np.sqrt(2.0 / np.pi))
QUANTIZER_NOISE_VARIANCE = 1.0 - 2.0 / np.pi


class GainKind(str, Enum):
    TRAINING = "training"
    UPLINK_APPROX = "uplink-approx"
    UPLINK_EXACT = "uplink-exact"
    DOWNLINK = "downlink"


class NoiseMode(str, Enum):
    EXACT = "exact"
    APPROX = "approx"


class FrontendKind(str, Enum):
    """One-bit converters, or the ideal unquantized reference"""
    ONE_BIT = "one-bit"
    UNQUANTIZED = "unquantized"


class BussgangGain(CustomModel):
    """Diagonal Bussgang gain A, either scalar alpha*I or per-antenna"""

    kind: GainKind
    alpha: Optional[float] = None
    diag_gains: Optional[np.ndarray] = None

    @model_validator(mode="after")
    def check_form(self) -> "BussgangGain":
        if (self.alpha is None) == (self.diag_gains is None):
            raise ValueError("exactly one of alpha or diag_gains must be set")
        values = np.atleast_1d(self.alpha if self.alpha is not None else self.diag_gains)
        if np.any(values <= 0):
            raise ValueError("Bussgang gains must be positive")
        # received power is at least the unit noise power; precoded power has no floor
        if self.kind != GainKind.DOWNLINK and np.any(values > SQRT_2_OVER_PI * (1 + 1e-12)):
            raise ValueError(f"{self.kind.value} Bussgang gains must lie in (0, sqrt(2/pi)]")
        return self

    @property
    def is_scalar(self) -> bool:
        return self.alpha is not None

    def diagonal(self, M: Optional[int] = None) -> np.ndarray:
        if self.alpha is not None:
            if M is None:
                raise DimensionError("M is needed to expand a scalar gain")
            return np.full(M, self.alpha)
        if M is not None and self.diag_gains.shape[-1] != M:
            raise DimensionError(f"gain has {self.diag_gains.shape[-1]} entries, expected {M}")
        return self.diag_gains

    def matrix(self, M: Optional[int] = None) -> np.ndarray:
        return np.diag(self.diagonal(M))

    def apply(self, x: np.ndarray) -> np.ndarray:
        """A @ x for x with antennas along axis 0."""
        if self.alpha is not None:
            return self.alpha * x
        gains = self.diag_gains
        return gains.reshape(gains.shape + (1,) * (x.ndim - 1)) * x

    def scaled(self, factor: float) -> "BussgangGain":
        """Copy with all gains multiplied by factor (validation bypassed)."""
        if self.alpha is not None:
            return self.model_copy(update={"alpha": self.alpha * factor})
        return self.model_copy(update={"diag_gains": self.diag_gains * factor})


class QuantizerNoiseModel(CustomModel):
    """Covariance of the Bussgang distortion term"""

    mode: NoiseMode
    variance: Optional[float] = None
    covariance: Optional[np.ndarray] = None

    @model_validator(mode="after")
    def check_form(self) -> "QuantizerNoiseModel":
        if (self.variance is None) == (self.covariance is None):
            raise ValueError("exactly one of variance or covariance must be set")
        if self.variance is not None and self.variance < 0:
            raise ValueError("quantizer noise variance must be nonnegative")
        return self

    @classmethod
    def approx(cls) -> "QuantizerNoiseModel":
        return cls(mode=NoiseMode.APPROX, variance=QUANTIZER_NOISE_VARIANCE)

    @classmethod
    def zero(cls) -> "QuantizerNoiseModel":
        """No distortion (unquantized reference)."""
        return cls(mode=NoiseMode.APPROX, variance=0.0)

    def matrix(self, M: int) -> np.ndarray:
        if self.covariance is not None:
            return self.covariance
        return self.variance * np.eye(M)

    def quadratic_forms(self, V: np.ndarray) -> np.ndarray:
        """
        v_kᵀ C v_k* for every column v_k of V (M x K).

        Returns:
            Length-K real vector
        """
        if self.covariance is None:
            return self.variance * np.sum(np.abs(V) ** 2, axis=0)
        C = self.covariance
        if C.shape != (V.shape[0], V.shape[0]):
            raise DimensionError(f"noise covariance {C.shape} does not match {V.shape[0]} antennas")
        return np.real(np.einsum("mk,mn,nk->k", V, C, V.conj()))
